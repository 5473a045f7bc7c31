#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "ighastar/core/types.hpp"

namespace ighastar::testing {

/// Visits every vertex of the full motion-primitive tree rooted at `root`
/// (no pruning of any kind) and calls f(state, g) on each. The tree must be
/// finite: only use this with bounded-depth domains.
template <PlanningDomain D, class F>
void for_each_tree_vertex(const D& domain, const typename D::State& root, F&& f) {
  struct Item {
    typename D::State state;
    double g;
  };
  std::vector<Item> stack;
  std::vector<Successor<typename D::State>> succ;
  stack.push_back({root, 0.0});
  while (!stack.empty()) {
    const Item item = stack.back();
    stack.pop_back();
    f(item.state, item.g);
    succ.clear();
    domain.successors(item.state, succ);
    for (const auto& s : succ) stack.push_back({s.state, item.g + s.cost});
  }
}

/// Brute-force optimum: the cheapest tree vertex inside the goal set, or
/// +infinity when the full tree contains no goal vertex.
template <PlanningDomain D>
double oracle_best_cost(const D& domain, const typename D::State& root) {
  double best = std::numeric_limits<double>::infinity();
  for_each_tree_vertex(domain, root, [&](const typename D::State& s, double g) {
    if (domain.in_goal(s) && g < best) best = g;
  });
  return best;
}

/// |{v in the full tree : v.g < bound}| with strict inequality.
template <PlanningDomain D>
std::size_t oracle_count_below(const D& domain, const typename D::State& root,
                               double bound) {
  std::size_t count = 0;
  for_each_tree_vertex(domain, root,
                       [&](const typename D::State&, double g) {
                         if (g < bound) ++count;
                       });
  return count;
}

}  // namespace ighastar::testing
