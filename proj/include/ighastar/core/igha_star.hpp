#pragma once

#include <cmath>
#include <limits>

#include "ighastar/core/rules.hpp"
#include "ighastar/core/search_state.hpp"

namespace ighastar {

/// Incremental multi-resolution planner. One vertex tree is grown across all
/// resolution levels; a SHIFT/ACTIVATE rule decides when to change level and
/// which vertices compete. Each outer iteration runs a forward search over
/// the active set, then prunes against the incumbent (Bound) and moves to the
/// level the rule picked (Project).
///
/// The forward search peeks the head before every pop: a head at or above the
/// incumbent cost ends the iteration (everything behind it is no better), a
/// head inside the goal set emits an improving path, and otherwise the rule
/// is consulted and may end the iteration itself. A rule-requested break is
/// suppressed until the first iteration has completed and at least one vertex
/// was expanded in the current iteration.
///
/// An iteration that neither expands nor emits cannot change the search state
/// (the pseudocode alone would spin on it forever): the planner then forces
/// the level one step finer to uncover vertices hidden behind coarse
/// dominants, and terminates once this fixed point occurs at the finest
/// level. Only these stall passes may run without an expansion.
template <PlanningDomain D, class Rule>
  requires SearchRule<Rule, SearchState<D>>
RunResult<typename D::State> igha_star(const D& domain, const typename D::State& start,
                                      const ResolutionSchedule<D::kKeyDims>& schedule,
                                      Rule& rule, const SearchOptions& opt = {}) {
  using State = typename D::State;
  domain.check_start(start);

  RunResult<State> result;
  SearchState<D> ss(domain, schedule);
  if (opt.record_tree) ss.attach_trace(&result.tree);
  ss.insert_root(start);

  double incumbent = std::numeric_limits<double>::infinity();
  bool budget_hit = false;

  while (ss.open_nonempty()) {
    const auto act = rule.activate(ss);
    if (act.activated == 0 && ss.open_nonempty() && ss.any_open_dominant())
      throw rule_contract_error(
          "rule activated nothing although dominant open vertices exist");

    IterationStat it;
    it.activated = act.activated;
    it.open_count = act.open_count;
    it.level_start = ss.level();
    const std::uint32_t iteration = result.stats.iterations;

    while (true) {
      const VertexId head = ss.peek_active();
      if (head == kNoVertex) break;
      const double head_f = ss.vertex(head).f;
      const double head_g = ss.vertex(head).g;
      const State head_state = ss.vertex(head).state;

      if (head_f >= incumbent) break;  // nothing ahead can improve the incumbent
      if (domain.in_goal(head_state)) {
        IGH_CHECK(head_g < incumbent, "emission must strictly improve the incumbent");
        result.best = ss.emit_path(head);
        incumbent = result.best.cost;
        result.emissions.push_back({incumbent, result.stats.expansions, iteration});
        it.emitted = true;
        break;
      }
      if (result.stats.expansions >= opt.budget) {
        budget_hit = true;
        break;
      }
      const bool want_break = rule.shift(ss);
      if (want_break && iteration >= 1 && it.expansions >= 1) break;

      const VertexId popped = ss.pop_active();
      IGH_CHECK(popped == head, "pop must return the peeked head");
      if (opt.record_expansions) {
        result.expanded_states.push_back(head_state);
        result.expanded_iteration.push_back(iteration);
      }
      ss.expand(popped);
      ++result.stats.expansions;
      ++it.expansions;
    }

    // bound(inf) removes nothing; skip the arena scan until a path exists.
    if (std::isfinite(incumbent)) result.stats.bound_removed += ss.bound(incumbent);

    bool fixed_point = false;
    int target = ss.next_level();
    if (it.expansions == 0 && !it.emitted && !budget_hit) {
      it.stall = true;
      ++result.stats.stall_passes;
      if (ss.level() >= ss.finest_level())
        fixed_point = true;  // nothing expandable anywhere in the schedule
      else
        target = ss.level() + 1;
    }
    if (!fixed_point) ss.project(target);
    it.level_end = ss.level();
    result.stats.per_iteration.push_back(it);
    ++result.stats.iterations;
    if (fixed_point || budget_hit) break;
  }

  result.stats.inserted = ss.inserted_total();
  result.stats.peak_open = ss.peak_open();
  ss.finalize_trace();
  result.status = budget_hit                ? Status::kBudget
                  : result.best.empty()     ? Status::kFailure
                                            : Status::kOptimalTerminated;
  return result;
}

}  // namespace ighastar
