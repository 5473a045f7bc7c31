#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "ighastar/core/dominance.hpp"
#include "ighastar/core/resolution.hpp"
#include "ighastar/core/types.hpp"
#include "ighastar/util/check.hpp"

namespace ighastar {

struct HybridOptions {
  std::uint64_t budget = kUnlimited;
  /// Terminate the search as soon as the head's f reaches this bound
  /// (branch-and-bound pruning for the restart planner).
  double prune_bound = std::numeric_limits<double>::infinity();
  bool record_expansions = false;
  std::vector<TraceNode>* trace = nullptr;
};

/// Search over the motion-primitive tree with approximate dominance at one
/// fixed resolution level. Vertices that lose the dominance check in their
/// cell are discarded outright; displacing a cell's open occupant removes it
/// from the queue.
template <PlanningDomain D>
RunResult<typename D::State> hybrid_astar(const D& domain,
                                          const typename D::State& start,
                                          const ResolutionSchedule<D::kKeyDims>& schedule,
                                          int level,
                                          const HybridOptions& opt = {}) {
  using State = typename D::State;
  domain.check_start(start);
  const auto& cells = schedule.cells(level);

  RunResult<State> result;
  std::vector<Vertex<State>> arena;
  DominanceTable table(1);
  struct HeapEntry {
    double f;
    VertexId id;
    bool operator>(const HeapEntry& o) const {
      if (f != o.f) return f > o.f;
      return id > o.id;
    }
  };
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
  std::vector<std::uint32_t> trace_idx;
  std::size_t open = 0;

  auto key_of = [&](const State& s) { return cell_key(domain.key_coords(s), cells); };
  auto g_of = [&](VertexId id) { return arena[id].g; };

  auto insert = [&](const State& s, double g, VertexId parent, std::int16_t prim) {
    const VertexId id = static_cast<VertexId>(arena.size());
    const auto out = table.try_dominate(0, key_of(s), id, g, g_of);
    if (!out.became_dominant) return;  // loser successors are discarded
    if (out.displaced != kNoVertex) {
      Vertex<State>& d = arena[out.displaced];
      if (d.open) {  // remove the displaced vertex from the queue
        d.alive = false;
        d.open = false;
        --open;
        if (opt.trace) (*opt.trace)[trace_idx[out.displaced]].fate = VertexFate::kRemoved;
      }
    }
    Vertex<State> v;
    v.state = s;
    v.g = g;
    v.f = g + domain.heuristic(s);
    v.parent = parent;
    v.primitive = prim;
    if (parent != kNoVertex) {
      const Vertex<State>& p = arena[parent];
      IGH_CHECK(p.f - p.g <= (g - p.g) + (v.f - g) + 1e-9, "heuristic is not consistent");
    }
    arena.push_back(v);
    ++open;
    ++result.stats.inserted;
    result.stats.peak_open = std::max(result.stats.peak_open, open);
    if (opt.trace) {
      const auto pos = domain.position(s);
      trace_idx.push_back(static_cast<std::uint32_t>(opt.trace->size()));
      opt.trace->push_back({pos[0], pos[1], VertexFate::kActive});
    }
    heap.push({v.f, id});
  };

  auto emit = [&](VertexId goal) {
    Path<State> path;
    const double cost = arena[goal].g;
    for (VertexId id = goal; id != kNoVertex; id = arena[id].parent) {
      const Vertex<State>& v = arena[id];
      IGH_CHECK(v.alive, "path ancestor was removed");
      IGH_CHECK(v.f <= cost + 1e-9, "ancestor f above the path cost");
      path.states.push_back(v.state);
      if (v.primitive >= 0) path.primitives.push_back(v.primitive);
    }
    std::reverse(path.states.begin(), path.states.end());
    std::reverse(path.primitives.begin(), path.primitives.end());
    path.cost = cost;
    return path;
  };

  insert(start, 0.0, kNoVertex, -1);
  std::vector<Successor<State>> succs;
  result.status = Status::kFailure;

  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    if (!arena[top.id].alive) {  // displaced; drop the stale entry
      heap.pop();
      continue;
    }
    const VertexId u_id = top.id;
    if (arena[u_id].f >= opt.prune_bound) break;  // bound pruning ends the search
    heap.pop();
    const Vertex<State> u = arena[u_id];  // copy: arena may reallocate below
    arena[u_id].open = false;
    --open;
    if (domain.in_goal(u.state)) {
      result.best = emit(u_id);
      result.emissions.push_back({result.best.cost, result.stats.expansions, 0});
      result.status = Status::kOptimalTerminated;
      break;
    }
    if (result.stats.expansions >= opt.budget) {
      result.status = Status::kBudget;
      break;
    }
    if (opt.record_expansions) {
      result.expanded_states.push_back(u.state);
      result.expanded_iteration.push_back(0);
    }
    ++result.stats.expansions;
    succs.clear();
    domain.successors(u.state, succs);
    for (const auto& sc : succs) {
      IGH_CHECK(sc.cost >= domain.min_edge_cost(), "edge cost below the configured floor");
      insert(sc.state, u.g + sc.cost, u_id, sc.primitive);
    }
  }

  if (opt.trace) {
    // No deactivated category here: everything alive is part of the open
    // list or the expanded cloud.
    for (VertexId id = 0; id < arena.size(); ++id)
      if (arena[id].alive) (*opt.trace)[trace_idx[id]].fate = VertexFate::kActive;
  }
  result.stats.iterations = 1;
  return result;
}

}  // namespace ighastar
