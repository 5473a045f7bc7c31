#pragma once

#include <limits>

#include "ighastar/core/hybrid_astar.hpp"

namespace ighastar {

struct IhaOptions {
  std::uint64_t budget = kUnlimited;  // shared across all levels
  /// Branch-and-bound across levels: once an incumbent exists, a level's
  /// search terminates when its head reaches the incumbent cost. Disabled
  /// only by tests that quantify the pruning.
  bool use_bound = true;
  std::vector<TraceNode>* trace = nullptr;
};

/// Restart planner: runs the fixed-resolution search from scratch at every
/// level of the schedule, coarsest first, keeping the best path found.
template <PlanningDomain D>
RunResult<typename D::State> iha_star(const D& domain, const typename D::State& start,
                                      const ResolutionSchedule<D::kKeyDims>& schedule,
                                      const IhaOptions& opt = {}) {
  using State = typename D::State;
  RunResult<State> result;
  double incumbent = std::numeric_limits<double>::infinity();
  bool budget_hit = false;

  for (int level = 0; level < schedule.level_count(); ++level) {
    HybridOptions hopt;
    hopt.budget = opt.budget - result.stats.expansions;
    if (opt.use_bound) hopt.prune_bound = incumbent;
    hopt.trace = opt.trace;
    const std::size_t trace_before = opt.trace ? opt.trace->size() : 0;

    auto level_result = hybrid_astar(domain, start, schedule, level, hopt);

    result.stats.expansions += level_result.stats.expansions;
    result.stats.inserted += level_result.stats.inserted;
    result.stats.peak_open = std::max(result.stats.peak_open, level_result.stats.peak_open);
    ++result.stats.iterations;
    IterationStat it;
    it.expansions = level_result.stats.expansions;
    it.level_start = level;
    it.level_end = level;
    it.emitted = level_result.found() && level_result.best.cost < incumbent;
    result.stats.per_iteration.push_back(it);

    if (it.emitted) {
      incumbent = level_result.best.cost;
      result.best = std::move(level_result.best);
      result.emissions.push_back(
          {incumbent, result.stats.expansions, static_cast<std::uint32_t>(level)});
    }
    if (level_result.status == Status::kBudget) {
      budget_hit = true;
      break;
    }
    // Trees of completed non-final levels are discarded by the restart.
    if (opt.trace && level < schedule.finest_level()) {
      for (std::size_t i = trace_before; i < opt.trace->size(); ++i)
        (*opt.trace)[i].fate = VertexFate::kRemoved;
    }
  }

  result.status = budget_hit ? Status::kBudget
                 : result.found() ? Status::kOptimalTerminated
                                  : Status::kFailure;
  return result;
}

}  // namespace ighastar
