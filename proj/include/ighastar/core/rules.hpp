#pragma once

#include <cstdint>
#include <limits>

#include "ighastar/core/search_state.hpp"

namespace ighastar {

/// SHIFT/ACTIVATE pair steering the incremental planner. ACTIVATE decides
/// which members of Q_v take part in the next forward-search iteration;
/// SHIFT is consulted before each pop, picks the next level, and may request
/// an iteration break (suppressed by the planner until the iteration has
/// expanded at least one vertex and the first iteration has finished).
template <class R, class SS>
concept SearchRule = requires(R r, SS& ss) {
  { r.activate(ss) } -> std::same_as<typename SS::ActivationStats>;
  { r.shift(ss) } -> std::same_as<bool>;
};

// `using ActivationStats` in rules below keeps signatures readable.

/// Always refines: every consultation sets the next level one finer
/// (saturating at the finest) and never breaks the iteration.
struct MonotoneRule {
  template <class SS>
  typename SS::ActivationStats activate(SS& ss) {
    return ss.activate_dominant_open();
  }

  template <class SS>
  bool shift(SS& ss) {
    ss.set_next_level(std::min(ss.level() + 1, ss.finest_level()));
    return false;
  }
};

/// Hysteresis-countered coarsening. Each time the head of the active queue
/// is dominant at a coarser level than the current one, evidence H grows;
/// past the threshold the rule resets H, targets the head's dominant level
/// and requests a break. Otherwise it behaves like the monotone rule.
/// threshold 0 coarsens on first evidence; an unset threshold never coarsens
/// (identical decisions to MonotoneRule).
struct HysteresisRule {
  static constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

  std::uint64_t threshold = kNever;  // H-bar
  std::uint64_t evidence = 0;        // H; persists across iterations until a trigger

  template <class SS>
  typename SS::ActivationStats activate(SS& ss) {
    return ss.activate_dominant_open();
  }

  template <class SS>
  bool shift(SS& ss) {
    const VertexId head = ss.peek_active();
    IGH_CHECK(head != kNoVertex, "shift consulted with an empty active queue");
    const auto& u = ss.vertex(head);
    IGH_CHECK(u.dom_level != kNoDomLevel && u.dom_level <= ss.level(),
              "active head must be dominant at or above the current level");
    if (u.dom_level < ss.level()) {
      ++evidence;
      if (threshold != kNever && evidence > threshold) {
        evidence = 0;
        ss.set_next_level(u.dom_level);
        return true;
      }
    }
    ss.set_next_level(std::min(ss.level() + 1, ss.finest_level()));
    return false;
  }
};

/// Reconstructs the restart planner inside the incremental framework: SHIFT
/// always moves one level finer and never breaks; ACTIVATE resets Q_v to a
/// fresh root for each level, and empties Q_v after the finest level so the
/// outer loop terminates.
struct RestartRule {
  int levels_started = 0;

  template <class SS>
  typename SS::ActivationStats activate(SS& ss) {
    if (levels_started > 0) {
      if (levels_started > ss.finest_level()) {  // all levels done
        ss.clear_all();
        ++levels_started;
        return {};
      }
      ss.reset_to_root();
    }
    ++levels_started;
    typename SS::ActivationStats st;
    st.activated = 1;  // the fresh root
    st.open_count = 1;
    return st;
  }

  template <class SS>
  bool shift(SS& ss) {
    ss.set_next_level(std::min(ss.level() + 1, ss.finest_level()));
    return false;
  }
};

}  // namespace ighastar
