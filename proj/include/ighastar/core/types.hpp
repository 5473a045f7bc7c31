#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <limits>
#include <vector>

namespace ighastar {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr int kNoDomLevel = -1;
inline constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// One candidate motion-primitive outcome produced by a domain.
template <class State>
struct Successor {
  State state{};
  double cost = 0.0;
  std::int16_t primitive = -1;
};

/// A state space over which the planners search. Implicitly defines the
/// motion-primitive tree rooted at the query start.
template <class D>
concept PlanningDomain = requires(const D& d, const typename D::State& s,
                                  std::vector<Successor<typename D::State>>& out) {
  typename D::State;
  { D::kKeyDims } -> std::convertible_to<std::size_t>;
  { d.key_coords(s) } -> std::same_as<std::array<double, D::kKeyDims>>;
  { d.successors(s, out) };
  { d.heuristic(s) } -> std::convertible_to<double>;
  { d.in_goal(s) } -> std::convertible_to<bool>;
  { d.min_edge_cost() } -> std::convertible_to<double>;
  { d.position(s) } -> std::same_as<std::array<double, 2>>;
};

/// Node of the (partially materialized) search tree. The arena index is the
/// vertex id; ids are unique and strictly increasing in insertion order, and
/// the (f, id) pair is the priority-queue key, which makes every search run
/// deterministic.
template <class State>
struct Vertex {
  State state{};
  double g = 0.0;
  double f = 0.0;
  VertexId parent = kNoVertex;
  std::int16_t primitive = -1;      // primitive index that produced this vertex
  std::int8_t dom_level = kNoDomLevel;  // smallest level where this vertex is dominant
  bool active = false;              // member of Q_v.Active
  bool open = true;                 // still unexpanded (member of Q_v)
  bool alive = true;                // not removed by Bound / displacement
  bool in_heap = false;             // has a (possibly stale) heap entry
};

template <class State>
struct Path {
  std::vector<State> states;             // start first, goal last
  std::vector<std::int16_t> primitives;  // primitives[i] leads states[i] -> states[i+1]
  double cost = 0.0;

  bool empty() const { return states.empty(); }
};

/// One improving incumbent, in discovery order.
struct Emission {
  double cost = 0.0;
  std::uint64_t expansions = 0;  // cumulative expansions when emitted
  std::uint32_t iteration = 0;   // outer iteration (level index for the restart planner)
};

enum class Status : std::uint8_t {
  kOptimalTerminated,  // natural termination with a path
  kBudget,             // expansion budget exhausted; best-so-far returned
  kFailure,            // natural termination without a path
};

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimalTerminated: return "optimal-terminated";
    case Status::kBudget: return "budget";
    case Status::kFailure: return "failure";
  }
  return "unknown";
}

/// Per-iteration bookkeeping, kept for property checks and benchmarks.
struct IterationStat {
  std::uint64_t expansions = 0;
  std::uint32_t activated = 0;   // vertices activated by ACTIVATE
  std::uint32_t open_count = 0;  // |Q_v| when ACTIVATE ran
  std::int32_t level_start = 0;
  std::int32_t level_end = 0;
  bool emitted = false;
  bool stall = false;  // ended with no expansion and no emission (fixed point probe)
};

struct SearchStats {
  std::uint64_t expansions = 0;
  std::uint32_t iterations = 0;
  std::uint64_t inserted = 0;
  std::uint64_t bound_removed = 0;
  std::uint32_t stall_passes = 0;
  std::size_t peak_open = 0;
  std::vector<IterationStat> per_iteration;  // empty for the single-shot planner
};

/// Final fate of a traced vertex, used by the SVG renderer.
enum class VertexFate : std::uint8_t {
  kActive,    // alive and expanded or active at termination (the search cloud)
  kInactive,  // alive but deactivated by dominance
  kRemoved,   // pruned by Bound, displaced, or discarded by a restart
};

struct TraceNode {
  double x = 0.0;
  double y = 0.0;
  VertexFate fate = VertexFate::kActive;
};

struct SearchOptions {
  std::uint64_t budget = kUnlimited;       // counts expansions (queue pops that expand)
  bool record_expansions = false;          // keep the expanded-state sequence
  bool record_tree = false;                // keep per-vertex trace for rendering
};

template <class State>
struct RunResult {
  Status status = Status::kFailure;
  Path<State> best;                     // empty when no path was found
  std::vector<Emission> emissions;      // strictly decreasing costs
  SearchStats stats;
  std::vector<State> expanded_states;        // when record_expansions
  std::vector<std::uint32_t> expanded_iteration;  // iteration of each expansion
  std::vector<TraceNode> tree;               // when record_tree

  bool found() const { return !best.empty(); }
  const Emission& first_emission() const { return emissions.front(); }
};

}  // namespace ighastar
