#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ighastar/core/types.hpp"
#include "ighastar/domains/goal.hpp"
#include "ighastar/util/check.hpp"
#include "ighastar/worlds/occupancy_grid.hpp"

namespace ighastar {

/// Point robot in the plane with 8-connected straight steps at doubling
/// lengths (step, 2*step, ... for `scales` octaves). Edge cost is the
/// Euclidean step length; the heuristic is the Euclidean distance to the
/// goal disc. Long steps let coarse dominance cells stay traversable, which
/// is what makes multi-resolution search on this domain interesting.
class PointRobotDomain {
 public:
  struct State {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const State&) const = default;
  };
  static constexpr std::size_t kKeyDims = 2;

  struct Params {
    double step = 1.0;          // base move length in meters
    int scales = 1;             // doubling lengths per direction
    double epsilon = 1e-3;      // lower bound on any edge cost
  };

  PointRobotDomain(const OccupancyGrid& grid, const GoalSpec& goal)
      : PointRobotDomain(grid, goal, Params()) {}

  PointRobotDomain(const OccupancyGrid& grid, const GoalSpec& goal, Params params)
      : grid_(&grid), goal_(goal), params_(params) {
    IGH_CHECK(params_.step >= params_.epsilon, "step shorter than the edge-cost floor");
    IGH_CHECK(params_.scales >= 1 && params_.scales <= 16, "scales outside [1, 16]");
  }

  std::array<double, 2> key_coords(const State& s) const { return {s.x, s.y}; }
  std::array<double, 2> position(const State& s) const { return {s.x, s.y}; }

  void successors(const State& s, std::vector<Successor<State>>& out) const {
    for (std::int16_t p = 0; p < 8 * params_.scales; ++p) {
      State n = step(s, p);
      if (!segment_free(s, n)) continue;
      const double d = params_.step * static_cast<double>(std::uint64_t{1} << (p / 8));
      const bool diag = p % 2 == 1;  // odd directions move on both axes
      out.push_back({n, diag ? d * std::sqrt(2.0) : d, p});
    }
  }

  /// Replays one primitive without validity checks (path/debug use).
  /// Primitive p encodes direction p%8 at length step*2^(p/8).
  State step(const State& s, std::int16_t primitive) const {
    static constexpr int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static constexpr int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    IGH_CHECK(primitive >= 0 && primitive < 8 * params_.scales, "bad primitive index");
    const double d = params_.step * static_cast<double>(std::uint64_t{1} << (primitive / 8));
    return {s.x + dx[primitive % 8] * d, s.y + dy[primitive % 8] * d};
  }

  double heuristic(const State& s) const {
    return std::max(0.0, goal_.distance(s.x, s.y) - goal_.radius);
  }

  bool in_goal(const State& s) const { return goal_.position_ok(s.x, s.y); }

  double min_edge_cost() const { return params_.epsilon; }

  void check_start(const State& s) const {
    if (!grid_->in_bounds(s.x, s.y))
      throw query_error("start state lies outside the map");
    if (grid_->occupied_at(s.x, s.y))
      throw query_error("start state is in collision");
  }

  const GoalSpec& goal() const { return goal_; }
  const Params& params() const { return params_; }

 private:
  /// Samples the segment at no more than half the occupancy cell size.
  bool segment_free(const State& a, const State& b) const {
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / (grid_->cell_size() * 0.5))));
    for (int i = 1; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      if (grid_->occupied_at(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))) return false;
    }
    return true;
  }

  const OccupancyGrid* grid_;
  GoalSpec goal_;
  Params params_;
};

}  // namespace ighastar
