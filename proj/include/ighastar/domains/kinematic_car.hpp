#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ighastar/core/resolution.hpp"
#include "ighastar/core/types.hpp"
#include "ighastar/domains/goal.hpp"
#include "ighastar/util/check.hpp"
#include "ighastar/worlds/occupancy_grid.hpp"

namespace ighastar {

/// Kinematic bicycle in SE(2). Primitives are constant-curvature arcs of a
/// fixed length, one per steering angle in {-max, -max/2, 0, max/2, max}.
/// With curvature kappa = tan(steer) / wheelbase, the arc endpoint follows
/// the closed form (sin(kappa s)/kappa, (1 - cos(kappa s))/kappa, kappa s)
/// in the body frame. Edge cost is the arc length, optionally inflated by a
/// curvature penalty; the heuristic is the Euclidean distance to the goal
/// disc, which ignores the penalty and stays admissible.
class KinematicCarDomain {
 public:
  struct State {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    bool operator==(const State&) const = default;
  };
  static constexpr std::size_t kKeyDims = 3;

  struct Params {
    double wheelbase = 2.5;
    double arc_length = 2.0;
    double max_steer = 0.5;        // radians
    int substeps = 8;              // collision checks per primitive
    double footprint_length = 3.0;
    double footprint_width = 1.6;
    double curvature_penalty = 0.1;  // cost = arc * (1 + penalty * |kappa|)
    double epsilon = 1e-3;
  };

  KinematicCarDomain(const OccupancyGrid& grid, const GoalSpec& goal)
      : KinematicCarDomain(grid, goal, Params()) {}

  KinematicCarDomain(const OccupancyGrid& grid, const GoalSpec& goal, Params params)
      : grid_(&grid), goal_(goal), params_(params) {
    IGH_CHECK(params_.arc_length >= params_.epsilon, "arc shorter than the edge-cost floor");
    IGH_CHECK(params_.substeps >= 1, "need at least one substep");
    steer_[0] = -params_.max_steer;
    steer_[1] = -params_.max_steer * 0.5;
    steer_[2] = 0.0;
    steer_[3] = params_.max_steer * 0.5;
    steer_[4] = params_.max_steer;
  }

  std::array<double, 3> key_coords(const State& s) const {
    return {s.x, s.y, wrap_angle(s.theta)};
  }
  std::array<double, 2> position(const State& s) const { return {s.x, s.y}; }

  void successors(const State& s, std::vector<Successor<State>>& out) const {
    for (std::int16_t p = 0; p < 5; ++p) {
      if (!primitive_free(s, steer_[p])) continue;
      const State n = propagate(s, steer_[p], params_.arc_length);
      const double kappa = std::tan(steer_[p]) / params_.wheelbase;
      const double cost =
          params_.arc_length * (1.0 + params_.curvature_penalty * std::abs(kappa));
      out.push_back({n, cost, p});
    }
  }

  State step(const State& s, std::int16_t primitive) const {
    IGH_CHECK(primitive >= 0 && primitive < 5, "bad primitive index");
    return propagate(s, steer_[primitive], params_.arc_length);
  }

  double heuristic(const State& s) const {
    return std::max(0.0, goal_.distance(s.x, s.y) - goal_.radius);
  }

  bool in_goal(const State& s) const {
    return goal_.position_ok(s.x, s.y) && goal_.heading_ok(s.theta);
  }

  double min_edge_cost() const { return params_.epsilon; }

  void check_start(const State& s) const {
    if (!grid_->in_bounds(s.x, s.y))
      throw query_error("start state lies outside the map");
    if (!footprint_free(s))
      throw query_error("start footprint is in collision");
  }

  /// Pose after driving `arc` meters at constant steering.
  State propagate(const State& s, double steer, double arc) const {
    const double kappa = std::tan(steer) / params_.wheelbase;
    double lx, ly, dtheta;
    if (std::abs(kappa) < 1e-12) {
      lx = arc;
      ly = 0.0;
      dtheta = 0.0;
    } else {
      lx = std::sin(kappa * arc) / kappa;
      ly = (1.0 - std::cos(kappa * arc)) / kappa;
      dtheta = kappa * arc;
    }
    const double c = std::cos(s.theta);
    const double si = std::sin(s.theta);
    return {s.x + c * lx - si * ly, s.y + si * lx + c * ly, s.theta + dtheta};
  }

  bool footprint_free(const State& s) const {
    const double hl = params_.footprint_length * 0.5;
    const double hw = params_.footprint_width * 0.5;
    const double spacing = grid_->cell_size() * 0.5;
    const int nx = std::max(1, static_cast<int>(std::ceil(params_.footprint_length / spacing)));
    const int ny = std::max(1, static_cast<int>(std::ceil(params_.footprint_width / spacing)));
    const double c = std::cos(s.theta);
    const double si = std::sin(s.theta);
    for (int i = 0; i <= nx; ++i) {
      const double u = -hl + params_.footprint_length * i / nx;
      for (int j = 0; j <= ny; ++j) {
        const double v = -hw + params_.footprint_width * j / ny;
        if (grid_->occupied_at(s.x + c * u - si * v, s.y + si * u + c * v)) return false;
      }
    }
    return true;
  }

  const GoalSpec& goal() const { return goal_; }
  const Params& params() const { return params_; }

 private:
  bool primitive_free(const State& s, double steer) const {
    for (int i = 1; i <= params_.substeps; ++i) {
      const double frac = static_cast<double>(i) / params_.substeps;
      if (!footprint_free(propagate(s, steer, params_.arc_length * frac))) return false;
    }
    return true;
  }

  const OccupancyGrid* grid_;
  GoalSpec goal_;
  Params params_;
  std::array<double, 5> steer_{};
};

}  // namespace ighastar
