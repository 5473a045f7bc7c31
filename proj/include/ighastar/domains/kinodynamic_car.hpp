#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ighastar/core/resolution.hpp"
#include "ighastar/core/types.hpp"
#include "ighastar/domains/goal.hpp"
#include "ighastar/util/check.hpp"
#include "ighastar/worlds/elevation_map.hpp"

namespace ighastar {

/// Bicycle with speed as a fourth state dimension, driving on an elevation
/// map. Primitives pair each steering angle with an acceleration in
/// {-a, 0, +a} held for a fixed duration, integrated by forward Euler with
/// the speed clamped to [v_min, v_max]. Displacement scales with the running
/// speed. Cost is the duration inflated by the mean terrain roughness along
/// the primitive; the heuristic divides the Euclidean gap by the top speed,
/// a lower bound on any traversal time.
class KinodynamicCarDomain {
 public:
  struct State {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double v = 0.0;
    bool operator==(const State&) const = default;
  };
  static constexpr std::size_t kKeyDims = 4;

  struct Params {
    double wheelbase = 2.5;
    double duration = 1.0;   // seconds per primitive
    double accel = 1.5;      // m/s^2 magnitude for the +/- primitives
    double max_steer = 0.5;
    int substeps = 5;
    double v_min = 0.0;
    double v_max = 5.0;
    double footprint_length = 3.0;
    double footprint_width = 1.6;
    double roughness_weight = 1.0;  // cost = duration * (1 + weight * mean roughness)
    double epsilon = 1e-3;
  };

  KinodynamicCarDomain(const ElevationMap& map, const GoalSpec& goal)
      : KinodynamicCarDomain(map, goal, Params()) {}

  KinodynamicCarDomain(const ElevationMap& map, const GoalSpec& goal, Params params)
      : map_(&map), goal_(goal), params_(params) {
    IGH_CHECK(map.analyzed(), "elevation map must be analyzed before planning");
    IGH_CHECK(params_.duration >= params_.epsilon, "duration shorter than the edge-cost floor");
    IGH_CHECK(params_.substeps >= 1, "need at least one substep");
    IGH_CHECK(params_.v_min <= params_.v_max, "empty speed interval");
    IGH_CHECK(std::max(std::abs(params_.v_min), std::abs(params_.v_max)) > 0.0,
              "zero top speed makes the heuristic undefined");
    steer_[0] = -params_.max_steer;
    steer_[1] = -params_.max_steer * 0.5;
    steer_[2] = 0.0;
    steer_[3] = params_.max_steer * 0.5;
    steer_[4] = params_.max_steer;
  }

  std::array<double, 4> key_coords(const State& s) const {
    return {s.x, s.y, wrap_angle(s.theta), s.v};
  }
  std::array<double, 2> position(const State& s) const { return {s.x, s.y}; }

  void successors(const State& s, std::vector<Successor<State>>& out) const {
    for (std::int16_t p = 0; p < 15; ++p) {
      double roughness = 0.0;
      State n{};
      if (!propagate_checked(s, p, &n, &roughness)) continue;
      // A primitive that moves nothing (parked with no throttle, or braking
      // at the floor speed) adds a zero-progress child; drop it.
      if (std::abs(n.x - s.x) < 1e-12 && std::abs(n.y - s.y) < 1e-12 &&
          std::abs(n.theta - s.theta) < 1e-12 && std::abs(n.v - s.v) < 1e-12)
        continue;
      const double cost = params_.duration * (1.0 + params_.roughness_weight * roughness);
      out.push_back({n, cost, p});
    }
  }

  State step(const State& s, std::int16_t primitive) const {
    State n{};
    propagate(s, primitive, &n, nullptr, nullptr);
    return n;
  }

  double heuristic(const State& s) const {
    const double top = std::max(std::abs(params_.v_min), std::abs(params_.v_max));
    return std::max(0.0, goal_.distance(s.x, s.y) - goal_.radius) / top;
  }

  bool in_goal(const State& s) const {
    return goal_.position_ok(s.x, s.y) && goal_.speed_ok(s.v);
  }

  double min_edge_cost() const { return params_.epsilon; }

  void check_start(const State& s) const {
    if (!map_->in_bounds(s.x, s.y))
      throw query_error("start state lies outside the map");
    if (!footprint_free(s))
      throw query_error("start footprint is on untraversable terrain");
    if (s.v < params_.v_min || s.v > params_.v_max)
      throw query_error("start speed outside the speed limits");
  }

  double steering(std::int16_t primitive) const { return steer_[primitive / 3]; }
  double acceleration(std::int16_t primitive) const {
    static constexpr double sign[3] = {-1.0, 0.0, 1.0};
    return sign[primitive % 3] * params_.accel;
  }

  bool footprint_free(const State& s) const {
    const double hl = params_.footprint_length * 0.5;
    const double hw = params_.footprint_width * 0.5;
    const double spacing = map_->cell_size() * 0.5;
    const int nx = std::max(1, static_cast<int>(std::ceil(params_.footprint_length / spacing)));
    const int ny = std::max(1, static_cast<int>(std::ceil(params_.footprint_width / spacing)));
    const double c = std::cos(s.theta);
    const double si = std::sin(s.theta);
    for (int i = 0; i <= nx; ++i) {
      const double u = -hl + params_.footprint_length * i / nx;
      for (int j = 0; j <= ny; ++j) {
        const double v = -hw + params_.footprint_width * j / ny;
        if (map_->occupied_at(s.x + c * u - si * v, s.y + si * u + c * v)) return false;
      }
    }
    return true;
  }

  const GoalSpec& goal() const { return goal_; }
  const Params& params() const { return params_; }

 private:
  /// Forward-Euler rollout. Returns false as soon as a substep pose is
  /// untraversable (when `checked` mode collects validity).
  void propagate(const State& s, std::int16_t primitive, State* out, double* roughness,
                 bool* valid) const {
    IGH_CHECK(primitive >= 0 && primitive < 15, "bad primitive index");
    const double steer = steering(primitive);
    const double a = acceleration(primitive);
    const double kappa = std::tan(steer) / params_.wheelbase;
    const double dt = params_.duration / params_.substeps;
    State cur = s;
    double rough_sum = 0.0;
    if (valid) *valid = true;
    for (int i = 0; i < params_.substeps; ++i) {
      cur.v = std::min(params_.v_max, std::max(params_.v_min, cur.v + a * dt));
      cur.x += cur.v * std::cos(cur.theta) * dt;
      cur.y += cur.v * std::sin(cur.theta) * dt;
      cur.theta += cur.v * kappa * dt;
      rough_sum += map_->in_bounds(cur.x, cur.y) ? map_->roughness_at(cur.x, cur.y) : 0.0;
      if (valid && !footprint_free(cur)) {
        *valid = false;
        return;
      }
    }
    *out = cur;
    if (roughness) *roughness = rough_sum / params_.substeps;
  }

  bool propagate_checked(const State& s, std::int16_t primitive, State* out,
                         double* roughness) const {
    bool valid = true;
    propagate(s, primitive, out, roughness, &valid);
    return valid;
  }

  const ElevationMap* map_;
  GoalSpec goal_;
  Params params_;
  std::array<double, 5> steer_{};
};

}  // namespace ighastar
