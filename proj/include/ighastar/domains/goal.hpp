#pragma once

#include <cmath>
#include <limits>

#include "ighastar/core/resolution.hpp"

namespace ighastar {

/// Goal region: a closed disc around (x, y), optionally restricted to a
/// heading window and a speed window. Boundary states are inside.
struct GoalSpec {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
  double heading = 0.0;
  double heading_tol = std::numeric_limits<double>::infinity();  // infinity = any heading
  double speed = 0.0;
  double speed_tol = std::numeric_limits<double>::infinity();  // infinity = any speed

  double distance(double px, double py) const { return std::hypot(px - x, py - y); }

  bool position_ok(double px, double py) const { return distance(px, py) <= radius; }

  bool heading_ok(double theta) const {
    if (!std::isfinite(heading_tol)) return true;
    const double d = std::abs(wrap_angle(theta) - wrap_angle(heading));
    constexpr double kTau = 6.283185307179586476925286766559;
    return std::min(d, kTau - d) <= heading_tol;
  }

  bool speed_ok(double v) const {
    if (!std::isfinite(speed_tol)) return true;
    return std::abs(v - speed) <= speed_tol;
  }
};

}  // namespace ighastar
