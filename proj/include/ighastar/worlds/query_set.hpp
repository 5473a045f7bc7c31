#pragma once

#include <vector>

namespace ighastar {

/// One start/goal query. Unused start fields stay zero for lower-dimensional
/// domains (theta for the point robot, v for everything but the kinodynamic
/// car).
struct Query {
  int id = 0;
  double sx = 0.0;
  double sy = 0.0;
  double stheta = 0.0;
  double sv = 0.0;
  double gx = 0.0;
  double gy = 0.0;
  double radius = 0.0;
};

struct QuerySet {
  /// 2 = (x, y); 3 = (x, y, theta); 4 = (x, y, theta, v). Controls which
  /// start columns are written.
  int state_dims = 2;
  std::vector<Query> queries;
};

}  // namespace ighastar
