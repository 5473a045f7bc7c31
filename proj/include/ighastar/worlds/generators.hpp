#pragma once

#include <cmath>
#include <functional>

#include "ighastar/util/check.hpp"
#include "ighastar/util/rng.hpp"
#include "ighastar/worlds/occupancy_grid.hpp"
#include "ighastar/worlds/query_set.hpp"

namespace ighastar {

struct GenParams {
  int width = 64;              // cells
  int height = 64;             // cells
  double cell_size = 1.0;      // meters
  int walls = 1;               // full-height vertical walls between the corners
  int wall_thickness = 1;      // cells
  double gap_width = 1.5;      // meters of free opening per wall
  double goal_radius = 2.0;    // meters
  int query_count = 10;
  double corner_frac = 0.3;    // corner region size as a fraction of the map
  int max_attempts = 200;      // query resamples before giving up
};

/// Decides whether a sampled query is usable: the caller wires in domain
/// construction, a validating fine-level planner run, and (for the benchmark
/// worlds) the requirement that the coarsest level fails.
using QueryAcceptance = std::function<bool(const OccupancyGrid&, const Query&)>;

struct GeneratedWorld {
  OccupancyGrid grid;
  QuerySet queries;
};

namespace detail {

inline GeneratedWorld generate_barrier_world(std::uint64_t seed, const GenParams& p,
                                             const QueryAcceptance& accept) {
  IGH_CHECK(p.walls >= 1, "need at least one wall");
  IGH_CHECK(p.width >= 8 && p.height >= 8, "map too small for barrier worlds");
  Rng rng(derive_seed(seed, 0));

  OccupancyGrid grid(p.width, p.height, p.cell_size);
  for (int ix = 0; ix < p.width; ++ix) {
    grid.set(ix, 0, true);
    grid.set(ix, p.height - 1, true);
  }
  for (int iy = 0; iy < p.height; ++iy) {
    grid.set(0, iy, true);
    grid.set(p.width - 1, iy, true);
  }

  const int gap_cells = std::max(1, static_cast<int>(std::round(p.gap_width / p.cell_size)));
  const double spacing = static_cast<double>(p.width) / (p.walls + 1);
  const int jitter_range = std::max(1, static_cast<int>(spacing / 6.0));
  for (int w = 0; w < p.walls; ++w) {
    const int base = static_cast<int>(spacing * (w + 1));
    const int jitter = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(2 * jitter_range + 1))) -
                       jitter_range;
    int cx = std::min(p.width - 2 - p.wall_thickness, std::max(2, base + jitter));
    const int gy = 1 + static_cast<int>(rng.next_below(
                           static_cast<std::uint64_t>(p.height - 2 - gap_cells + 1)));
    for (int t = 0; t < p.wall_thickness; ++t)
      for (int iy = 1; iy < p.height - 1; ++iy) grid.set(cx + t, iy, true);
    for (int t = 0; t < p.wall_thickness; ++t)
      for (int g = 0; g < gap_cells; ++g) grid.set(cx + t, gy + g, false);
  }

  GeneratedWorld world{std::move(grid), {}};
  const double wm = world.grid.width_m();
  const double hm = world.grid.height_m();
  const double fw = p.corner_frac * wm;
  const double fh = p.corner_frac * hm;
  const double margin = p.cell_size;

  for (int qi = 0; qi < p.query_count; ++qi) {
    Rng qr(derive_seed(seed, 1 + static_cast<std::uint64_t>(qi)));
    bool placed = false;
    for (int attempt = 0; attempt < p.max_attempts && !placed; ++attempt) {
      Query q;
      q.id = qi;
      q.sx = qr.uniform(margin, fw);
      q.sy = qr.uniform(margin, fh);
      q.gx = qr.uniform(wm - fw, wm - margin);
      q.gy = qr.uniform(hm - fh, hm - margin);
      q.radius = p.goal_radius;
      q.stheta = std::atan2(q.gy - q.sy, q.gx - q.sx);
      q.sv = 0.0;
      if (world.grid.occupied_at(q.sx, q.sy)) continue;
      if (world.grid.occupied_at(q.gx, q.gy)) continue;
      if (std::hypot(q.gx - q.sx, q.gy - q.sy) <= q.radius) continue;  // start inside goal
      if (accept && !accept(world.grid, q)) continue;
      world.queries.queries.push_back(q);
      placed = true;
    }
    if (!placed)
      throw query_error("generator failed to place query " + std::to_string(qi) +
                        " after " + std::to_string(p.max_attempts) + " attempts");
  }
  return world;
}

}  // namespace detail

/// Single-barrier world: one full-height wall with one gap between the start
/// and goal corners.
inline GeneratedWorld gen_sb(std::uint64_t seed, GenParams params,
                             const QueryAcceptance& accept = nullptr) {
  params.walls = 1;
  return detail::generate_barrier_world(seed, params, accept);
}

/// Multi-barrier world: k >= 2 staggered walls, every start-goal path must
/// thread all k gaps.
inline GeneratedWorld gen_mb(std::uint64_t seed, const GenParams& params,
                             const QueryAcceptance& accept = nullptr) {
  IGH_CHECK(params.walls >= 2, "multi-barrier worlds need at least two walls");
  return detail::generate_barrier_world(seed, params, accept);
}

}  // namespace ighastar
