#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "ighastar/core/types.hpp"
#include "ighastar/domains/goal.hpp"
#include "ighastar/util/check.hpp"
#include "ighastar/util/text.hpp"
#include "ighastar/worlds/occupancy_grid.hpp"

namespace ighastar {

/// Everything the renderer needs, already projected to workspace (x, y):
/// obstacles from the grid, traced vertices with their final fate, the final
/// path polyline, and the expansion-count bar data.
struct RenderInputs {
  const OccupancyGrid* grid = nullptr;
  GoalSpec goal;
  std::vector<TraceNode> tree;
  std::vector<std::array<double, 2>> path;
  std::uint64_t expansions = 0;
  std::uint64_t budget = kUnlimited;
  std::string title;
};

/// Deterministic SVG picture of one search: obstacles black, search cloud
/// gray, deactivated vertices translucent blue, pruned vertices light gray,
/// the goal disc outlined, the final path black. Byte-identical output for
/// identical inputs.
inline std::string render_svg(const RenderInputs& in) {
  IGH_CHECK(in.grid != nullptr, "renderer needs a grid");
  const OccupancyGrid& grid = *in.grid;
  const double wm = grid.width_m();
  const double hm = grid.height_m();
  if (!grid.in_bounds(in.goal.x, in.goal.y))
    throw query_error("render: goal lies outside the world");
  for (const TraceNode& v : in.tree)
    if (v.x < 0.0 || v.y < 0.0 || v.x > wm || v.y > hm)
      throw query_error("render: traced vertex lies outside the world");

  std::uint64_t n_active = 0, n_inactive = 0, n_removed = 0;
  for (const TraceNode& v : in.tree) {
    switch (v.fate) {
      case VertexFate::kActive: ++n_active; break;
      case VertexFate::kInactive: ++n_inactive; break;
      case VertexFate::kRemoved: ++n_removed; break;
    }
  }

  const double scale = 640.0 / std::max(wm, hm);
  const double margin = 12.0;
  const double bar_h = 26.0;
  const double wpx = wm * scale;
  const double hpx = hm * scale;
  const double total_w = wpx + 2 * margin;
  const double total_h = hpx + 2 * margin + bar_h;

  const auto px = [&](double v) { return fmt_fixed(v, 3); };
  const auto m2 = [&](double v) { return fmt_fixed(v, 3); };  // meters, 3 decimals = mm

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(total_w) + "\" height=\"" +
       px(total_h) + "\" viewBox=\"0 0 " + px(total_w) + " " + px(total_h) + "\">\n";
  s += "<!-- vertices: active=" + std::to_string(n_active) +
       " deactivated=" + std::to_string(n_inactive) + " removed=" + std::to_string(n_removed) +
       " expansions=" + std::to_string(in.expansions) + " -->\n";
  if (!in.title.empty()) s += "<title>" + in.title + "</title>\n";
  s += "<rect width=\"" + px(total_w) + "\" height=\"" + px(total_h) + "\" fill=\"#ffffff\"/>\n";

  // Workspace group: y up, coordinates in meters.
  s += "<g transform=\"translate(" + px(margin) + "," + px(margin + hpx) + ") scale(" +
       px(scale) + ",-" + px(scale) + ")\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + m2(wm) + "\" height=\"" + m2(hm) +
       "\" fill=\"#f4f4f4\"/>\n";

  // Obstacles: one rect per horizontal run of occupied cells.
  const double cs = grid.cell_size();
  for (int iy = 0; iy < grid.height(); ++iy) {
    int ix = 0;
    while (ix < grid.width()) {
      if (!grid.occupied_cell(ix, iy)) {
        ++ix;
        continue;
      }
      int run = ix;
      while (run < grid.width() && grid.occupied_cell(run, iy)) ++run;
      s += "<rect x=\"" + m2(ix * cs) + "\" y=\"" + m2(iy * cs) + "\" width=\"" +
           m2((run - ix) * cs) + "\" height=\"" + m2(cs) + "\" fill=\"#1a1a1a\"/>\n";
      ix = run;
    }
  }

  // Vertices, pruned first so the surviving cloud draws on top.
  const double r = cs * 0.14;
  const auto circles = [&](VertexFate fate, const std::string& style) {
    bool any = false;
    for (const TraceNode& v : in.tree) {
      if (v.fate != fate) continue;
      if (!any) {
        s += "<g " + style + ">\n";
        any = true;
      }
      s += "<circle cx=\"" + m2(v.x) + "\" cy=\"" + m2(v.y) + "\" r=\"" + m2(r) + "\"/>\n";
    }
    if (any) s += "</g>\n";
  };
  circles(VertexFate::kRemoved, "fill=\"#d7d7d7\"");
  circles(VertexFate::kInactive, "fill=\"#3f6fbf\" fill-opacity=\"0.35\"");
  circles(VertexFate::kActive, "fill=\"#9e9e9e\"");

  if (!in.path.empty()) {
    s += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"" + m2(cs * 0.2) +
         "\" points=\"";
    for (std::size_t i = 0; i < in.path.size(); ++i) {
      if (i) s += ' ';
      s += m2(in.path[i][0]) + "," + m2(in.path[i][1]);
    }
    s += "\"/>\n";
  }

  s += "<circle cx=\"" + m2(in.goal.x) + "\" cy=\"" + m2(in.goal.y) + "\" r=\"" +
       m2(in.goal.radius) + "\" fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"" +
       m2(cs * 0.15) + "\"/>\n";
  s += "</g>\n";

  // Expansion bar under the map, in screen coordinates.
  const double bar_y = margin + hpx + 8.0;
  const double frac = in.budget == kUnlimited || in.budget == 0
                          ? 1.0
                          : std::min(1.0, static_cast<double>(in.expansions) /
                                              static_cast<double>(in.budget));
  s += "<rect x=\"" + px(margin) + "\" y=\"" + px(bar_y) + "\" width=\"" + px(wpx) +
       "\" height=\"10\" fill=\"#e0e0e0\"/>\n";
  s += "<rect x=\"" + px(margin) + "\" y=\"" + px(bar_y) + "\" width=\"" + px(wpx * frac) +
       "\" height=\"10\" fill=\"#4a4a4a\"/>\n";
  std::string label = "expansions: " + std::to_string(in.expansions);
  if (in.budget != kUnlimited) label += " / " + std::to_string(in.budget);
  s += "<text x=\"" + px(margin) + "\" y=\"" + px(bar_y - 2.0) +
       "\" font-family=\"monospace\" font-size=\"9\">" + label + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace ighastar
