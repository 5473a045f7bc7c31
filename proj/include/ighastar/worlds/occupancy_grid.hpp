#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ighastar/util/check.hpp"

namespace ighastar {

/// Binary obstacle grid over a [0, width*cell] x [0, height*cell] workspace.
/// Row 0 is the y = 0 edge. Points outside the workspace count as occupied,
/// so a primitive leaving the map is rejected like any other collision.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double cell_size)
      : width_(width), height_(height), cell_size_(cell_size),
        cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {
    IGH_CHECK(width > 0 && height > 0 && cell_size > 0.0, "bad grid shape");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  double width_m() const { return width_ * cell_size_; }
  double height_m() const { return height_ * cell_size_; }

  bool occupied_cell(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix >= width_ || iy >= height_) return true;
    return cells_[index(ix, iy)] != 0;
  }

  bool occupied_at(double x, double y) const {
    if (x < 0.0 || y < 0.0 || x >= width_m() || y >= height_m()) return true;
    return occupied_cell(static_cast<int>(x / cell_size_), static_cast<int>(y / cell_size_));
  }

  bool in_bounds(double x, double y) const {
    return x >= 0.0 && y >= 0.0 && x < width_m() && y < height_m();
  }

  void set(int ix, int iy, bool occupied) {
    IGH_CHECK(ix >= 0 && iy >= 0 && ix < width_ && iy < height_, "cell out of range");
    cells_[index(ix, iy)] = occupied ? 1 : 0;
  }

  bool operator==(const OccupancyGrid& o) const = default;

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(ix);
  }

  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 0.0;
  std::vector<std::uint8_t> cells_;
};

}  // namespace ighastar
