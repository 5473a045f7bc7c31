#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ighastar/util/check.hpp"

namespace ighastar {

/// Height field over a [0, width*cell] x [0, height*cell] workspace with a
/// derived traversability mask and a roughness field. A cell is an obstacle
/// when the height difference to some 4-neighbor exceeds the step threshold
/// or its grade exceeds the slope threshold. Roughness is the mean absolute
/// grade to the 4-neighbors and feeds the time-cost penalty of the
/// kinodynamic domain.
class ElevationMap {
 public:
  ElevationMap() = default;
  ElevationMap(int width, int height, double cell_size)
      : width_(width), height_(height), cell_size_(cell_size),
        heights_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0.0f) {
    IGH_CHECK(width > 0 && height > 0 && cell_size > 0.0, "bad map shape");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  double width_m() const { return width_ * cell_size_; }
  double height_m() const { return height_ * cell_size_; }

  float height_cell(int ix, int iy) const { return heights_[index(ix, iy)]; }
  void set_height(int ix, int iy, float h) {
    IGH_CHECK(ix >= 0 && iy >= 0 && ix < width_ && iy < height_, "cell out of range");
    heights_[index(ix, iy)] = h;
  }
  const std::vector<float>& heights() const { return heights_; }
  std::vector<float>& heights() { return heights_; }

  /// Derives the obstacle mask and roughness field. Must run before the map
  /// is used for validity or cost queries.
  void analyze(double slope_threshold, double step_threshold) {
    mask_.assign(heights_.size(), 0);
    rough_.assign(heights_.size(), 0.0f);
    for (int iy = 0; iy < height_; ++iy) {
      for (int ix = 0; ix < width_; ++ix) {
        const float h = height_cell(ix, iy);
        double max_step = 0.0;
        double grade_sum = 0.0;
        int neighbors = 0;
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = ix + dx[k];
          const int ny = iy + dy[k];
          if (nx < 0 || ny < 0 || nx >= width_ || ny >= height_) continue;
          const double dh = std::abs(static_cast<double>(height_cell(nx, ny)) - h);
          max_step = std::max(max_step, dh);
          grade_sum += dh / cell_size_;
          ++neighbors;
        }
        const double grade = neighbors > 0 ? grade_sum / neighbors : 0.0;
        rough_[index(ix, iy)] = static_cast<float>(grade);
        if (max_step > step_threshold || max_step / cell_size_ > slope_threshold)
          mask_[index(ix, iy)] = 1;
      }
    }
    analyzed_ = true;
  }

  bool analyzed() const { return analyzed_; }

  bool occupied_at(double x, double y) const {
    IGH_CHECK(analyzed_, "elevation map used before analyze()");
    if (x < 0.0 || y < 0.0 || x >= width_m() || y >= height_m()) return true;
    return mask_[index(static_cast<int>(x / cell_size_), static_cast<int>(y / cell_size_))] != 0;
  }

  double roughness_at(double x, double y) const {
    IGH_CHECK(analyzed_, "elevation map used before analyze()");
    if (x < 0.0 || y < 0.0 || x >= width_m() || y >= height_m()) return 0.0;
    return rough_[index(static_cast<int>(x / cell_size_), static_cast<int>(y / cell_size_))];
  }

  bool in_bounds(double x, double y) const {
    return x >= 0.0 && y >= 0.0 && x < width_m() && y < height_m();
  }

  bool same_heights(const ElevationMap& o) const {
    return width_ == o.width_ && height_ == o.height_ && cell_size_ == o.cell_size_ &&
           heights_ == o.heights_;
  }

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(ix);
  }

  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 0.0;
  std::vector<float> heights_;
  std::vector<std::uint8_t> mask_;
  std::vector<float> rough_;
  bool analyzed_ = false;
};

}  // namespace ighastar
