#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ighastar/util/check.hpp"

namespace ighastar {

/// Ordered set of grid resolutions, coarsest first. Every level must be
/// strictly finer than the previous one in every dimension.
template <std::size_t Dims>
class ResolutionSchedule {
 public:
  using Cells = std::array<double, Dims>;

  explicit ResolutionSchedule(std::vector<Cells> levels) : levels_(std::move(levels)) {
    IGH_CHECK(!levels_.empty(), "schedule needs at least one level");
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      for (std::size_t d = 0; d < Dims; ++d) {
        IGH_CHECK(levels_[l][d] > 0.0, "cell sizes must be positive");
        if (l > 0)
          IGH_CHECK(levels_[l][d] < levels_[l - 1][d],
                    "each level must be strictly finer than the previous");
      }
    }
  }

  /// Geometric schedule: level l uses base * factor^l, factor in (0, 1).
  static ResolutionSchedule geometric(const Cells& base, double factor, int level_count) {
    IGH_CHECK(factor > 0.0 && factor < 1.0, "refinement factor must be in (0, 1)");
    IGH_CHECK(level_count >= 1, "schedule needs at least one level");
    std::vector<Cells> levels(static_cast<std::size_t>(level_count));
    double scale = 1.0;
    for (int l = 0; l < level_count; ++l) {
      for (std::size_t d = 0; d < Dims; ++d)
        levels[static_cast<std::size_t>(l)][d] = base[d] * scale;
      scale *= factor;
    }
    return ResolutionSchedule(std::move(levels));
  }

  int level_count() const { return static_cast<int>(levels_.size()); }
  int finest_level() const { return level_count() - 1; }
  const Cells& cells(int level) const {
    IGH_CHECK(level >= 0 && level < level_count(), "level out of range");
    return levels_[static_cast<std::size_t>(level)];
  }

 private:
  std::vector<Cells> levels_;
};

/// Maps continuous coordinates to per-dimension cell indices via floor(x / cell).
/// Angular dimensions must already be wrapped into [0, 2*pi) by the domain.
template <std::size_t Dims>
std::array<std::int32_t, Dims> discretize(const std::array<double, Dims>& coords,
                                          const std::array<double, Dims>& cells) {
  std::array<std::int32_t, Dims> out{};
  for (std::size_t d = 0; d < Dims; ++d) {
    double c = std::floor(coords[d] / cells[d]);
    IGH_CHECK(c >= -32768.0 && c <= 32767.0, "cell index out of packable range");
    out[d] = static_cast<std::int32_t>(c);
  }
  return out;
}

/// Packs up to four 16-bit signed cell indices into one exact 64-bit key.
/// No hashing is involved, so distinct cells never collide.
template <std::size_t Dims>
std::uint64_t pack_cell_key(const std::array<std::int32_t, Dims>& cell) {
  static_assert(Dims >= 1 && Dims <= 4, "cell keys support 1..4 dimensions");
  std::uint64_t key = 0;
  for (std::size_t d = 0; d < Dims; ++d) {
    const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(cell[d]));
    key |= static_cast<std::uint64_t>(u) << (16 * d);
  }
  return key;
}

template <std::size_t Dims>
std::uint64_t cell_key(const std::array<double, Dims>& coords,
                       const std::array<double, Dims>& cells) {
  return pack_cell_key(discretize(coords, cells));
}

inline double wrap_angle(double theta) {
  constexpr double kTau = 6.283185307179586476925286766559;
  double t = std::fmod(theta, kTau);
  if (t < 0.0) t += kTau;
  if (t >= kTau) t = 0.0;  // guard against fmod landing exactly on 2*pi
  return t;
}

}  // namespace ighastar
