#pragma once

#include <cstdint>

namespace ighastar {

/// SplitMix64. Used everywhere randomness is needed so that generated worlds,
/// queries and bootstrap resamples are reproducible across platforms and
/// standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n). n must be > 0. Slight modulo bias is
  /// irrelevant here (n is tiny compared to 2^64) and keeps this branch-free.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream from a master seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  Rng r(master ^ (0x5851f42d4c957f2dULL * (stream + 1)));
  r.next_u64();
  return r.next_u64();
}

}  // namespace ighastar
