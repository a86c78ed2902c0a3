#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "qrange/quaternion.hpp"

namespace qrange {

/// Seedable generator with platform-independent output: the engine is
/// mt19937_64 (bit-exact by the standard) and the distributions are
/// implemented here rather than taken from <random>, whose algorithms are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Independent stream seed for sub-task `stream` of a run seeded with `master` (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Fills `out` with a uniform point of the unit sphere in H^n, n = out.size().
void draw_unit_vector(Rng& rng, std::span<Quaternion> out);

Quaternion random_unit_quaternion(Rng& rng);

/// Uniform unit pure quaternion (a point of S^2 in span{i, j, k}).
Quaternion random_unit_pure(Rng& rng);

}  // namespace qrange
