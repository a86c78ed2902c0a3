#include "qrange/rng.hpp"

#include <cmath>
#include <numbers>

namespace qrange {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  // 1 - uniform() lies in (0, 1], so the log is finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_normal_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

std::size_t Rng::below(std::size_t n) {
  if (n <= 1) return 0;
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return static_cast<std::size_t>(v % n);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void draw_unit_vector(Rng& rng, std::span<Quaternion> out) {
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& q : out) {
      q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
      norm2 += q.norm2();
    }
  } while (norm2 == 0.0);
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& q : out) q *= scale;
}

Quaternion random_unit_quaternion(Rng& rng) {
  Quaternion q;
  draw_unit_vector(rng, std::span<Quaternion>(&q, 1));
  return q;
}

Quaternion random_unit_pure(Rng& rng) {
  double x = 0.0, y = 0.0, z = 0.0, n2 = 0.0;
  do {
    x = rng.normal();
    y = rng.normal();
    z = rng.normal();
    n2 = x * x + y * y + z * z;
  } while (n2 == 0.0);
  const double s = 1.0 / std::sqrt(n2);
  return {0.0, x * s, y * s, z * s};
}

}  // namespace qrange
