#include "qrange/quaternion.hpp"

#include <ostream>

#include "qrange/error.hpp"
#include "qrange/parallel.hpp"
#include "qrange/rng.hpp"

namespace qrange {

bool approx_equal(const Quaternion& a, const Quaternion& b, double tol) {
  return std::abs(a.w - b.w) <= tol && std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
         std::abs(a.z - b.z) <= tol;
}

bool similar(const Quaternion& a, const Quaternion& b, double tol) {
  if (!(tol > 0.0)) throw InputError("similar: tolerance must be positive");
  return std::abs(a.real_part() - b.real_part()) <= tol && std::abs(a.pure_norm() - b.pure_norm()) <= tol;
}

Quaternion unit_direction(const Quaternion& q) {
  const double n = q.norm();
  if (n == 0.0) return Quaternion::real(1.0);
  return q / n;
}

UpperBildPoint to_upper_bild(const Quaternion& q) noexcept { return {q.real_part(), q.pure_norm()}; }

double vector_norm(std::span<const Quaternion> v) noexcept {
  double s = 0.0;
  for (const auto& q : v) s += q.norm2();
  return std::sqrt(s);
}

std::vector<QVector> sample_unit_sphere(std::size_t dim, std::size_t count, std::uint64_t seed) {
  if (dim == 0 || count == 0) throw InputError("sample_unit_sphere: dim and count must be positive");
  std::vector<QVector> out(count, QVector(dim));
  for_each_chunk(count, kSampleChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng(derive_seed(seed, chunk));
    for (std::size_t s = begin; s < end; ++s) draw_unit_vector(rng, out[s]);
  });
  return out;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

}  // namespace qrange
