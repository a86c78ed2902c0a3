#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace qrange {

/// Absolute tolerance for algebraic identities on unit-scale operands.
inline constexpr double kDefaultTolerance = 1e-12;

/// q = w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Quaternion real(double v) noexcept { return {v, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_i() noexcept { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() noexcept { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() noexcept { return {0.0, 0.0, 0.0, 1.0}; }

  /// pi_R(q)
  constexpr double real_part() const noexcept { return w; }
  /// pi_P(q)
  constexpr Quaternion pure_part() const noexcept { return {0.0, x, y, z}; }
  constexpr Quaternion conj() const noexcept { return {w, -x, -y, -z}; }

  constexpr double norm2() const noexcept { return w * w + x * x + y * y + z * z; }
  double norm() const noexcept { return std::sqrt(norm2()); }
  double pure_norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

  constexpr Quaternion& operator+=(const Quaternion& o) noexcept {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) noexcept {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) noexcept {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) noexcept { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) noexcept { return a -= b; }
  friend constexpr Quaternion operator-(const Quaternion& a) noexcept { return {-a.w, -a.x, -a.y, -a.z}; }
  friend constexpr Quaternion operator*(Quaternion a, double s) noexcept { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) noexcept { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, double s) noexcept { return a *= (1.0 / s); }

  /// Hamilton product.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) noexcept {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion mul(const Quaternion& a, const Quaternion& b) noexcept { return a * b; }

/// Euclidean inner product on R^4, i.e. Re(a* b).
constexpr double dot(const Quaternion& a, const Quaternion& b) noexcept {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Fieldwise comparison; -0 and +0 compare equal.
bool approx_equal(const Quaternion& a, const Quaternion& b, double tol = kDefaultTolerance);

/// a ~ b iff they share the real part and the pure-part norm. Throws InputError if tol <= 0.
bool similar(const Quaternion& a, const Quaternion& b, double tol = kDefaultTolerance);

/// q / |q|, or 1 for q = 0.
Quaternion unit_direction(const Quaternion& q);

/// Canonical representative of [q] in the closed upper half plane.
struct UpperBildPoint {
  double re = 0.0;
  double im = 0.0;  ///< >= 0

  double modulus() const noexcept { return std::hypot(re, im); }
  friend constexpr bool operator==(const UpperBildPoint&, const UpperBildPoint&) = default;
};

UpperBildPoint to_upper_bild(const Quaternion& q) noexcept;

/// re + im i
constexpr Quaternion from_upper_bild(const UpperBildPoint& p) noexcept { return {p.re, p.im, 0.0, 0.0}; }

/// Vector in H^n (a right H-module; scalars act on the right).
using QVector = std::vector<Quaternion>;

double vector_norm(std::span<const Quaternion> v) noexcept;

/// Uniform samples on the unit sphere of H^dim (the (4 dim - 1)-sphere), reproducible for a seed.
std::vector<QVector> sample_unit_sphere(std::size_t dim, std::size_t count, std::uint64_t seed);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qrange
