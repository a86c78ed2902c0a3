#include "qrange/qmatrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qrange/error.hpp"

namespace qrange {

QMatrix::QMatrix(std::size_t n) : n_(n), entries_(n * n) { compute_flags(); }

QMatrix::QMatrix(std::size_t n, std::vector<Quaternion> row_major) : n_(n), entries_(std::move(row_major)) {
  if (entries_.size() != n * n) {
    throw InputError("QMatrix: expected " + std::to_string(n * n) + " entries, got " +
                     std::to_string(entries_.size()));
  }
  compute_flags();
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) : n_(rows.size()) {
  entries_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw InputError("QMatrix: rows must form a square matrix");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  compute_flags();
}

QMatrix QMatrix::identity(std::size_t n) {
  std::vector<Quaternion> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = Quaternion::real(1.0);
  return QMatrix(n, std::move(e));
}

QMatrix QMatrix::diagonal(std::span<const double> d) {
  const std::size_t n = d.size();
  std::vector<Quaternion> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = Quaternion::real(d[i]);
  return QMatrix(n, std::move(e));
}

QMatrix QMatrix::with_entry(std::size_t i, std::size_t j, const Quaternion& q) const {
  if (i >= n_ || j >= n_) throw InputError("QMatrix::with_entry: index out of range");
  auto e = entries_;
  e[i * n_ + j] = q;
  return QMatrix(n_, std::move(e));
}

void QMatrix::compute_flags() {
  max_norm_ = 0.0;
  for (const auto& q : entries_) {
    if (!std::isfinite(q.w) || !std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z)) {
      throw InputError("QMatrix: entries must be finite");
    }
    max_norm_ = std::max(max_norm_, q.norm());
  }
  const double zero = zero_threshold();
  upper_triangular_ = true;
  strictly_upper_ = true;
  real_diagonal_ = true;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j).norm() > zero) upper_triangular_ = false;
    if ((*this)(i, i).pure_norm() > zero) real_diagonal_ = false;
    if ((*this)(i, i).norm() > zero) strictly_upper_ = false;
  }
  strictly_upper_ = strictly_upper_ && upper_triangular_;
}

QMatrix QMatrix::adjoint() const {
  std::vector<Quaternion> e(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) e[j * n_ + i] = (*this)(i, j).conj();
  return QMatrix(n_, std::move(e));
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.n_ != b.n_) throw InputError("QMatrix product: size mismatch");
  const std::size_t n = a.n_;
  std::vector<Quaternion> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Quaternion& aik = a(i, k);
      if (aik == Quaternion{}) continue;
      for (std::size_t j = 0; j < n; ++j) e[i * n + j] += aik * b(k, j);
    }
  return QMatrix(n, std::move(e));
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.n_ != b.n_) throw InputError("QMatrix sum: size mismatch");
  auto e = a.entries_;
  for (std::size_t t = 0; t < e.size(); ++t) e[t] += b.entries_[t];
  return QMatrix(a.n_, std::move(e));
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.n_ != b.n_) throw InputError("QMatrix difference: size mismatch");
  auto e = a.entries_;
  for (std::size_t t = 0; t < e.size(); ++t) e[t] -= b.entries_[t];
  return QMatrix(a.n_, std::move(e));
}

CMatrix chi(const QMatrix& a) {
  const std::size_t n = a.size();
  CMatrix out(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Quaternion& q = a(i, j);
      const Complex a1{q.w, q.x};
      const Complex a2{q.y, q.z};
      out(i, j) = a1;
      out(i, n + j) = a2;
      out(n + i, j) = -std::conj(a2);
      out(n + i, n + j) = std::conj(a1);
    }
  return out;
}

namespace {

// Smallest k with 2^k >= m, at least 1.
int doubling_steps(std::size_t m) {
  int k = 0;
  std::size_t p = 1;
  while (p < m) {
    p *= 2;
    ++k;
  }
  return std::max(k, 1);
}

}  // namespace

bool is_nilpotent(const QMatrix& a, double tol) {
  if (!(tol > 0.0)) throw InputError("is_nilpotent: tolerance must be positive");
  if (a.size() == 0) return true;
  const int steps = doubling_steps(a.size());
  QMatrix power = a;
  for (int s = 0; s < steps; ++s) power = power * power;
  const double bound = tol * std::pow(1.0 + a.max_entry_norm(), std::ldexp(1.0, steps));
  return power.max_entry_norm() <= bound;
}

bool is_nilpotent_via_chi(const QMatrix& a, double tol) {
  if (!(tol > 0.0)) throw InputError("is_nilpotent_via_chi: tolerance must be positive");
  if (a.size() == 0) return true;
  const int steps = doubling_steps(2 * a.size());
  CMatrix power = chi(a);
  for (int s = 0; s < steps; ++s) power = power * power;
  const double bound = tol * std::pow(1.0 + a.max_entry_norm(), std::ldexp(1.0, steps));
  return power.max_abs() <= bound;
}

QMatrix direct_sum(std::span<const QMatrix> blocks) {
  if (blocks.empty()) throw InputError("direct_sum: at least one block is required");
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  std::vector<Quaternion> e(n * n);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) e[(offset + i) * n + offset + j] = b(i, j);
    offset += b.size();
  }
  return QMatrix(n, std::move(e));
}

void validate_permutation(std::span<const std::size_t> p, std::size_t n) {
  if (p.size() != n) throw InputError("permutation length " + std::to_string(p.size()) + " != " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (std::size_t v : p) {
    if (v >= n || seen[v]) throw InputError("permutation is not a bijection of {0.." + std::to_string(n - 1) + "}");
    seen[v] = true;
  }
}

Permutation inverse_permutation(std::span<const std::size_t> p) {
  validate_permutation(p, p.size());
  Permutation inv(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) inv[p[k]] = k;
  return inv;
}

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = k;
  return p;
}

QMatrix permute(const QMatrix& a, std::span<const std::size_t> p) {
  validate_permutation(p, a.size());
  const std::size_t n = a.size();
  std::vector<Quaternion> e(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) e[k * n + l] = a(p[k], p[l]);
  return QMatrix(n, std::move(e));
}

QMatrix principal_submatrix(const QMatrix& a, std::span<const std::size_t> indices) {
  const std::size_t m = indices.size();
  std::vector<Quaternion> e(m * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l) {
      if (indices[k] >= a.size() || indices[l] >= a.size()) throw InputError("principal_submatrix: index out of range");
      e[k * m + l] = a(indices[k], indices[l]);
    }
  return QMatrix(m, std::move(e));
}

Quaternion quad_form_unchecked(const QMatrix& a, std::span<const Quaternion> x) noexcept {
  const std::size_t n = a.size();
  Quaternion sum;
  for (std::size_t i = 0; i < n; ++i) {
    Quaternion row;
    for (std::size_t j = 0; j < n; ++j) {
      const Quaternion& aij = a(i, j);
      if (aij == Quaternion{}) continue;
      row += aij * x[j];
    }
    sum += x[i].conj() * row;
  }
  return sum;
}

Quaternion quad_form(const QMatrix& a, std::span<const Quaternion> x) {
  if (x.size() != a.size()) throw InputError("quad_form: vector length does not match matrix size");
  if (std::abs(vector_norm(x) - 1.0) > 1e-10) throw InputError("quad_form: x must be a unit vector");
  return quad_form_unchecked(a, x);
}

double max_abs_diff(const QMatrix& a, const QMatrix& b) {
  if (a.size() != b.size()) throw InputError("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t t = 0; t < a.entries().size(); ++t) m = std::max(m, (a.entries()[t] - b.entries()[t]).norm());
  return m;
}

double max_pure_norm(const QMatrix& a) noexcept {
  double m = 0.0;
  for (const auto& q : a.entries()) m = std::max(m, q.pure_norm());
  return m;
}

std::uint64_t content_hash(const QMatrix& a) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(a.size());
  for (const auto& q : a.entries()) {
    for (double v : {q.w, q.x, q.y, q.z}) mix(std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v));
  }
  return h;
}

}  // namespace qrange
