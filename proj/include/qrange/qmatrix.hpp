#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qrange/cmatrix.hpp"
#include "qrange/quaternion.hpp"

namespace qrange {

/// p[k] is the original index placed at position k, so permute(A, p)(k, l) = A(p[k], p[l]).
using Permutation = std::vector<std::size_t>;

/// Dense n x n quaternionic matrix. Immutable; the structural flags are
/// computed once at construction against the scale-aware zero threshold.
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(std::size_t n);
  QMatrix(std::size_t n, std::vector<Quaternion> row_major);
  QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(std::span<const double> d);

  std::size_t size() const noexcept { return n_; }
  const Quaternion& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const Quaternion> entries() const noexcept { return entries_; }

  /// Copy with one entry replaced.
  QMatrix with_entry(std::size_t i, std::size_t j, const Quaternion& q) const;

  bool upper_triangular() const noexcept { return upper_triangular_; }
  bool strictly_upper_triangular() const noexcept { return strictly_upper_; }
  bool real_diagonal() const noexcept { return real_diagonal_; }

  double max_entry_norm() const noexcept { return max_norm_; }
  /// Entries with norm at or below this count as zero: 1e-12 (1 + max entry norm).
  double zero_threshold() const noexcept { return 1e-12 * (1.0 + max_norm_); }
  bool is_zero_entry(std::size_t i, std::size_t j) const { return (*this)(i, j).norm() <= zero_threshold(); }

  QMatrix adjoint() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) { return a.n_ == b.n_ && a.entries_ == b.entries_; }

 private:
  void compute_flags();

  std::size_t n_ = 0;
  std::vector<Quaternion> entries_;
  bool upper_triangular_ = true;
  bool strictly_upper_ = true;
  bool real_diagonal_ = true;
  double max_norm_ = 0.0;
};

/// Complex adjoint [[A1, A2], [-conj(A2), conj(A1)]] with A = A1 + A2 j,
/// A1 = w + x i and A2 = y + z i entrywise.
CMatrix chi(const QMatrix& a);

/// A^m = 0 for some m, tested on A^(2^k), 2^k >= n, against tol (1 + max|a_ij|)^(2^k).
bool is_nilpotent(const QMatrix& a, double tol = 1e-10);
/// Same test through chi(A)^(2^k), 2^k >= 2n. Debug route; must agree with is_nilpotent.
bool is_nilpotent_via_chi(const QMatrix& a, double tol = 1e-10);

QMatrix direct_sum(std::span<const QMatrix> blocks);

/// Throws InputError unless p is a bijection of {0..n-1}.
void validate_permutation(std::span<const std::size_t> p, std::size_t n);
Permutation inverse_permutation(std::span<const std::size_t> p);
Permutation identity_permutation(std::size_t n);

/// P^T A P.
QMatrix permute(const QMatrix& a, std::span<const std::size_t> p);

/// Principal submatrix on the given (ordered) index set.
QMatrix principal_submatrix(const QMatrix& a, std::span<const std::size_t> indices);

/// x* A x = sum_ij conj(x_i) a_ij x_j. Throws InputError if | |x| - 1 | > 1e-10.
Quaternion quad_form(const QMatrix& a, std::span<const Quaternion> x);
/// Same sum without the unit-norm check.
Quaternion quad_form_unchecked(const QMatrix& a, std::span<const Quaternion> x) noexcept;

double max_abs_diff(const QMatrix& a, const QMatrix& b);
/// Largest pure-part norm over all entries.
double max_pure_norm(const QMatrix& a) noexcept;

/// FNV-1a over the little-endian bytes of the entries; identifies the source of a sample cloud.
std::uint64_t content_hash(const QMatrix& a) noexcept;

}  // namespace qrange
