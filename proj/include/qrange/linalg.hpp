#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qrange/cmatrix.hpp"

namespace qrange {

/// Real symmetric matrix; symmetry is exact by construction.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}
  /// Throws InputError unless row_major is exactly symmetric.
  SymMatrix(std::size_t n, std::vector<double> row_major);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  /// Sets (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v);
  /// Adds v to (i, j) and (j, i) (once if i == j).
  void add(std::size_t i, std::size_t j, double v);
  std::span<const double> data() const noexcept { return data_; }

  void multiply(std::span<const double> x, std::span<double> y) const;
  double quadratic(std::span<const double> x) const;
  SymMatrix principal(std::span<const std::size_t> indices) const;
  double max_abs() const noexcept;
  /// Largest absolute row sum, an upper bound on the spectral radius.
  double max_row_sum() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct SymEigen {
  std::vector<double> values;   ///< ascending
  std::vector<double> vectors;  ///< row-major n x n; column k pairs with values[k]
  int sweeps = 0;

  std::vector<double> vector(std::size_t k) const;
};

struct HermitianEigen {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< column k pairs with values[k]
  int sweeps = 0;

  std::vector<Complex> vector(std::size_t k) const;
};

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius mass drops below
/// 1e-13 times the Frobenius norm of the input, or after 100 sweeps.
SymEigen eigh(const SymMatrix& m);
/// Complex Hermitian cyclic Jacobi; throws InputError if m is not Hermitian within 1e-10.
HermitianEigen eigh(const CMatrix& m);

struct PerronResult {
  double value = 0.0;
  std::vector<double> vector;  ///< unit, entrywise >= 0
};

/// Largest eigenvalue of a nonnegative symmetric matrix with zero diagonal and
/// a nonnegative unit eigenvector for it, by shifted power iteration on each
/// connected block of the sparsity pattern. For a disconnected pattern the
/// block with the largest value wins (first block on ties) and the vector is
/// zero outside it.
PerronResult perron_max(const SymMatrix& s);

struct QuadMaxOptions {
  int restarts = 16;
  double tol = 1e-10;
  std::uint64_t seed = 0x5eed5eedULL;
  int max_iterations = 50000;
};

struct QuadMaxResult {
  double value = 0.0;         ///< 1/2 beta^T S beta
  std::vector<double> beta;   ///< unit, entrywise >= 0
};

/// max { 1/2 b^T S b : |b| = 1, sum_i d_i b_i^2 = d, b >= 0 } for S entrywise
/// nonnegative. Multi-start projected gradient ascent; each trial point is
/// reflected into the orthant, normalized and moved back onto the level set
/// by rotations in coordinate planes. At the extreme levels the problem is
/// the Perron problem on the extremal indices; if all d_i coincide the level
/// set is the whole sphere. Throws InputError if d lies outside [min d_i, max d_i].
QuadMaxResult constrained_max_quadratic(const SymMatrix& s, std::span<const double> d_vec, double d,
                                        const QuadMaxOptions& options = {});

/// The same ascent without the level constraint: max { 1/2 b^T S b : |b| = 1, b >= 0 }.
QuadMaxResult sphere_max_quadratic(const SymMatrix& s, const QuadMaxOptions& options = {});

/// Moves a nonnegative unit vector onto { sum_i d_i b_i^2 = d } by mass
/// transfers between coordinate pairs, preserving the norm. Returns false if
/// d is out of reach.
bool restore_level(std::span<double> beta, std::span<const double> d_vec, double d);

}  // namespace qrange
