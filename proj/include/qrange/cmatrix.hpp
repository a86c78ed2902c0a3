#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qrange {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t m) : m_(m), data_(m * m) {}
  CMatrix(std::size_t m, std::vector<Complex> row_major);

  static CMatrix identity(std::size_t m);

  std::size_t size() const noexcept { return m_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * m_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * m_ + j]; }
  std::span<const Complex> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  double max_abs() const noexcept;
  bool is_hermitian(double tol) const noexcept;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(Complex s, const CMatrix& a);

 private:
  std::size_t m_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |a_ij - b_ij|; matrices must have equal size.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// v* M v
Complex rayleigh(const CMatrix& m, std::span<const Complex> v);

}  // namespace qrange
