#include "qrange/cmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "qrange/error.hpp"

namespace qrange {

CMatrix::CMatrix(std::size_t m, std::vector<Complex> row_major) : m_(m), data_(std::move(row_major)) {
  if (data_.size() != m * m) throw InputError("CMatrix: entry count does not match dimension");
}

CMatrix CMatrix::identity(std::size_t m) {
  CMatrix id(m);
  for (std::size_t i = 0; i < m; ++i) id(i, i) = 1.0;
  return id;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double CMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool CMatrix::is_hermitian(double tol) const noexcept {
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = i; j < m_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.m_ != b.m_) throw InputError("CMatrix product: size mismatch");
  const std::size_t m = a.m_;
  CMatrix out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < m; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.m_ != b.m_) throw InputError("CMatrix sum: size mismatch");
  CMatrix out = a;
  for (std::size_t t = 0; t < out.data_.size(); ++t) out.data_[t] += b.data_[t];
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.m_ != b.m_) throw InputError("CMatrix difference: size mismatch");
  CMatrix out = a;
  for (std::size_t t = 0; t < out.data_.size(); ++t) out.data_[t] -= b.data_[t];
  return out;
}

CMatrix operator*(Complex s, const CMatrix& a) {
  CMatrix out = a;
  for (auto& v : out.data_) v *= s;
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.size() != b.size()) throw InputError("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t t = 0; t < a.data().size(); ++t) m = std::max(m, std::abs(a.data()[t] - b.data()[t]));
  return m;
}

Complex rayleigh(const CMatrix& m, std::span<const Complex> v) {
  Complex s{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    Complex row{};
    for (std::size_t j = 0; j < m.size(); ++j) row += m(i, j) * v[j];
    s += std::conj(v[i]) * row;
  }
  return s;
}

}  // namespace qrange
