#include "qrange/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qrange/error.hpp"
#include "qrange/rng.hpp"

namespace qrange {

SymMatrix::SymMatrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) throw InputError("SymMatrix: entry count does not match dimension");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (data_[i * n + j] != data_[j * n + i]) throw InputError("SymMatrix: input is not symmetric");
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  data_[i * n_ + j] = v;
  data_[j * n_ + i] = v;
}

void SymMatrix::add(std::size_t i, std::size_t j, double v) {
  data_[i * n_ + j] += v;
  if (i != j) data_[j * n_ + i] += v;
}

void SymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    const double* row = &data_[i * n_];
    for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

double SymMatrix::quadratic(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += data_[i * n_ + j] * x[j];
    s += x[i] * row;
  }
  return s;
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> indices) const {
  SymMatrix out(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b) out.data_[a * indices.size() + b] = (*this)(indices[a], indices[b]);
  return out;
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::max_row_sum() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += std::abs(data_[i * n_ + j]);
    m = std::max(m, s);
  }
  return m;
}

std::vector<double> SymEigen::vector(std::size_t k) const {
  const std::size_t n = values.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = vectors[i * n + k];
  return v;
}

std::vector<Complex> HermitianEigen::vector(std::size_t k) const {
  const std::size_t n = values.size();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = vectors(i, k);
  return v;
}

namespace {

constexpr double kJacobiTolerance = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

inline double conj_of(double v) { return v; }
inline Complex conj_of(const Complex& v) { return std::conj(v); }
inline double real_of(double v) { return v; }
inline double real_of(const Complex& v) { return v.real(); }

template <class T>
struct JacobiResult {
  std::vector<double> values;
  std::vector<T> vectors;
  int sweeps = 0;
};

// Cyclic Jacobi on a Hermitian (or real symmetric) matrix stored row-major.
// Each rotation is J = diag(1, conj(e)) * [[c, s], [-s, c]] on the (p, q)
// plane, where e is the phase of a_pq; J* A J has a zero (p, q) entry.
template <class T>
JacobiResult<T> jacobi(std::vector<T> a, std::size_t n) {
  std::vector<T> v(n * n, T{});
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = T{1};

  double frob2 = 0.0;
  for (const auto& x : a) frob2 += std::norm(x);
  const double threshold = kJacobiTolerance * std::sqrt(frob2);

  int sweep = 0;
  for (; sweep < kJacobiMaxSweeps; ++sweep) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off2 += std::norm(a[i * n + j]);
    if (std::sqrt(off2) <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a[p * n + q];
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = real_of(a[p * n + p]);
        const double aqq = real_of(a[q * n + q]);
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const T e = apq / mag;
        const T ec = conj_of(e);

        // A <- A J
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a[k * n + p];
          const T akq = a[k * n + q];
          a[k * n + p] = c * akp - s * ec * akq;
          a[k * n + q] = s * akp + c * ec * akq;
        }
        // A <- J* A
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = a[p * n + k];
          const T aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * e * aqk;
          a[q * n + k] = s * apk + c * e * aqk;
        }
        a[p * n + q] = T{};
        a[q * n + p] = T{};
        a[p * n + p] = T{real_of(a[p * n + p])};
        a[q * n + q] = T{real_of(a[q * n + q])};
        // V <- V J
        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = v[k * n + p];
          const T vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * ec * vkq;
          v[k * n + q] = s * vkp + c * ec * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return real_of(a[x * n + x]) < real_of(a[y * n + y]); });
  JacobiResult<T> out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = real_of(a[order[k] * n + order[k]]);
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = v[i * n + order[k]];
  }
  return out;
}

}  // namespace

SymEigen eigh(const SymMatrix& m) {
  const std::size_t n = m.size();
  auto r = jacobi<double>(std::vector<double>(m.data().begin(), m.data().end()), n);
  return {std::move(r.values), std::move(r.vectors), r.sweeps};
}

HermitianEigen eigh(const CMatrix& m) {
  if (!m.is_hermitian(1e-10)) throw InputError("eigh: matrix is not Hermitian within 1e-10");
  const std::size_t n = m.size();
  std::vector<Complex> a(m.data().begin(), m.data().end());
  // Symmetrize away the sub-tolerance asymmetry so the rotations stay unitary-exact.
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = a[i * n + i].real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a[i * n + j] + std::conj(a[j * n + i]));
      a[i * n + j] = avg;
      a[j * n + i] = std::conj(avg);
    }
  }
  auto r = jacobi<Complex>(std::move(a), n);
  return {std::move(r.values), CMatrix(n, std::move(r.vectors)), r.sweeps};
}

// ---------------------------------------------------------------------------
// Perron

namespace {

std::vector<std::vector<std::size_t>> pattern_blocks(const SymMatrix& s) {
  const std::size_t n = s.size();
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> block{start}, stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        if (!seen[w] && s(v, w) != 0.0) {
          seen[w] = true;
          block.push_back(w);
          stack.push_back(w);
        }
      }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// Power iteration on S + c I with c = rho / 2 (rho = max row sum). For a
// connected nonnegative block the Perron root is simple and strictly exceeds
// |lambda + c| for every other eigenvalue, including -rho on bipartite blocks.
PerronResult block_perron(const SymMatrix& s) {
  const std::size_t m = s.size();
  PerronResult out;
  if (m == 1) {
    out.value = s(0, 0);
    out.vector = {1.0};
    return out;
  }
  const double shift = 0.5 * s.max_row_sum();
  std::vector<double> x(m, 1.0 / std::sqrt(static_cast<double>(m))), y(m);
  constexpr int kMaxIterations = 2000000;
  for (int it = 0; it < kMaxIterations; ++it) {
    s.multiply(x, y);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      y[i] += shift * x[i];
      norm2 += y[i] * y[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      y[i] *= inv;
      change = std::max(change, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (change <= 1e-15) break;
  }
  out.value = s.quadratic(x);
  out.vector = std::move(x);
  return out;
}

}  // namespace

PerronResult perron_max(const SymMatrix& s) {
  const std::size_t n = s.size();
  if (n == 0) throw InputError("perron_max: empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (s(i, i) != 0.0) throw InputError("perron_max: diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j)
      if (s(i, j) < 0.0) throw InputError("perron_max: entries must be nonnegative");
  }
  PerronResult best;
  best.value = -1.0;
  for (const auto& block : pattern_blocks(s)) {
    PerronResult r = block_perron(s.principal(block));
    if (r.value > best.value) {
      best.value = r.value;
      best.vector.assign(n, 0.0);
      for (std::size_t a = 0; a < block.size(); ++a) best.vector[block[a]] = std::max(0.0, r.vector[a]);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Constrained quadratic maximization

bool restore_level(std::span<double> beta, std::span<const double> d_vec, double d) {
  const std::size_t n = beta.size();
  double scale = 1.0;
  for (double v : d_vec) scale = std::max(scale, 1.0 + std::abs(v));
  const double target_tol = 1e-15 * scale;
  for (std::size_t round = 0; round < 2 * n + 8; ++round) {
    double g = 0.0;
    for (std::size_t i = 0; i < n; ++i) g += d_vec[i] * beta[i] * beta[i];
    const double excess = g - d;
    if (std::abs(excess) <= target_tol) return true;
    const bool lower = excess > 0.0;  // move mass toward smaller d_i

    // Prefer the pair with the fastest rate of change that can absorb the
    // whole excess; otherwise empty the pair with the largest capacity.
    std::size_t best_p = n, best_q = n, cap_p = n, cap_q = n;
    double best_rate = -1.0, best_cap = -1.0;
    for (std::size_t p = 0; p < n; ++p) {
      if (beta[p] <= 0.0) continue;
      for (std::size_t q = 0; q < n; ++q) {
        const double gap = lower ? d_vec[p] - d_vec[q] : d_vec[q] - d_vec[p];
        if (gap <= 0.0) continue;
        const double capacity = beta[p] * beta[p] * gap;
        if (capacity >= std::abs(excess)) {
          const double rate = beta[p] * beta[q] * gap;
          if (rate > best_rate) {
            best_rate = rate;
            best_p = p;
            best_q = q;
          }
        }
        if (capacity > best_cap) {
          best_cap = capacity;
          cap_p = p;
          cap_q = q;
        }
      }
    }
    if (best_p < n) {
      const double gap = std::abs(d_vec[best_p] - d_vec[best_q]);
      const double delta = std::abs(excess) / gap;
      const double r2 = beta[best_p] * beta[best_p] + beta[best_q] * beta[best_q];
      const double bp2 = std::max(0.0, beta[best_p] * beta[best_p] - delta);
      beta[best_p] = std::sqrt(bp2);
      beta[best_q] = std::sqrt(std::max(0.0, r2 - bp2));
    } else if (cap_p < n) {
      beta[cap_q] = std::sqrt(beta[cap_p] * beta[cap_p] + beta[cap_q] * beta[cap_q]);
      beta[cap_p] = 0.0;
    } else {
      return false;
    }
  }
  double g = 0.0;
  for (std::size_t i = 0; i < n; ++i) g += d_vec[i] * beta[i] * beta[i];
  return std::abs(g - d) <= 1e-13 * scale;
}

namespace {

struct Ascent {
  const SymMatrix& s;
  std::span<const double> d_vec;  // empty: no level constraint
  double level = 0.0;
  int max_iterations = 0;

  double objective(std::span<const double> b) const { return 0.5 * s.quadratic(b); }

  bool retract(std::vector<double>& y) const {
    double norm2 = 0.0;
    for (double& v : y) {
      v = std::abs(v);
      norm2 += v * v;
    }
    if (norm2 == 0.0) return false;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : y) v *= inv;
    if (d_vec.empty()) return true;
    return restore_level(y, d_vec, level);
  }

  // Riemannian gradient ascent with Armijo backtracking from step 1.
  double run(std::vector<double>& b) const {
    const std::size_t n = b.size();
    std::vector<double> grad(n), normal(n), y(n);
    double value = objective(b);
    const double grad_floor = 1e-13 * (1.0 + s.max_abs());
    for (int it = 0; it < max_iterations; ++it) {
      s.multiply(b, grad);
      // Tangent space of the sphere (and level set) at b: orthogonal to b and D b.
      double gb = std::inner_product(grad.begin(), grad.end(), b.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) grad[i] -= gb * b[i];
      if (!d_vec.empty()) {
        double db = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          normal[i] = d_vec[i] * b[i];
          db += normal[i] * b[i];
        }
        double nn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          normal[i] -= db * b[i];
          nn += normal[i] * normal[i];
        }
        if (nn > 1e-28) {
          const double gn = std::inner_product(grad.begin(), grad.end(), normal.begin(), 0.0) / nn;
          for (std::size_t i = 0; i < n; ++i) grad[i] -= gn * normal[i];
        }
      }
      const double xi2 = std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0);
      if (std::sqrt(xi2) <= grad_floor) break;

      bool accepted = false;
      for (double t = 1.0; t > 1e-18; t *= 0.5) {
        for (std::size_t i = 0; i < n; ++i) y[i] = b[i] + t * grad[i];
        if (!retract(y)) continue;
        const double candidate = objective(y);
        if (candidate >= value + 1e-4 * t * xi2) {
          const double gain = candidate - value;
          b.swap(y);
          value = candidate;
          accepted = true;
          if (gain <= 1e-17 * (1.0 + std::abs(value))) return value;
          break;
        }
      }
      if (!accepted) break;
    }
    return value;
  }
};

QuadMaxResult multistart(const SymMatrix& s, std::span<const double> d_vec, double level,
                         const QuadMaxOptions& options) {
  const std::size_t n = s.size();
  Ascent ascent{s, d_vec, level, options.max_iterations};
  Rng rng(options.seed);
  QuadMaxResult best;
  best.value = -1.0;
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> b(n);
    if (r == 0) {
      std::fill(b.begin(), b.end(), 1.0);
    } else {
      for (double& v : b) v = rng.normal();
    }
    if (!ascent.retract(b)) continue;
    const double value = ascent.run(b);
    if (value > best.value) {
      best.value = value;
      best.beta = b;
    }
  }
  if (best.beta.empty()) throw InternalError("constrained_max_quadratic: no feasible start found");
  return best;
}

void check_nonnegative(const SymMatrix& s, const char* who) {
  for (double v : s.data())
    if (v < 0.0) throw InputError(std::string(who) + ": S must be entrywise nonnegative");
}

QuadMaxResult reduced_perron(const SymMatrix& s, const std::vector<std::size_t>& indices) {
  const std::size_t n = s.size();
  QuadMaxResult out;
  out.beta.assign(n, 0.0);
  if (indices.size() == 1) {
    out.beta[indices[0]] = 1.0;
    out.value = 0.5 * s(indices[0], indices[0]);
    return out;
  }
  const PerronResult p = perron_max(s.principal(indices));
  for (std::size_t a = 0; a < indices.size(); ++a) out.beta[indices[a]] = p.vector[a];
  out.value = 0.5 * p.value;
  return out;
}

}  // namespace

QuadMaxResult constrained_max_quadratic(const SymMatrix& s, std::span<const double> d_vec, double d,
                                        const QuadMaxOptions& options) {
  const std::size_t n = s.size();
  if (n == 0) throw InputError("constrained_max_quadratic: empty matrix");
  if (d_vec.size() != n) throw InputError("constrained_max_quadratic: d_vec length does not match S");
  check_nonnegative(s, "constrained_max_quadratic");
  const auto [lo_it, hi_it] = std::minmax_element(d_vec.begin(), d_vec.end());
  const double lo = *lo_it, hi = *hi_it;
  double scale = 1.0;
  for (double v : d_vec) scale = std::max(scale, 1.0 + std::abs(v));
  if (!std::isfinite(d) || d < lo - options.tol * scale || d > hi + options.tol * scale) {
    throw InputError("constrained_max_quadratic: level " + std::to_string(d) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  d = std::clamp(d, lo, hi);
  const double snap = 1e-14 * scale;

  std::vector<std::size_t> extremal;
  if (hi - lo <= snap) {
    // D = alpha I: the level set is the whole sphere.
    extremal.resize(n);
    std::iota(extremal.begin(), extremal.end(), 0);
    return reduced_perron(s, extremal);
  }
  if (d - lo <= snap || hi - d <= snap) {
    const double edge = (d - lo <= snap) ? lo : hi;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(d_vec[i] - edge) <= snap) extremal.push_back(i);
    return reduced_perron(s, extremal);
  }
  QuadMaxResult r = multistart(s, d_vec, d, options);
  double g = 0.0;
  for (std::size_t i = 0; i < n; ++i) g += d_vec[i] * r.beta[i] * r.beta[i];
  if (std::abs(g - d) > options.tol * scale) throw InternalError("constrained_max_quadratic: maximizer left the level set");
  return r;
}

QuadMaxResult sphere_max_quadratic(const SymMatrix& s, const QuadMaxOptions& options) {
  if (s.size() == 0) throw InputError("sphere_max_quadratic: empty matrix");
  check_nonnegative(s, "sphere_max_quadratic");
  return multistart(s, {}, 0.0, options);
}

}  // namespace qrange
