#include "qrange/instances.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "qrange/error.hpp"

namespace qrange {

Quaternion random_entry(Rng& rng) { return rng.uniform(0.5, 1.5) * random_unit_quaternion(rng); }

Permutation random_permutation(Rng& rng, std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[rng.below(k)]);
  return p;
}

QMatrix random_nilpotent_tree(Rng& rng, std::size_t n, bool relabel) {
  if (n == 0) throw InputError("random_nilpotent_tree: n must be positive");
  // Any orientation of a tree is acyclic, so the matrix is nilpotent.
  std::vector<Quaternion> e(n * n);
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t parent = rng.below(k);
    const Quaternion q = random_entry(rng);
    if (rng.coin()) {
      e[parent * n + k] = q;
    } else {
      e[k * n + parent] = q;
    }
  }
  QMatrix a(n, std::move(e));
  if (!relabel) return a;
  return permute(a, random_permutation(rng, n));
}

namespace {

QMatrix upper3(const Quaternion& a12, const Quaternion& a13, const Quaternion& a23) {
  return QMatrix{{{}, a12, a13}, {{}, {}, a23}, {{}, {}, {}}};
}

}  // namespace

QMatrix random_cyclefree3(Rng& rng) {
  const std::size_t zero = rng.below(3);
  Quaternion e[3];
  for (std::size_t k = 0; k < 3; ++k) e[k] = k == zero ? Quaternion{} : random_entry(rng);
  return upper3(e[0], e[1], e[2]);
}

QMatrix random_cyclic3(Rng& rng) {
  const Quaternion a12 = random_entry(rng);
  const Quaternion a13 = random_entry(rng);
  const Quaternion a23 = random_entry(rng);
  return upper3(a12, a13, a23);
}

QMatrix random_real_triple3(Rng& rng) {
  const Quaternion a12 = random_entry(rng);
  const Quaternion a13 = random_entry(rng);
  const double s = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.5, 1.5);
  return upper3(a12, a13, s * (a12.conj() * a13));
}

QMatrix random_nonreal_triple3(Rng& rng, double min_pure) {
  for (;;) {
    QMatrix a = random_cyclic3(rng);
    const Quaternion t = a(0, 2).conj() * a(0, 1) * a(1, 2);
    if (t.pure_norm() >= min_pure) return a;
  }
}

DPlusN random_d_plus_n(Rng& rng, std::size_t n) {
  DPlusN out;
  out.n = random_nilpotent_tree(rng, n);
  out.d.resize(n);
  for (double& v : out.d) v = rng.uniform(-1.0, 1.0);
  out.a = QMatrix::diagonal(out.d) + out.n;
  return out;
}

QMatrix random_unitary(Rng& rng, std::size_t n) {
  if (n == 0) throw InputError("random_unitary: n must be positive");
  std::vector<QVector> cols;
  while (cols.size() < n) {
    QVector v(n);
    for (auto& q : v) q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : cols) {
        Quaternion c;
        for (std::size_t i = 0; i < n; ++i) c += u[i].conj() * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= u[i] * c;
      }
    }
    const double norm = vector_norm(v);
    if (norm < 1e-8) continue;
    for (auto& q : v) q = q / norm;
    cols.push_back(std::move(v));
  }
  std::vector<Quaternion> e(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) e[i * n + j] = cols[j][i];
  return QMatrix(n, std::move(e));
}

}  // namespace qrange
