#pragma once

#include <cstddef>
#include <vector>

#include "qrange/qmatrix.hpp"
#include "qrange/rng.hpp"

namespace qrange {

/// Quaternion with norm uniform in [0.5, 1.5] and a uniform direction.
Quaternion random_entry(Rng& rng);

/// Nilpotent tree matrix on n vertices: vertex k attaches to a uniform earlier
/// vertex with a random orientation; optionally relabelled by a random permutation.
QMatrix random_nilpotent_tree(Rng& rng, std::size_t n, bool relabel = true);

/// 3 x 3 strictly upper triangular, exactly one of a12, a13, a23 zero.
QMatrix random_cyclefree3(Rng& rng);
/// 3 x 3 strictly upper triangular, all three entries nonzero.
QMatrix random_cyclic3(Rng& rng);
/// a23 = conj(a12) a13 s with s = +-uniform[0.5, 1.5], so the triple product is real.
QMatrix random_real_triple3(Rng& rng);
/// Cyclic with |pi_P(conj(a13) a12 a23)| >= min_pure.
QMatrix random_nonreal_triple3(Rng& rng, double min_pure = 0.1);

struct DPlusN {
  std::vector<double> d;  ///< uniform in [-1, 1]
  QMatrix n;              ///< nilpotent tree
  QMatrix a;              ///< D + N
};
DPlusN random_d_plus_n(Rng& rng, std::size_t n);

/// Unitary by Gram-Schmidt on Gaussian columns (right-module projections u (u* v)).
QMatrix random_unitary(Rng& rng, std::size_t n);

/// Random permutation of {0..n-1} (Fisher-Yates).
Permutation random_permutation(Rng& rng, std::size_t n);

}  // namespace qrange
