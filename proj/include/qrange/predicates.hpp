#pragma once

#include "qrange/graph.hpp"
#include "qrange/qmatrix.hpp"
#include "qrange/quaternion.hpp"

namespace qrange {

/// Shape of the numerical range of a 3 x 3 nilpotent matrix.
struct Classification3 {
  bool cycle_free = false;
  Quaternion triple_product;  ///< conj(a13) a12 a23 in the triangular form
  bool circular = false;
  bool convex = false;
  bool realifiable = false;  ///< all of a12, a13, a23 nonzero and the triple product real
  Permutation permutation;   ///< brings A to strictly upper triangular form
};

/// |pi_P(t)| <= tol (1 + |t|)
bool is_real_within(const Quaternion& t, double tol);

/// Permuted to strictly upper triangular form first when needed. Throws
/// InputError for a wrong shape and PreconditionError for a non-nilpotent
/// input or one that no permutation triangularizes.
Classification3 classify3(const QMatrix& a, double tol = 1e-10);

struct Realification {
  QMatrix u;  ///< diag(1, conj(z12), conj(z13)) with z_ij = a_ij / |a_ij|
  QMatrix r;  ///< U* A U, entrywise real
};

/// Requires a strictly upper triangular 3 x 3 matrix with nonzero a12, a13,
/// a23 and a real triple product; PreconditionError names the failed condition.
Realification realifying_unitary(const QMatrix& a, double tol = 1e-10);

struct DirectionClass {
  Quaternion representative;  ///< conj(w13) w12 w23, w_ij = a_ij / |a_ij|
  double modulus = 0.0;       ///< max sum_{i<j} b_i b_j |a_ij| over the nonnegative unit sphere
};

/// Similarity class along which the largest modulus of the range is attained.
/// Permutes to triangular form first when needed; throws PreconditionError if an entry is zero.
DirectionClass max_direction_class(const QMatrix& a, double tol = 1e-10);

}  // namespace qrange
