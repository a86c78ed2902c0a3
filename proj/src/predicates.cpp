#include "qrange/predicates.hpp"

#include <string>

#include "qrange/error.hpp"
#include "qrange/linalg.hpp"
#include "qrange/range.hpp"

namespace qrange {

namespace {

struct Triangular3 {
  QMatrix t;
  Permutation p;
};

Triangular3 triangular_form(const QMatrix& a, double tol, const char* who) {
  if (a.size() != 3) throw InputError(std::string(who) + ": expected a 3 x 3 matrix, got " + std::to_string(a.size()) + " x " + std::to_string(a.size()));
  if (!is_nilpotent(a, tol)) throw PreconditionError("is_nilpotent", std::string(who) + " requires a nilpotent matrix");
  if (a.strictly_upper_triangular()) return {a, identity_permutation(3)};
  Permutation p = triangularizing_permutation(a);
  QMatrix t = permute(a, p);
  if (!t.strictly_upper_triangular()) throw InternalError(std::string(who) + ": permutation did not triangularize");
  return {std::move(t), std::move(p)};
}

}  // namespace

bool is_real_within(const Quaternion& t, double tol) { return t.pure_norm() <= tol * (1.0 + t.norm()); }

Classification3 classify3(const QMatrix& a, double tol) {
  Triangular3 tri = triangular_form(a, tol, "classify3");
  const QMatrix& t = tri.t;
  Classification3 c;
  c.permutation = std::move(tri.p);
  c.cycle_free = is_cycle_free(build_graph(t));
  c.triple_product = t(0, 2).conj() * t(0, 1) * t(1, 2);
  c.circular = c.cycle_free;
  // A zero entry means no cycle, and then the range is a disk.
  c.convex = c.cycle_free || is_real_within(c.triple_product, tol);
  const bool all_nonzero = !t.is_zero_entry(0, 1) && !t.is_zero_entry(0, 2) && !t.is_zero_entry(1, 2);
  c.realifiable = all_nonzero && is_real_within(c.triple_product, tol);
  return c;
}

Realification realifying_unitary(const QMatrix& a, double tol) {
  if (a.size() != 3) throw InputError("realifying_unitary: expected a 3 x 3 matrix");
  if (!a.strictly_upper_triangular()) {
    throw PreconditionError("strictly_upper_triangular", "realifying_unitary needs the triangular form");
  }
  static constexpr std::pair<std::size_t, std::size_t> kEntries[] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto [i, j] : kEntries) {
    if (a.is_zero_entry(i, j)) {
      throw PreconditionError("nonzero_entries",
                              "a" + std::to_string(i + 1) + std::to_string(j + 1) + " is zero");
    }
  }
  const Quaternion triple = a(0, 2).conj() * a(0, 1) * a(1, 2);
  if (!is_real_within(triple, tol)) {
    throw PreconditionError("real_triple_product", "conj(a13) a12 a23 has a nonzero pure part");
  }
  const Quaternion z12 = unit_direction(a(0, 1));
  const Quaternion z13 = unit_direction(a(0, 2));
  const QMatrix u{{Quaternion::real(1.0), {}, {}}, {{}, z12.conj(), {}}, {{}, {}, z13.conj()}};
  return {u, u.adjoint() * a * u};
}

DirectionClass max_direction_class(const QMatrix& a, double tol) {
  const Triangular3 tri = triangular_form(a, tol, "max_direction_class");
  const QMatrix& t = tri.t;
  static constexpr std::pair<std::size_t, std::size_t> kEntries[] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto [i, j] : kEntries) {
    if (t.is_zero_entry(i, j)) {
      throw PreconditionError("nonzero_entries",
                              "a" + std::to_string(i + 1) + std::to_string(j + 1) + " is zero in the triangular form");
    }
  }
  DirectionClass out;
  out.representative = unit_direction(t(0, 2)).conj() * unit_direction(t(0, 1)) * unit_direction(t(1, 2));
  out.modulus = 0.5 * perron_max(coupling_matrix(t)).value;
  return out;
}

}  // namespace qrange
