#include <doctest.h>

#include <cmath>
#include <vector>

#include "qrange/error.hpp"
#include "qrange/instances.hpp"
#include "qrange/predicates.hpp"
#include "qrange/range.hpp"
#include "qrange/rng.hpp"
#include "qrange/verify.hpp"

using namespace qrange;

namespace {

const Quaternion one = Quaternion::real(1.0);
const Quaternion i = Quaternion::unit_i();
const Quaternion j = Quaternion::unit_j();
const Quaternion k = Quaternion::unit_k();

QMatrix upper3(Quaternion a12, Quaternion a13, Quaternion a23) {
  return QMatrix{{{}, a12, a13}, {{}, {}, a23}, {{}, {}, {}}};
}

std::string predicate_of(auto&& call) {
  try {
    call();
  } catch (const PreconditionError& e) {
    return e.predicate();
  }
  return "";
}

}  // namespace

TEST_CASE("classification of the worked 3 x 3 examples") {
  const Classification3 c = classify3(fixture_convex_noncircular());
  CHECK(approx_equal(c.triple_product, -one));
  CHECK(c.convex);
  CHECK_FALSE(c.circular);
  CHECK_FALSE(c.cycle_free);
  CHECK(c.realifiable);

  const Classification3 free = classify3(upper3(i, {}, j));
  CHECK(free.cycle_free);
  CHECK(free.circular);
  CHECK(free.convex);
  CHECK_FALSE(free.realifiable);

  const Classification3 twisted = classify3(upper3(i, one, j));
  CHECK(approx_equal(twisted.triple_product, k));
  CHECK_FALSE(twisted.convex);
  CHECK_FALSE(twisted.circular);

  const Classification3 zero = classify3(QMatrix(3));
  CHECK(zero.cycle_free);
  CHECK(zero.circular);
  CHECK(zero.convex);
}

TEST_CASE("classification rejects bad shapes") {
  CHECK_THROWS_AS(classify3(QMatrix(2)), InputError);
  CHECK(predicate_of([] { classify3(QMatrix::identity(3)); }) == "is_nilpotent");
}

TEST_CASE("lower triangular inputs are permuted first") {
  const QMatrix a = upper3(i, one, j);
  const Permutation p{2, 1, 0};
  const Classification3 c = classify3(permute(a, p));
  CHECK(permute(permute(a, p), c.permutation).strictly_upper_triangular());
  CHECK(similar(c.triple_product, k, 1e-12));
  CHECK_FALSE(c.convex);
}

TEST_CASE("classification is invariant under relabelling") {
  Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    QMatrix a;
    switch (t % 4) {
      case 0: a = random_cyclefree3(rng); break;
      case 1: a = random_cyclic3(rng); break;
      case 2: a = random_real_triple3(rng); break;
      default: a = random_nonreal_triple3(rng); break;
    }
    const Classification3 c = classify3(a);
    const Classification3 d = classify3(permute(a, random_permutation(rng, 3)));
    CHECK(c.cycle_free == d.cycle_free);
    CHECK(c.circular == d.circular);
    CHECK(c.convex == d.convex);
    CHECK(c.realifiable == d.realifiable);
    CHECK(similar(c.triple_product, d.triple_product, 1e-10 * (1.0 + c.triple_product.norm())));
  }
}

TEST_CASE("realifying unitary of the worked example") {
  const Realification r = realifying_unitary(fixture_convex_noncircular());
  CHECK(max_pure_norm(r.r) <= 1e-10);
  CHECK(approx_equal(r.u(0, 0), one));
  CHECK(approx_equal(r.u(1, 1), -i));
  CHECK(approx_equal(r.u(2, 2), -j));
  CHECK(std::abs(std::abs(r.r(0, 1).w) - 1.0) <= 1e-12);
  CHECK(std::abs(std::abs(r.r(0, 2).w) - 1.0) <= 1e-12);
  CHECK(std::abs(std::abs(r.r(1, 2).w) - 1.0) <= 1e-12);
  // signs: conj(r13) r12 r23 keeps the class of the triple product -1
  CHECK(r.r(0, 1).w * r.r(0, 2).w * r.r(1, 2).w == doctest::Approx(-1.0));
}

TEST_CASE("realifying unitary of real and real-triple inputs") {
  const QMatrix pos = upper3(Quaternion::real(1), Quaternion::real(2), Quaternion::real(3));
  const Realification a = realifying_unitary(pos);
  CHECK(max_abs_diff(a.u, QMatrix::identity(3)) <= 1e-15);
  CHECK(max_abs_diff(a.r, pos) <= 1e-15);

  const Realification b = realifying_unitary(upper3(2.0 * i, i, one));
  CHECK(max_pure_norm(b.r) <= 1e-10);
  CHECK(max_abs_diff(b.u.adjoint() * upper3(2.0 * i, i, one) * b.u, b.r) <= 1e-12);
}

TEST_CASE("realifying unitary preconditions") {
  CHECK(predicate_of([] { realifying_unitary(upper3(i, {}, j)); }) == "nonzero_entries");
  CHECK(predicate_of([] { realifying_unitary(upper3(i, one, j)); }) == "real_triple_product");
}

TEST_CASE("realifying unitary on random real-triple instances") {
  Rng rng(62);
  for (int t = 0; t < 100; ++t) {
    const QMatrix a = random_real_triple3(rng);
    const Realification r = realifying_unitary(a);
    CHECK(max_abs_diff(r.u.adjoint() * r.u, QMatrix::identity(3)) <= 1e-12);
    CHECK(max_pure_norm(r.r) <= 1e-10);
  }
}

TEST_CASE("direction class of the maximum modulus") {
  const DirectionClass ex = max_direction_class(fixture_convex_noncircular());
  CHECK(approx_equal(ex.representative, -one));
  const DirectionClass pos = max_direction_class(upper3(one, one, one));
  CHECK(approx_equal(pos.representative, one));
  const DirectionClass tw = max_direction_class(upper3(i, one, j));
  CHECK(similar(tw.representative, k, 1e-12));
  CHECK(predicate_of([] { max_direction_class(upper3(i, {}, j)); }) == "nonzero_entries");
}

TEST_CASE("maximum modulus points fall in the direction class") {
  Rng rng(63);
  const std::vector<QMatrix> cases{fixture_convex_noncircular(), upper3(i, one, j), random_nonreal_triple3(rng),
                                   random_real_triple3(rng)};
  for (const QMatrix& a : cases) {
    const DirectionClass c = max_direction_class(a);
    int hits = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const ModulusResult r = max_modulus_ascent(a, derive_seed(63, s));
      CHECK(r.modulus <= c.modulus + 1e-9);
      if (similar(r.q, c.modulus * c.representative, 1e-3)) ++hits;
    }
    CHECK(hits >= 198);
  }
}

TEST_CASE("circularity and convexity agree with sampled clouds") {
  Rng rng(64);
  for (int t = 0; t < 3; ++t) {
    for (const QMatrix& a : {random_cyclefree3(rng), random_cyclic3(rng)}) {
      const Classification3 c = classify3(a);
      const CircularityResult s = circularity_score(dense_bild(a, 100000, derive_seed(64, t), 1024));
      CHECK(s.is_circular == c.circular);
      if (s.is_circular) CHECK(std::abs(s.center) <= 5e-3 * s.radius);
    }
    for (const QMatrix& a : {random_real_triple3(rng), random_nonreal_triple3(rng)}) {
      const Classification3 c = classify3(a);
      const double ratio = hull_coverage_ratio(dense_bild(a, 100000, derive_seed(65, t), 1024).points);
      CHECK((ratio >= 0.98) == c.convex);
    }
  }
}
