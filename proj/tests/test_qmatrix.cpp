#include <doctest.h>

#include <cmath>
#include <vector>

#include "qrange/error.hpp"
#include "qrange/instances.hpp"
#include "qrange/matrix_io.hpp"
#include "qrange/qmatrix.hpp"
#include "qrange/rng.hpp"

using namespace qrange;

namespace {

const Quaternion one = Quaternion::real(1.0);
const Quaternion i = Quaternion::unit_i();
const Quaternion j = Quaternion::unit_j();

QMatrix random_dense(Rng& rng, std::size_t n) {
  std::vector<Quaternion> e(n * n);
  for (auto& q : e) q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  return QMatrix(n, std::move(e));
}

QVector random_unit(Rng& rng, std::size_t n) {
  QVector x(n);
  draw_unit_vector(rng, x);
  return x;
}

}  // namespace

TEST_CASE("complex adjoint of small matrices") {
  const CMatrix cj = chi(QMatrix{{j}});
  CHECK(cj(0, 0) == Complex(0, 0));
  CHECK(cj(0, 1) == Complex(1, 0));
  CHECK(cj(1, 0) == Complex(-1, 0));
  CHECK(cj(1, 1) == Complex(0, 0));

  CHECK(max_abs_diff(chi(QMatrix{{one}}), CMatrix::identity(2)) == 0.0);

  const CMatrix c = chi(QMatrix{{{}, 2.0 * j}, {{}, {}}});
  REQUIRE(c.size() == 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t s = 0; s < 4; ++s) {
      Complex expect{0, 0};
      if (r == 0 && s == 3) expect = 2.0;
      if (r == 2 && s == 1) expect = -2.0;
      CHECK(c(r, s) == expect);
    }
}

TEST_CASE("complex adjoint is multiplicative") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.below(5);
    const QMatrix a = random_dense(rng, n), b = random_dense(rng, n);
    CHECK(max_abs_diff(chi(a * b), chi(a) * chi(b)) <= 1e-10);
  }
}

TEST_CASE("complex adjoint of a real matrix is two equal diagonal blocks") {
  const QMatrix a{{Quaternion::real(1), Quaternion::real(-2)}, {Quaternion::real(0.5), Quaternion::real(3)}};
  const CMatrix c = chi(a);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t s = 0; s < 2; ++s) {
      CHECK(c(r, s) == Complex(a(r, s).w, 0));
      CHECK(c(r + 2, s + 2) == Complex(a(r, s).w, 0));
      CHECK(c(r, s + 2) == Complex(0, 0));
      CHECK(c(r + 2, s) == Complex(0, 0));
    }
}

TEST_CASE("nilpotency") {
  const QMatrix upper{{{}, i, j}, {{}, {}, one}, {{}, {}, {}}};
  CHECK(is_nilpotent(upper));
  CHECK(is_nilpotent_via_chi(upper));
  CHECK_FALSE(is_nilpotent(QMatrix::identity(2)));
  const QMatrix tree_plus_one = direct_sum(std::vector<QMatrix>{QMatrix{{{}, 2.0 * j}, {{}, {}}}, QMatrix{{one}}});
  CHECK_FALSE(is_nilpotent(tree_plus_one));
  CHECK_FALSE(is_nilpotent_via_chi(tree_plus_one));
}

TEST_CASE("nilpotency routes agree on random matrices") {
  Rng rng(22);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng.below(4);
    const QMatrix tree = random_nilpotent_tree(rng, n);
    CHECK(is_nilpotent(tree) == is_nilpotent_via_chi(tree));
    CHECK(is_nilpotent(tree));
    const QMatrix dense = random_dense(rng, n);
    CHECK(is_nilpotent(dense) == is_nilpotent_via_chi(dense));
    CHECK_FALSE(is_nilpotent(dense));
  }
}

TEST_CASE("direct sums") {
  const QMatrix block{{{}, 2.0 * j}, {{}, {}}};
  const QMatrix sum = direct_sum(std::vector<QMatrix>{block, QMatrix{{one}}});
  const QMatrix expect{{{}, 2.0 * j, {}}, {{}, {}, {}}, {{}, {}, one}};
  CHECK(sum == expect);
  CHECK(direct_sum(std::vector<QMatrix>{block}) == block);
  CHECK(direct_sum(std::vector<QMatrix>{QMatrix{{{}}}, QMatrix{{{}}}}) == QMatrix(2));
  CHECK_THROWS_AS(direct_sum(std::vector<QMatrix>{}), InputError);
}

TEST_CASE("permutations") {
  const Quaternion a{1, 2, 3, 4};
  const QMatrix m{{{}, a}, {{}, {}}};
  CHECK(permute(m, identity_permutation(2)) == m);
  CHECK(permute(m, Permutation{1, 0}) == QMatrix{{{}, {}}, {a, {}}});
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.below(6);
    const QMatrix x = random_dense(rng, n);
    const Permutation p = random_permutation(rng, n);
    CHECK(permute(permute(x, p), inverse_permutation(p)) == x);
  }
  CHECK_THROWS_AS(permute(m, Permutation{0, 0}), InputError);
  CHECK_THROWS_AS(permute(m, Permutation{0}), InputError);
  CHECK_THROWS_AS(permute(m, Permutation{0, 2}), InputError);
}

TEST_CASE("quadratic form") {
  Rng rng(24);
  const QVector x = random_unit(rng, 3);
  CHECK(quad_form(QMatrix(3), x) == Quaternion{});
  CHECK(approx_equal(quad_form(QMatrix::identity(3), x), one, 1e-14));
  const double h = 1.0 / std::sqrt(2.0);
  const QVector y{Quaternion::real(h), Quaternion::real(h)};
  CHECK(approx_equal(quad_form(QMatrix{{{}, one}, {{}, {}}}, y), Quaternion::real(0.5), 1e-15));
  CHECK_THROWS_AS(quad_form(QMatrix::identity(2), QVector{one, one}), InputError);
  CHECK_THROWS_AS(quad_form(QMatrix::identity(2), QVector{one}), InputError);
}

TEST_CASE("quadratic form is invariant under unitary equivalence") {
  Rng rng(25);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.below(5);
    const QMatrix a = random_dense(rng, n);
    const QMatrix u = random_unitary(rng, n);
    CHECK(max_abs_diff(u.adjoint() * u, QMatrix::identity(n)) <= 1e-12);
    const QVector x = random_unit(rng, n);
    QVector ux(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) ux[r] += u(r, s) * x[s];
    const Quaternion lhs = quad_form(u.adjoint() * a * u, x);
    const Quaternion rhs = quad_form(a, ux);
    CHECK((lhs - rhs).norm() <= 1e-10);
  }
}

TEST_CASE("structural flags") {
  const QMatrix a{{{}, i}, {{}, {}}};
  CHECK(a.strictly_upper_triangular());
  CHECK(a.upper_triangular());
  CHECK(a.real_diagonal());
  const QMatrix b = a.with_entry(1, 1, i);
  CHECK_FALSE(b.real_diagonal());
  CHECK_FALSE(b.strictly_upper_triangular());
  CHECK(b.upper_triangular());
  CHECK_FALSE(a.with_entry(1, 0, one).upper_triangular());
}

TEST_CASE("matrix file round trip and rejection") {
  const QMatrix a{{{}, Quaternion{0.5, -1, 2, 0.25}}, {{}, one}};
  CHECK(parse_matrix_json(matrix_to_json(a).dump()) == a);

  CHECK_THROWS_AS(parse_matrix_json("[1, 2]"), InputError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"n": 2, "entries": [[[0,0,0,0]]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"n": 1, "entries": [[[0,0,0]]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"n": 0, "entries": []})"), InputError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"n": 1, "entries": [[[NaN,0,0,0]]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix_json(R"({"n": 1, "entries": [[[1e999,0,0,0]]]})"), InputError);

  try {
    parse_matrix_json("{\"n\": 1,\n  \"entries\": [[[0,0,0,0]]] x}");
    FAIL("expected a parse error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2, column 28") != std::string::npos);
  }
}
