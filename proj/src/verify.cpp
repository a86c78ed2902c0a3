#include "qrange/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "qrange/error.hpp"
#include "qrange/graph.hpp"
#include "qrange/hull.hpp"
#include "qrange/instances.hpp"
#include "qrange/parallel.hpp"
#include "qrange/predicates.hpp"
#include "qrange/range.hpp"
#include "qrange/rng.hpp"

namespace qrange {

bool Check::passed() const noexcept {
  if (!std::isfinite(measured)) return false;
  return comparison == Comparison::at_most ? measured <= threshold : measured >= threshold;
}

bool VerifyReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json j{{"name", c.name},
                     {"status", c.passed() ? "PASS" : "FAIL"},
                     {"deviation", c.measured},
                     {"threshold", c.threshold},
                     {"comparison", c.comparison == Comparison::at_most ? "<=" : ">="}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  return {{"suite", report.suite}, {"passed", report.all_passed()}, {"checks", std::move(checks)}};
}

QMatrix fixture_tree_block() { return QMatrix{{{}, 2.0 * Quaternion::unit_j()}, {{}, {}}}; }

QMatrix fixture_tree_plus_one() {
  const QMatrix blocks[] = {fixture_tree_block(), QMatrix{{Quaternion::real(1.0)}}};
  return direct_sum(blocks);
}

QMatrix fixture_real_cyclic() {
  const auto r = [](double v) { return Quaternion::real(v); };
  return QMatrix{{r(0), r(1), r(-1), r(0)}, {r(0), r(0), r(1), r(1)}, {r(0), r(0), r(0), r(1)}, {r(0), r(0), r(0), r(0)}};
}

QMatrix fixture_ellipse(double k) {
  const double s = std::sqrt(k);
  const Quaternion one = Quaternion::real(1.0);
  return QMatrix{{{}, 0.6 * s * Quaternion::unit_i(), 0.8 * s * Quaternion::unit_j()}, {{}, one, {}}, {{}, {}, one}};
}

QMatrix fixture_convex_noncircular() {
  return QMatrix{{{}, Quaternion::unit_i(), Quaternion::unit_j()}, {{}, {}, Quaternion::unit_k()}, {{}, {}, {}}};
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double max_modulus(const BildCloud& c) {
  double m = 0.0;
  for (const auto& p : c.points) m = std::max(m, p.modulus());
  return m;
}

DiskUnion scaled(DiskUnion u, double scale) {
  for (double& r : u.radii) r *= scale;
  return u;
}

Check containment(std::string name, std::span<const UpperBildPoint> points, const DiskUnion& u, double tol) {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, distance_to_union(u, {p.re, p.im}));
  return {std::move(name), worst, tol, Comparison::at_most, "largest distance outside the disk union"};
}

Check containment(std::string name, const BildCloud& cloud, const DiskUnion& u, double tol) {
  return containment(std::move(name), cloud.points, u, tol);
}

Check refined_containment(std::string name, const BildCloud& cloud, RefinedDiskUnion& u, double scale) {
  const double worst = u.max_distance(to_points(cloud.points), scale);
  return {std::move(name), worst, 1e-6, Comparison::at_most, "largest distance outside the disk union"};
}

Check attainment(std::string name, const BildCloud& cloud, double radius, double slack) {
  const double m = max_modulus(cloud);
  const double shortfall = radius > 0.0 ? 1.0 - m / radius : m;
  return {std::move(name), shortfall, slack, Comparison::at_most,
          "max modulus " + fmt(m) + " against radius " + fmt(radius)};
}

Check boolean_check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? 0.0 : 1.0, 0.0, Comparison::at_most, std::move(detail)};
}

Hull2D symmetric_hull(std::span<const UpperBildPoint> points) {
  std::vector<Point2> both = to_points(points);
  const std::size_t m = both.size();
  for (std::size_t k = 0; k < m; ++k) both.push_back({both[k].x, -both[k].y});
  return convex_hull_2d(both);
}

Hull2D upper_hull(std::span<const UpperBildPoint> points) { return convex_hull_2d(to_points(points)); }

bool all_real(const QMatrix& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Quaternion& q) { return q.pure_norm() == 0.0; });
}

// Ascent from `starts` seeded points; fraction of maximizers in the class of `rep`.
double class_fraction(const QMatrix& a, const Quaternion& rep, double modulus, std::size_t starts, std::uint64_t seed,
                      double tol) {
  std::vector<char> hit(starts, 0);
  for_each_chunk(starts, 8, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const ModulusResult r = max_modulus_ascent(a, derive_seed(seed, s));
      hit[s] = similar(r.q, modulus * rep, tol) ? 1 : 0;
    }
  });
  return static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / static_cast<double>(starts);
}

void add_real_matrix_checks(VerifyReport& rep, const std::string& prefix, const QMatrix& a, const BildCloud& cloud,
                            std::size_t angles) {
  const SupportBoundary sb = support_boundary(as_complex(a), std::max<std::size_t>(8, angles));
  const double d = hausdorff_distance(symmetric_hull(cloud.points), convex_hull_2d(sb.points));
  rep.checks.push_back({prefix + "real_support_hull_distance", d, 2e-2, Comparison::at_most,
                        "Bild hull against complex support boundary"});
}

void add_3x3_checks(VerifyReport& rep, const std::string& prefix, const QMatrix& a, const BildCloud& cloud,
                    double tol) {
  const Classification3 c = classify3(a, tol);
  const CircularityResult circ = circularity_score(cloud);
  rep.checks.push_back(boolean_check(prefix + "circularity_agrees", circ.is_circular == c.circular,
                                     "classify3 circular=" + std::string(c.circular ? "true" : "false") +
                                         ", cloud deviation " + fmt(circ.deviation)));
  if (circ.is_circular) {
    rep.checks.push_back({prefix + "circular_center_at_origin", std::abs(circ.center), 5e-3 * circ.radius,
                          Comparison::at_most, "fitted center against 5e-3 radius"});
  }
  const double ratio = hull_coverage_ratio(cloud.points);
  const bool cloud_convex = ratio >= 0.98;
  rep.checks.push_back(boolean_check(prefix + "convexity_agrees", cloud_convex == c.convex,
                                     "classify3 convex=" + std::string(c.convex ? "true" : "false") +
                                         ", hull coverage " + fmt(ratio)));
}

}  // namespace

VerifyReport verify_worked_examples(const VerifyOptions& o) {
  VerifyReport rep;
  rep.suite = "paper-examples";

  {  // tree block plus a 1 x 1 identity
    const DiskUnion block = tree_disk(fixture_tree_block(), o.tol);
    rep.checks.push_back({"tree_plus_one/tree_disk_radius", std::abs(block.radii[0] - 1.0), 1e-10, Comparison::at_most,
                          "radius " + fmt(block.radii[0])});
    const BildCloud cloud = dense_bild(fixture_tree_plus_one(), o.samples, o.seed, o.support_angles);
    rep.checks.push_back(containment("tree_plus_one/containment", cloud, scaled(block, o.radius_scale), 1e-9));
    rep.checks.push_back(attainment("tree_plus_one/attainment", cloud, 1.0, 1e-3));
    const AdjGraph g = build_graph(fixture_tree_plus_one());
    rep.checks.push_back(boolean_check("tree_plus_one/structure",
                                       !is_tree(g) && !is_nilpotent(fixture_tree_plus_one(), o.tol) && g.components.size() == 2,
                                       "two components, not a tree, not nilpotent"));
  }
  {  // real 4 x 4 with cycles and a circular range
    const QMatrix a = fixture_real_cyclic();
    const SupportBoundary sb = support_boundary(as_complex(a), 720);
    const auto [lo, hi] = std::minmax_element(sb.support.begin(), sb.support.end());
    double mean = 0.0;
    for (double h : sb.support) mean += h;
    mean /= static_cast<double>(sb.support.size());
    rep.checks.push_back({"real_cyclic/support_spread", (*hi - *lo) / mean, 1e-6, Comparison::at_most,
                          "support value " + fmt(mean)});
    const CircularityResult circ = circularity_score(sb);
    rep.checks.push_back({"real_cyclic/center", std::hypot(circ.center, circ.center_im), 1e-8, Comparison::at_most,
                          "radius " + fmt(circ.radius)});
    const AdjGraph g = build_graph(a);
    rep.checks.push_back(boolean_check("real_cyclic/structure", !is_cycle_free(g) && is_nilpotent(a, o.tol) && g.edge_count == 5,
                                       "nilpotent with cycles, 5 edges"));
    const BildCloud cloud = dense_bild(a, o.samples, o.seed, o.support_angles);
    add_real_matrix_checks(rep, "real_cyclic/", a, cloud, o.support_angles);
    DiskUnion disk{{0.0}, {mean * o.radius_scale}, 0.0, 0.0};
    rep.checks.push_back(containment("real_cyclic/containment", cloud, disk, 1e-9));
  }
  for (double k : {1.0, 2.0, 5.0}) {  // ellipse family
    const std::string p = "ellipse/k=" + fmt(k) + "/";
    const QMatrix a = fixture_ellipse(k);
    const DiagonalSplit split = split_diagonal(a);
    QuadMaxOptions qo;
    qo.tol = o.tol;
    RefinedDiskUnion refined(split.d, split.n, o.grid, qo);
    const DiskUnion& u = refined.grid();
    double worst = 0.0;
    for (std::size_t m = 0; m < u.centers.size(); ++m) {
      const double d = u.centers[m];
      worst = std::max(worst, std::abs(u.radii[m] - std::sqrt(k * d * (1.0 - d))));
    }
    rep.checks.push_back({p + "radius_profile", worst, 1e-6, Comparison::at_most, "against sqrt(k d (1 - d))"});
    const double ax = std::sqrt((k + 1.0) / 4.0), ay = std::sqrt(k / 4.0);
    double env = 0.0;
    for (const Point2& q : envelope(u)) {
      const double dx = q.x - 0.5, dy = q.y;
      const double t = std::hypot(dx, dy);
      if (t == 0.0) continue;
      const double c = dx / t, s = dy / t;
      const double te = 1.0 / std::sqrt(c * c / (ax * ax) + s * s / (ay * ay));
      env = std::max(env, std::abs(t - te));
    }
    rep.checks.push_back({p + "ellipse_envelope", env, 1e-4, Comparison::at_most, "radial distance to the ellipse"});
    const BildCloud cloud = dense_bild(a, o.samples, o.seed, o.support_angles);
    rep.checks.push_back(refined_containment(p + "containment", cloud, refined, o.radius_scale));
  }
  {  // convex, not circular
    const QMatrix a = fixture_convex_noncircular();
    const Classification3 c = classify3(a, o.tol);
    rep.checks.push_back(boolean_check("convex_noncircular/classify3", c.convex && !c.circular && c.triple_product == Quaternion::real(-1.0),
                                       "convex and not circular, triple product -1"));
    const Realification r = realifying_unitary(a, o.tol);
    rep.checks.push_back({"convex_noncircular/realified_pure_part", max_pure_norm(r.r), 1e-10, Comparison::at_most, ""});
    const BildCloud cloud = dense_bild(a, o.samples, o.seed, o.support_angles);
    rep.checks.push_back({"convex_noncircular/hull_coverage", hull_coverage_ratio(cloud.points), 0.98, Comparison::at_least,
                          "area ratio of the cloud hull to the symmetric hull"});
    const CircularityResult circ = circularity_score(cloud);
    rep.checks.push_back({"convex_noncircular/not_circular", circ.deviation, 5e-3, Comparison::at_least, "profile deviation"});
    const DirectionClass dc = max_direction_class(a, o.tol);
    rep.checks.push_back({"convex_noncircular/max_direction_class", class_fraction(a, dc.representative, dc.modulus, 200, o.seed, 1e-3),
                          0.99, Comparison::at_least, "fraction of ascent maximizers in the class of -1"});
    const DiskUnion disk{{0.0}, {dc.modulus * o.radius_scale}, 0.0, 0.0};
    rep.checks.push_back(containment("convex_noncircular/modulus_bound", cloud, disk, 1e-9));
  }
  return rep;
}

VerifyReport verify_random(const VerifyOptions& o) {
  VerifyReport rep;
  rep.suite = "random";
  Rng rng(o.seed);
  QuadMaxOptions qo;
  qo.tol = o.tol;

  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng.below(5);
    const QMatrix a = random_nilpotent_tree(rng, n);
    const std::string p = "tree" + std::to_string(t) + "/n=" + std::to_string(n) + "/";
    const DiskUnion u = tree_disk(a, o.tol);
    const BildCloud cloud = dense_bild(a, o.samples, derive_seed(o.seed, 100 + t), o.support_angles);
    rep.checks.push_back(containment(p + "containment", cloud, scaled(u, o.radius_scale), 1e-9));
    rep.checks.push_back(attainment(p + "attainment", cloud, u.radii[0], 5e-3));
  }
  for (int t = 0; t < 5; ++t) {
    const std::size_t n = 2 + rng.below(4);
    const DPlusN inst = random_d_plus_n(rng, n);
    const std::string p = "d+n" + std::to_string(t) + "/n=" + std::to_string(n) + "/";
    RefinedDiskUnion u(inst.d, inst.n, o.grid, qo);
    const BildCloud cloud = dense_bild(inst.a, o.samples, derive_seed(o.seed, 200 + t), o.support_angles);
    rep.checks.push_back(refined_containment(p + "containment", cloud, u, o.radius_scale));
  }
  for (int t = 0; t < 4; ++t) {
    const bool cyclic = t % 2 == 1;
    const QMatrix a = cyclic ? random_cyclic3(rng) : random_cyclefree3(rng);
    const BildCloud cloud = dense_bild(a, o.samples, derive_seed(o.seed, 300 + t), o.support_angles);
    add_3x3_checks(rep, std::string(cyclic ? "cyclic" : "cyclefree") + std::to_string(t) + "/", a, cloud, o.tol);
  }
  for (int t = 0; t < 4; ++t) {
    const bool real = t % 2 == 0;
    const QMatrix a = real ? random_real_triple3(rng) : random_nonreal_triple3(rng);
    const BildCloud cloud = dense_bild(a, o.samples, derive_seed(o.seed, 400 + t), o.support_angles);
    add_3x3_checks(rep, std::string(real ? "real_triple" : "nonreal_triple") + std::to_string(t) + "/", a, cloud, o.tol);
  }
  for (int t = 0; t < 2; ++t) {
    const QMatrix b1 = random_nilpotent_tree(rng, 2 + rng.below(2));
    const QMatrix b2 = random_d_plus_n(rng, 2 + rng.below(2)).a;
    const QMatrix blocks[] = {b1, b2};
    const QMatrix sum = direct_sum(blocks);
    const std::uint64_t s = derive_seed(o.seed, 500 + t);
    const BildCloud whole = dense_bild(sum, o.samples, s, o.support_angles);
    const std::vector<UpperBildPoint> parts[] = {dense_bild(b1, o.samples, s + 1, o.support_angles).points,
                                                 dense_bild(b2, o.samples, s + 2, o.support_angles).points};
    // alpha = e_i is part of the iconv set; random alpha almost never lands there.
    auto mixed = iconv_clouds(parts, o.samples, s + 3);
    for (const auto& part : parts) mixed.insert(mixed.end(), part.begin(), part.end());
    rep.checks.push_back({"direct_sum" + std::to_string(t) + "/iconv_hull_distance",
                          hausdorff_distance(upper_hull(whole.points), upper_hull(mixed)), 2e-2, Comparison::at_most,
                          ""});
  }
  for (int t = 0; t < 2; ++t) {
    const std::size_t n = 2 + rng.below(3);
    const QMatrix a = random_nilpotent_tree(rng, n);
    const QMatrix u = random_unitary(rng, n);
    const std::uint64_t s = derive_seed(o.seed, 600 + t);
    const BildCloud c1 = dense_bild(a, o.samples, s, o.support_angles);
    const BildCloud c2 = dense_bild(u.adjoint() * a * u, o.samples, s + 1, o.support_angles);
    rep.checks.push_back({"unitary" + std::to_string(t) + "/hull_distance",
                          hausdorff_distance(upper_hull(c1.points), upper_hull(c2.points)), 2e-2, Comparison::at_most,
                          ""});
  }
  return rep;
}

VerifyReport verify_matrix(const QMatrix& a, const VerifyOptions& o) {
  VerifyReport rep;
  rep.suite = "matrix";
  const std::size_t n = a.size();
  const bool nilpotent = is_nilpotent(a, o.tol);
  rep.checks.push_back(boolean_check("nilpotency_routes_agree", nilpotent == is_nilpotent_via_chi(a, o.tol),
                                     "A^n and chi(A)^(2n) tests"));
  const BildCloud cloud = dense_bild(a, o.samples, o.seed, o.support_angles);
  const AdjGraph g = build_graph(a);

  if (nilpotent && is_cycle_free(g)) {
    const DiskUnion u = cyclefree_disk(a, o.tol);
    rep.checks.push_back(containment("cyclefree_disk/containment", cloud, scaled(u, o.radius_scale), 1e-9));
    rep.checks.push_back(attainment("cyclefree_disk/attainment", cloud, u.radii[0], 5e-3));
  } else if (a.real_diagonal() && !nilpotent) {
    const DiagonalSplit split = split_diagonal(a);
    const AdjGraph gn = build_graph(split.n);
    if (is_tree(gn)) {
      QuadMaxOptions qo;
      qo.tol = o.tol;
      RefinedDiskUnion u(split.d, split.n, o.grid, qo);
      rep.checks.push_back(refined_containment("disk_union/containment", cloud, u, o.radius_scale));
    }
  }
  if (n == 3 && nilpotent) add_3x3_checks(rep, "classify3/", a, cloud, o.tol);
  if (all_real(a)) add_real_matrix_checks(rep, "", a, cloud, o.support_angles);
  return rep;
}

}  // namespace qrange
