// One PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qrange/graph.hpp"
#include "qrange/instances.hpp"
#include "qrange/predicates.hpp"
#include "qrange/range.hpp"
#include "qrange/rng.hpp"
#include "qrange/verify.hpp"

using namespace qrange;

namespace {

constexpr std::size_t kSamples = 100000;
constexpr std::uint64_t kSeed = 20261019;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_modulus(std::span<const UpperBildPoint> pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, p.modulus());
  return m;
}

Hull2D hull_of(std::span<const UpperBildPoint> pts) { return convex_hull_2d(to_points(pts)); }

// 1/2 b^T S b over the nonnegative part of the unit sphere, on an m x m grid
// of spherical angles (n = 2 uses the first angle only).
double sphere_grid(const SymMatrix& s, std::size_t m) {
  const std::size_t n = s.size();
  const double step = (std::numbers::pi / 2.0) / static_cast<double>(m - 1);
  double best = 0.0;
  if (n == 2) {
    for (std::size_t a = 0; a < m * m; ++a) {
      const double t = (std::numbers::pi / 2.0) * static_cast<double>(a) / static_cast<double>(m * m - 1);
      best = std::max(best, std::cos(t) * std::sin(t) * s(0, 1));
    }
    return best;
  }
  for (std::size_t a = 0; a < m; ++a) {
    const double th = step * static_cast<double>(a);
    for (std::size_t b = 0; b < m; ++b) {
      const double ph = step * static_cast<double>(b);
      const double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
      best = std::max(best, x * y * s(0, 1) + x * z * s(0, 2) + y * z * s(1, 2));
    }
  }
  return best;
}

Outcome tree_disk_example() {
  Outcome o;
  const double r = tree_disk(fixture_tree_block()).radii[0];
  const BildCloud c = sample_bild(fixture_tree_plus_one(), kSamples, kSeed);
  const double m = max_modulus(c.points);
  o.pass = std::abs(r - 1.0) <= 1e-10 && m <= 1.0 + 1e-9 && m >= 0.999;
  o.detail = "radius " + fmt("%.15g", r) + ", sampled max modulus " + fmt("%.6f", m);
  return o;
}

Outcome ellipse_example() {
  Outcome o;
  double profile = 0.0, env = 0.0;
  for (double k : {1.0, 2.0, 5.0}) {
    const DiagonalSplit split = split_diagonal(fixture_ellipse(k));
    const DiskUnion u = disk_union(split.d, split.n, 512);
    for (std::size_t m = 0; m < u.centers.size(); ++m) {
      const double d = u.centers[m];
      profile = std::max(profile, std::abs(u.radii[m] - std::sqrt(k * d * (1.0 - d))));
    }
    const double ax = std::sqrt((k + 1.0) / 4.0), ay = std::sqrt(k / 4.0);
    for (const Point2& p : envelope(u)) {
      const double dx = p.x - 0.5, dy = p.y, t = std::hypot(dx, dy);
      if (t == 0.0) continue;
      const double c = dx / t, s = dy / t;
      env = std::max(env, std::abs(t - 1.0 / std::sqrt(c * c / (ax * ax) + s * s / (ay * ay))));
    }
  }
  o.pass = profile <= 1e-6 && env <= 1e-4;
  o.detail = "radius profile error " + fmt("%.3g", profile) + ", envelope deviation " + fmt("%.3g", env);
  return o;
}

Outcome real_cyclic_example() {
  Outcome o;
  const SupportBoundary b = support_boundary(as_complex(fixture_real_cyclic()), 720);
  const auto [lo, hi] = std::minmax_element(b.support.begin(), b.support.end());
  double mean = 0.0;
  for (double h : b.support) mean += h;
  mean /= static_cast<double>(b.support.size());
  const double spread = (*hi - *lo) / mean;
  const CircularityResult c = circularity_score(b);
  const double center = std::hypot(c.center, c.center_im);
  o.pass = spread <= 1e-6 && center <= 1e-8;
  o.detail = "relative spread " + fmt("%.3g", spread) + ", center " + fmt("%.3g", center) + ", radius " +
             fmt("%.15g", mean);
  return o;
}

Outcome convex_noncircular_example() {
  Outcome o;
  const QMatrix a = fixture_convex_noncircular();
  const Classification3 c = classify3(a);
  const Realification r = realifying_unitary(a);
  const double ratio = hull_coverage_ratio(dense_bild(a, kSamples, kSeed).points);
  o.pass = c.convex && !c.circular && max_pure_norm(r.r) <= 1e-10 && ratio >= 0.98;
  o.detail = std::string("convex ") + (c.convex ? "true" : "false") + ", circular " + (c.circular ? "true" : "false") +
             ", realified pure part " + fmt("%.3g", max_pure_norm(r.r)) + ", hull coverage " + fmt("%.4f", ratio);
  return o;
}

Outcome circularity_both_ways() {
  Outcome o;
  Rng rng(kSeed + 5);
  int wrong = 0;
  double worst_center = 0.0, free_dev = 0.0, cyc_dev = 1e300;
  for (int t = 0; t < 60; ++t) {
    const bool cyclic = t >= 30;
    const QMatrix a = cyclic ? random_cyclic3(rng) : random_cyclefree3(rng);
    const CircularityResult s = circularity_score(dense_bild(a, kSamples, derive_seed(kSeed, 500 + t)));
    const bool expect = !cyclic;
    if (s.is_circular != expect || classify3(a).circular != expect) ++wrong;
    if (s.is_circular) {
      worst_center = std::max(worst_center, std::abs(s.center) / s.radius);
      if (std::abs(s.center) > 5e-3 * s.radius) ++wrong;
    }
    if (cyclic) {
      cyc_dev = std::min(cyc_dev, s.deviation);
    } else {
      free_dev = std::max(free_dev, s.deviation);
    }
  }
  o.pass = wrong == 0;
  o.detail = std::to_string(wrong) + " misclassified of 30 + 30; worst cycle-free deviation " + fmt("%.3g", free_dev) +
             ", least cyclic deviation " + fmt("%.3g", cyc_dev) + ", worst center/radius " + fmt("%.3g", worst_center);
  return o;
}

Outcome convexity_both_ways() {
  Outcome o;
  Rng rng(kSeed + 6);
  int wrong = 0;
  double real_min = 1.0, nonreal_max = 0.0;
  for (int t = 0; t < 60; ++t) {
    const bool real = t < 30;
    const QMatrix a = real ? random_real_triple3(rng) : random_nonreal_triple3(rng, 0.1);
    const double ratio = hull_coverage_ratio(dense_bild(a, kSamples, derive_seed(kSeed, 600 + t)).points);
    if ((ratio >= 0.98) != real || classify3(a).convex != real) ++wrong;
    if (real) {
      real_min = std::min(real_min, ratio);
    } else {
      nonreal_max = std::max(nonreal_max, ratio);
    }
  }
  o.pass = wrong == 0;
  o.detail = std::to_string(wrong) + " misclassified of 30 + 30; real-triple coverage >= " + fmt("%.4f", real_min) +
             ", non-real coverage <= " + fmt("%.4f", nonreal_max);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Rng rng(kSeed + 7);
  double worst = 0.0, worst_grid = 0.0;
  int small = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.below(5);
    const QMatrix a = random_nilpotent_tree(rng, n);
    const SymMatrix s = coupling_matrix(a);
    const double closed = tree_disk(a).radii[0];
    const double direct = sphere_max_quadratic(s).value;
    worst = std::max(worst, std::abs(closed - direct));
    if (n <= 3) {
      ++small;
      worst_grid = std::max(worst_grid, std::abs(closed - sphere_grid(s, 2000)));
    }
  }
  o.pass = worst <= 1e-8 && worst_grid <= 1e-4;
  o.detail = "max |Perron/2 - multistart| " + fmt("%.3g", worst) + ", max grid gap " + fmt("%.3g", worst_grid) + " over " +
             std::to_string(small) + " small trees";
  return o;
}

Outcome disk_union_containment() {
  Outcome o;
  Rng rng(kSeed + 8);
  double worst = 0.0, worst_ratio = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.below(4);
    const DPlusN inst = random_d_plus_n(rng, n);
    RefinedDiskUnion u(inst.d, inst.n, 512);
    const BildCloud c = dense_bild(inst.a, kSamples, derive_seed(kSeed, 800 + t));
    worst = std::max(worst, u.max_distance(to_points(c.points)));

    const double lo = *std::min_element(inst.d.begin(), inst.d.end());
    const double hi = *std::max_element(inst.d.begin(), inst.d.end());
    std::vector<double> r(200);
    for (std::size_t m = 0; m < r.size(); ++m) r[m] = u.radius(lo + (hi - lo) * static_cast<double>(m) / 199.0);
    for (std::size_t m = 0; m + 1 < r.size(); ++m) {
      double local = 0.0;
      if (m > 0) local = std::max(local, std::abs(r[m] - r[m - 1]));
      if (m + 2 < r.size()) local = std::max(local, std::abs(r[m + 2] - r[m + 1]));
      const double jump = std::abs(r[m + 1] - r[m]);
      if (jump > 1e-9) worst_ratio = std::max(worst_ratio, local > 0.0 ? jump / local : 1e300);
    }
  }
  o.pass = worst <= 1e-6 && worst_ratio <= 10.0;
  o.detail = "max distance outside the union " + fmt("%.3g", worst) + ", max jump / neighbouring secant " +
             fmt("%.3g", worst_ratio);
  return o;
}

Outcome direct_sums() {
  Outcome o;
  Rng rng(kSeed + 9);
  double worst = 0.0, inside = 0.0;
  for (int t = 0; t < 5; ++t) {
    const QMatrix b1 = t % 2 == 0 ? random_nilpotent_tree(rng, 2 + rng.below(2)) : random_real_triple3(rng);
    const QMatrix b2 = random_d_plus_n(rng, 2 + rng.below(2)).a;
    const QMatrix blocks[] = {b1, b2};
    const std::uint64_t s = derive_seed(kSeed, 900 + t);
    const BildCloud whole = dense_bild(direct_sum(blocks), kSamples, s);
    const std::vector<UpperBildPoint> parts[] = {dense_bild(b1, kSamples, s + 1).points,
                                                 dense_bild(b2, kSamples, s + 2).points};
    auto mixed = iconv_clouds(parts, kSamples, s + 3);
    const Hull2D whole_hull = hull_of(whole.points);
    for (const auto& p : mixed) inside = std::max(inside, whole_hull.distance({p.re, p.im}));
    for (const auto& part : parts) mixed.insert(mixed.end(), part.begin(), part.end());
    worst = std::max(worst, hausdorff_distance(whole_hull, hull_of(mixed)));
  }
  o.pass = worst <= 2e-2;
  o.detail = "max two-sided hull distance " + fmt("%.3g", worst) + ", iconv samples outside the sum's hull by at most " +
             fmt("%.3g", inside);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "tree disk of radius 1", 5.0, tree_disk_example},
      {2, "ellipse family", 10.0, ellipse_example},
      {3, "circular real 4 x 4", 0.0, real_cyclic_example},
      {4, "convex non-circular 3 x 3", 0.0, convex_noncircular_example},
      {5, "circular iff cycle free", 0.0, circularity_both_ways},
      {6, "convex iff real triple product", 0.0, convexity_both_ways},
      {7, "tree radius oracles", 0.0, oracle_equivalence},
      {8, "disk union containment and continuity", 0.0, disk_union_containment},
      {9, "direct sums against iconv", 0.0, direct_sums},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += ", over the " + fmt("%.0f", c.budget_s) + " s budget";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d %s  %s: %s (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
