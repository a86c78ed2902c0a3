#include "qrange/range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qrange/error.hpp"
#include "qrange/graph.hpp"
#include "qrange/parallel.hpp"
#include "qrange/rng.hpp"

namespace qrange {

namespace {

constexpr std::array<Quaternion, 4> kBasis{Quaternion::real(1.0), Quaternion::unit_i(), Quaternion::unit_j(),
                                           Quaternion::unit_k()};

constexpr std::array<double, 4> coords(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

SymMatrix combine(const std::array<SymMatrix, 4>& m, std::array<double, 4> u) {
  const std::size_t n = m[0].size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t k = 0; k < 4; ++k) {
    if (u[k] == 0.0) continue;
    const auto src = m[k].data();
    for (std::size_t e = 0; e < out.size(); ++e) out[e] += u[k] * src[e];
  }
  return SymMatrix(n, std::move(out));
}

std::vector<double> top_vector(const SymMatrix& m) {
  const SymEigen e = eigh(m);
  return e.vector(m.size() - 1);
}

double disk_distance(Point2 p, double center, double radius) {
  return std::max(0.0, std::hypot(p.x - center, p.y) - radius);
}

// Distance to the convex hull of two disks centred on the real axis at a < b.
double capsule_distance(Point2 p, double a, double r1, double b, double r2) {
  const double h = b - a;
  if (std::abs(r1 - r2) >= h) return std::min(disk_distance(p, a, r1), disk_distance(p, b, r2));
  const double along = p.x - a;
  const double across = std::abs(p.y);
  const double sb = (r1 - r2) / h;
  const double ca = std::sqrt(1.0 - sb * sb);
  const double k = -sb * across + ca * along;
  double signed_distance = 0.0;
  if (k < 0.0) {
    signed_distance = std::hypot(across, along) - r1;
  } else if (k > ca * h) {
    signed_distance = std::hypot(across, along - h) - r2;
  } else {
    signed_distance = ca * across + sb * along - r1;
  }
  return std::max(0.0, signed_distance);
}

}  // namespace

SymMatrix coupling_matrix(const QMatrix& a) {
  const std::size_t n = a.size();
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, a(i, j).norm() + a(j, i).norm());
  return s;
}

std::array<SymMatrix, 4> quad_form_components(const QMatrix& a) {
  const std::size_t n = a.size();
  const std::size_t m = 4 * n;
  std::array<std::vector<double>, 4> bilinear;
  for (auto& b : bilinear) b.assign(m * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Quaternion& aij = a(i, j);
      if (aij == Quaternion{}) continue;
      for (std::size_t s = 0; s < 4; ++s) {
        const Quaternion left = kBasis[s].conj() * aij;
        for (std::size_t t = 0; t < 4; ++t) {
          const auto c = coords(left * kBasis[t]);
          for (std::size_t k = 0; k < 4; ++k) bilinear[k][(4 * i + s) * m + 4 * j + t] = c[k];
        }
      }
    }
  }
  std::array<SymMatrix, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    SymMatrix sym(m);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p; q < m; ++q) sym.set(p, q, 0.5 * (bilinear[k][p * m + q] + bilinear[k][q * m + p]));
    out[k] = std::move(sym);
  }
  return out;
}

std::vector<double> flatten(std::span<const Quaternion> x) {
  std::vector<double> v;
  v.reserve(4 * x.size());
  for (const auto& q : x) v.insert(v.end(), {q.w, q.x, q.y, q.z});
  return v;
}

QVector unflatten(std::span<const double> v) {
  if (v.size() % 4 != 0) throw InputError("unflatten: length must be a multiple of 4");
  QVector x(v.size() / 4);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = {v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]};
  return x;
}

// ---------------------------------------------------------------------------
// Closed forms

DiskUnion tree_disk(const QMatrix& a, double tol) {
  if (!is_nilpotent(a, tol)) throw PreconditionError("is_nilpotent", "tree_disk requires a nilpotent matrix");
  if (!is_tree(build_graph(a))) throw PreconditionError("is_tree", "tree_disk requires a connected cycle-free graph");
  const SymMatrix s = coupling_matrix(a);
  const double radius = 0.5 * perron_max(s).value;
  const double direct = sphere_max_quadratic(s).value;
  if (std::abs(direct - radius) > 1e-8 * (1.0 + radius)) {
    throw InternalError("tree_disk: Perron radius " + std::to_string(radius) + " disagrees with direct maximum " +
                        std::to_string(direct));
  }
  return {{0.0}, {radius}, 0.0, 0.0};
}

DiskUnion cyclefree_disk(const QMatrix& a, double tol) {
  if (!is_nilpotent(a, tol)) throw PreconditionError("is_nilpotent", "cyclefree_disk requires a nilpotent matrix");
  const AdjGraph g = build_graph(a);
  if (!is_cycle_free(g)) throw PreconditionError("is_cycle_free", "cyclefree_disk requires a cycle-free graph");
  double radius = 0.0;
  for (const auto& component : g.components) {
    if (component.size() < 2) continue;
    const QMatrix block = principal_submatrix(a, component);
    radius = std::max(radius, tree_disk(block, tol).radii[0]);
  }
  return {{0.0}, {radius}, 0.0, 0.0};
}

DiagonalSplit split_diagonal(const QMatrix& a) {
  if (!a.real_diagonal()) throw PreconditionError("real_diagonal", "diagonal entries must be real");
  const std::size_t n = a.size();
  DiagonalSplit out;
  out.d.resize(n);
  std::vector<Quaternion> off(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < n; ++i) {
    out.d[i] = a(i, i).w;
    off[i * n + i] = Quaternion{};
  }
  out.n = QMatrix(n, std::move(off));
  return out;
}

DiskUnion disk_union(std::span<const double> d, const QMatrix& n, std::size_t grid_size,
                     const QuadMaxOptions& options) {
  const std::size_t dim = n.size();
  if (dim == 0) throw InputError("disk_union: empty matrix");
  if (d.size() != dim) throw InputError("disk_union: diagonal length does not match N");
  for (double v : d)
    if (!std::isfinite(v)) throw InputError("disk_union: diagonal entries must be finite");
  if (!is_nilpotent(n, options.tol)) throw PreconditionError("is_nilpotent", "disk_union requires a nilpotent N");
  const AdjGraph g = build_graph(n);
  if (!is_tree(g)) throw PreconditionError("is_tree", "disk_union requires N to be a tree matrix");
  // D + N is upper triangular after this permutation; it throws if no such ordering exists.
  (void)tree_triangularizing_permutation(n, g, options.tol);

  const SymMatrix s = coupling_matrix(n);
  const auto [lo_it, hi_it] = std::minmax_element(d.begin(), d.end());
  DiskUnion u;
  u.d_low = *lo_it;
  u.d_high = *hi_it;
  double scale = 1.0;
  for (double v : d) scale = std::max(scale, 1.0 + std::abs(v));
  if (u.d_high - u.d_low <= 1e-14 * scale) {
    u.centers = {u.d_low};
    u.radii = {0.5 * perron_max(s).value};
    return u;
  }
  if (grid_size < 2) throw InputError("disk_union: grid_size must be at least 2");
  u.centers.resize(grid_size);
  u.radii.resize(grid_size);
  const double step = (u.d_high - u.d_low) / static_cast<double>(grid_size - 1);
  for (std::size_t k = 0; k < grid_size; ++k) u.centers[k] = u.d_low + step * static_cast<double>(k);
  u.centers.back() = u.d_high;
  for_each_chunk(grid_size, 8, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) u.radii[k] = constrained_max_quadratic(s, d, u.centers[k], options).value;
  });
  return u;
}

Interval real_extent(const DiskUnion& u) {
  if (u.centers.empty()) throw InputError("real_extent: empty disk union");
  Interval out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < u.centers.size(); ++k) {
    out.lo = std::min(out.lo, u.centers[k] - u.radii[k]);
    out.hi = std::max(out.hi, u.centers[k] + u.radii[k]);
  }
  return out;
}

std::vector<Point2> envelope(const DiskUnion& u, std::size_t angle_count) {
  if (angle_count < 2) throw InputError("envelope: need at least two angles");
  const Interval ext = real_extent(u);
  const double c = 0.5 * (ext.lo + ext.hi);
  std::vector<Point2> out(angle_count);
  for (std::size_t k = 0; k < angle_count; ++k) {
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(angle_count - 1);
    const double cx = std::cos(theta), cy = std::sin(theta);
    double reach = 0.0;
    for (std::size_t m = 0; m < u.centers.size(); ++m) {
      const double offset = u.centers[m] - c;
      const double b = cx * offset;
      const double disc = b * b - (offset * offset - u.radii[m] * u.radii[m]);
      if (disc < 0.0) continue;
      reach = std::max(reach, b + std::sqrt(disc));
    }
    out[k] = {c + reach * cx, reach * cy};
  }
  return out;
}

double distance_to_union(const DiskUnion& u, Point2 p) {
  if (u.centers.empty()) throw InputError("distance_to_union: empty disk union");
  if (u.centers.size() == 1) return disk_distance({p.x, std::abs(p.y)}, u.centers[0], u.radii[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < u.centers.size(); ++k) {
    best = std::min(best, capsule_distance(p, u.centers[k], u.radii[k], u.centers[k + 1], u.radii[k + 1]));
    if (best == 0.0) break;
  }
  return best;
}

RefinedDiskUnion::RefinedDiskUnion(std::vector<double> d, const QMatrix& n, std::size_t grid_size,
                                   const QuadMaxOptions& options, std::size_t refine)
    : d_(std::move(d)), s_(coupling_matrix(n)), options_(options), grid_(disk_union(d_, n, grid_size, options)),
      refine_(refine) {}

double RefinedDiskUnion::radius(double d) const { return constrained_max_quadratic(s_, d_, d, options_).value; }

std::vector<double> RefinedDiskUnion::compute_interval(std::size_t k) const {
  const double a = grid_.centers[k], b = grid_.centers[k + 1];
  std::vector<double> r(refine_ + 2);
  r.front() = grid_.radii[k];
  r.back() = grid_.radii[k + 1];
  for (std::size_t j = 1; j <= refine_; ++j) r[j] = radius(a + (b - a) * static_cast<double>(j) / static_cast<double>(refine_ + 1));
  return r;
}

RefinedDiskUnion::GridHit RefinedDiskUnion::grid_hit(Point2 p, double radius_scale) const {
  GridHit h{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t k = 0; k + 1 < grid_.centers.size(); ++k) {
    const double dist = capsule_distance(p, grid_.centers[k], radius_scale * grid_.radii[k], grid_.centers[k + 1],
                                         radius_scale * grid_.radii[k + 1]);
    if (dist < h.distance) h = {dist, k};
    if (dist == 0.0) break;
  }
  return h;
}

std::pair<std::size_t, std::size_t> RefinedDiskUnion::neighbourhood(std::size_t nearest) const {
  return {nearest >= 2 ? nearest - 2 : 0, std::min(grid_.centers.size() - 2, nearest + 2)};
}

double RefinedDiskUnion::refined(Point2 p, double radius_scale, GridHit h) const {
  double best = h.distance;
  const auto [first, last] = neighbourhood(h.interval);
  for (std::size_t k = first; k <= last && best > 0.0; ++k) {
    const std::vector<double>& r = cache_.at(k);
    const double a = grid_.centers[k], b = grid_.centers[k + 1];
    for (std::size_t j = 0; j + 1 < r.size(); ++j) {
      const double c0 = a + (b - a) * static_cast<double>(j) / static_cast<double>(refine_ + 1);
      const double c1 = j + 2 == r.size() ? b : a + (b - a) * static_cast<double>(j + 1) / static_cast<double>(refine_ + 1);
      best = std::min(best, capsule_distance(p, c0, radius_scale * r[j], c1, radius_scale * r[j + 1]));
    }
  }
  return best;
}

void RefinedDiskUnion::fill(const std::vector<std::size_t>& intervals) {
  std::vector<std::size_t> missing;
  for (std::size_t k : intervals)
    if (!cache_.contains(k)) missing.push_back(k);
  std::vector<std::vector<double>> radii(missing.size());
  for_each_chunk(missing.size(), 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) radii[t] = compute_interval(missing[t]);
  });
  for (std::size_t t = 0; t < missing.size(); ++t) cache_.emplace(missing[t], std::move(radii[t]));
}

double RefinedDiskUnion::distance(Point2 p, double radius_scale) {
  const std::span<const Point2> one(&p, 1);
  return max_distance(one, radius_scale);
}

double RefinedDiskUnion::max_distance(std::span<const Point2> points, double radius_scale) {
  if (points.empty()) return 0.0;
  if (grid_.centers.size() == 1) {
    double worst = 0.0;
    for (const Point2& p : points)
      worst = std::max(worst, disk_distance({p.x, std::abs(p.y)}, grid_.centers[0], radius_scale * grid_.radii[0]));
    return worst;
  }
  std::vector<GridHit> hits(points.size());
  for_each_chunk(points.size(), kSampleChunk, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) hits[t] = grid_hit(points[t], radius_scale);
  });
  if (refine_ == 0) {
    double worst = 0.0;
    for (const GridHit& h : hits) worst = std::max(worst, h.distance);
    return worst;
  }
  std::vector<char> needed(grid_.centers.size() - 1, 0);
  for (const GridHit& h : hits) {
    if (h.distance == 0.0) continue;
    const auto [first, last] = neighbourhood(h.interval);
    for (std::size_t k = first; k <= last; ++k) needed[k] = 1;
  }
  std::vector<std::size_t> intervals;
  for (std::size_t k = 0; k < needed.size(); ++k)
    if (needed[k]) intervals.push_back(k);
  fill(intervals);
  double worst = 0.0;
  for (std::size_t t = 0; t < points.size(); ++t) {
    if (hits[t].distance > 0.0) worst = std::max(worst, refined(points[t], radius_scale, hits[t]));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Sampling oracles

BildCloud sample_bild(const QMatrix& a, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InputError("sample_bild: count must be positive");
  if (a.size() == 0) throw InputError("sample_bild: empty matrix");
  BildCloud cloud;
  cloud.points.resize(count);
  cloud.source_hash = content_hash(a);
  cloud.samples = count;
  cloud.seed = seed;
  // Same chunking and seeds as sample_unit_sphere, so the vectors coincide with it.
  for_each_chunk(count, kSampleChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng(derive_seed(seed, chunk));
    QVector x(a.size());
    for (std::size_t s = begin; s < end; ++s) {
      draw_unit_vector(rng, x);
      cloud.points[s] = to_upper_bild(quad_form_unchecked(a, x));
    }
  });
  return cloud;
}

std::vector<UpperBildPoint> bild_support(const QMatrix& a, std::size_t angle_count) {
  if (angle_count < 2) throw InputError("bild_support: need at least two angles");
  const auto m = quad_form_components(a);
  std::vector<UpperBildPoint> out(angle_count);
  for_each_chunk(angle_count, 16, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double phi = std::numbers::pi * static_cast<double>(k) / static_cast<double>(angle_count - 1);
      const auto x = unflatten(top_vector(combine(m, {std::cos(phi), std::sin(phi), 0.0, 0.0})));
      out[k] = to_upper_bild(quad_form_unchecked(a, x));
    }
  });
  return out;
}

BildCloud dense_bild(const QMatrix& a, std::size_t count, std::uint64_t seed, std::size_t angle_count) {
  BildCloud cloud = sample_bild(a, count, seed);
  const auto support = bild_support(a, angle_count);
  cloud.points.insert(cloud.points.end(), support.begin(), support.end());
  cloud.samples = cloud.points.size();
  return cloud;
}

std::vector<UpperBildPoint> iconv_clouds(std::span<const std::vector<UpperBildPoint>> clouds, std::size_t count,
                                         std::uint64_t seed) {
  if (clouds.empty()) throw InputError("iconv_clouds: need at least one cloud");
  for (const auto& c : clouds)
    if (c.empty()) throw InputError("iconv_clouds: every cloud must be nonempty");
  if (count == 0) throw InputError("iconv_clouds: count must be positive");
  const std::size_t k = clouds.size();
  std::vector<UpperBildPoint> out(count);
  for_each_chunk(count, kSampleChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Rng rng(derive_seed(seed, chunk));
    std::vector<double> alpha(k);
    for (std::size_t s = begin; s < end; ++s) {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (double& v : alpha) {
          v = rng.normal();
          norm2 += v * v;
        }
      } while (norm2 == 0.0);
      Quaternion q;
      for (std::size_t i = 0; i < k; ++i) {
        const UpperBildPoint& p = clouds[i][rng.below(clouds[i].size())];
        Quaternion axis;
        if (rng.coin()) {
          axis = rng.coin() ? Quaternion::unit_i() : -Quaternion::unit_i();
        } else {
          axis = random_unit_pure(rng);
        }
        q += (alpha[i] * alpha[i] / norm2) * (Quaternion::real(p.re) + p.im * axis);
      }
      out[s] = to_upper_bild(q);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Complex boundary

SupportBoundary support_boundary(const CMatrix& m, std::size_t angle_count) {
  if (angle_count < 8) throw InputError("support_boundary: angle_count must be at least 8");
  const std::size_t n = m.size();
  if (n == 0) throw InputError("support_boundary: empty matrix");
  SupportBoundary b;
  b.angles.resize(angle_count);
  b.support.resize(angle_count);
  b.points.resize(angle_count);
  for_each_chunk(angle_count, 16, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angle_count);
      const Complex rot = std::polar(1.0, -theta);
      CMatrix h(n);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) h(p, q) = 0.5 * (rot * m(p, q) + std::conj(rot * m(q, p)));
      const HermitianEigen e = eigh(h);
      const auto v = e.vector(n - 1);
      const Complex z = rayleigh(m, v);
      b.angles[k] = theta;
      b.support[k] = e.values.back();
      b.points[k] = {z.real(), z.imag()};
    }
  });
  return b;
}

CMatrix as_complex(const QMatrix& a) {
  const std::size_t n = a.size();
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Quaternion& q = a(i, j);
      if (q.y != 0.0 || q.z != 0.0) throw InputError("as_complex: entries must lie in span{1, i}");
      m(i, j) = {q.w, q.x};
    }
  }
  return m;
}

CircularityResult circularity_score(const SupportBoundary& b) {
  // A disk D(c, r) has h(theta) = Re(conj(e^{i theta}) c) + r: fit the constant
  // and first Fourier terms, then measure the worst residual. Boundary points
  // alone cannot tell a disk from a segment, whose points sit at two ends.
  const std::size_t count = b.support.size();
  if (count < 8 || b.angles.size() != count) throw InputError("circularity_score: need at least 8 support values");
  CircularityResult r;
  for (std::size_t k = 0; k < count; ++k) {
    r.radius += b.support[k];
    r.center += b.support[k] * std::cos(b.angles[k]);
    r.center_im += b.support[k] * std::sin(b.angles[k]);
  }
  const double m = static_cast<double>(count);
  r.radius /= m;
  r.center *= 2.0 / m;
  r.center_im *= 2.0 / m;
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double fit = r.center * std::cos(b.angles[k]) + r.center_im * std::sin(b.angles[k]) + r.radius;
    worst = std::max(worst, std::abs(b.support[k] - fit));
  }
  if (r.radius > 0.0) {
    r.deviation = worst / r.radius;
  } else {
    r.deviation = worst > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.is_circular = r.deviation < 1e-4;
  return r;
}

CircularityResult circularity_score(const BildCloud& b) {
  constexpr std::size_t kMinPoints = 1000;
  constexpr std::size_t kBins = 64;
  if (b.points.size() < kMinPoints) {
    throw InputError("circularity_score: need at least " + std::to_string(kMinPoints) + " points, got " +
                     std::to_string(b.points.size()));
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& p : b.points) {
    lo = std::min(lo, p.re);
    hi = std::max(hi, p.re);
  }
  CircularityResult r;
  r.center = 0.5 * (lo + hi);
  r.radius = 0.5 * (hi - lo);
  if (!(r.radius > 0.0)) {
    double top = 0.0;
    for (const auto& p : b.points) top = std::max(top, p.im);
    r.deviation = top;
    r.is_circular = top == 0.0;
    return r;
  }
  std::vector<double> peak(kBins, -1.0);
  const double width = (hi - lo) / static_cast<double>(kBins);
  for (const auto& p : b.points) {
    const auto bin = std::min<std::size_t>(kBins - 1, static_cast<std::size_t>((p.re - lo) / width));
    peak[bin] = std::max(peak[bin], p.im);
  }
  for (std::size_t k = 0; k < kBins; ++k) {
    if (peak[k] < 0.0) {
      // An empty bin inside the real extent cannot come from a filled half disk.
      r.deviation = std::max(r.deviation, 1.0);
      continue;
    }
    const double bin_lo = lo + width * static_cast<double>(k);
    const double nearest = std::clamp(r.center, bin_lo, bin_lo + width);
    const double offset = nearest - r.center;
    const double profile = std::sqrt(std::max(0.0, r.radius * r.radius - offset * offset));
    r.deviation = std::max(r.deviation, std::abs(peak[k] - profile) / r.radius);
  }
  r.is_circular = r.deviation < 5e-3;
  return r;
}

std::vector<Point2> to_points(std::span<const UpperBildPoint> points) {
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({p.re, p.im});
  return out;
}

double hull_coverage_ratio(std::span<const UpperBildPoint> points) {
  if (points.empty()) throw InputError("hull_coverage_ratio: no points");
  std::vector<Point2> both = to_points(points);
  const double upper = convex_hull_2d(both).area();
  const std::size_t m = both.size();
  for (std::size_t k = 0; k < m; ++k) both.push_back({both[k].x, -both[k].y});
  const double full = convex_hull_2d(both).area();
  if (full <= 0.0) return 1.0;
  return 2.0 * upper / full;
}

ModulusResult max_modulus_ascent(const QMatrix& a, std::uint64_t seed, int max_iterations) {
  if (a.size() == 0) throw InputError("max_modulus_ascent: empty matrix");
  const auto m = quad_form_components(a);
  Rng rng(seed);
  ModulusResult r;
  r.x.resize(a.size());
  draw_unit_vector(rng, r.x);
  r.q = quad_form_unchecked(a, r.x);
  Quaternion direction = unit_direction(r.q);
  for (int it = 0; it < max_iterations; ++it) {
    auto x = unflatten(top_vector(combine(m, coords(direction))));
    const Quaternion q = quad_form_unchecked(a, x);
    r.x = std::move(x);
    r.q = q;
    const Quaternion next = unit_direction(q);
    const double change = (next - direction).norm();
    direction = next;
    if (change <= 1e-11) break;
  }
  r.modulus = r.q.norm();
  return r;
}

}  // namespace qrange
