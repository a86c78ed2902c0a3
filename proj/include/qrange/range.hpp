#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qrange/cmatrix.hpp"
#include "qrange/hull.hpp"
#include "qrange/linalg.hpp"
#include "qrange/qmatrix.hpp"
#include "qrange/quaternion.hpp"

namespace qrange {

/// S_ij = |a_ij| + |a_ji| off the diagonal, 0 on it; 1/2 b^T S b = sum_{i != j} b_i b_j |a_ij|.
SymMatrix coupling_matrix(const QMatrix& a);

/// Real symmetric 4n x 4n matrices M_0..M_3 with x^T M_k x equal to the
/// k-th coordinate (w, x, y, z) of x* A x, where x in H^n is flattened as
/// (x_1.w, x_1.x, x_1.y, x_1.z, x_2.w, ...).
std::array<SymMatrix, 4> quad_form_components(const QMatrix& a);

std::vector<double> flatten(std::span<const Quaternion> x);
QVector unflatten(std::span<const double> v);

/// The family of disks D(d_k, r_k) whose union is the range.
struct DiskUnion {
  std::vector<double> centers;  ///< ascending
  std::vector<double> radii;
  double d_low = 0.0;
  double d_high = 0.0;
};

/// Nilpotent tree: a single disk at 0 whose radius is half the Perron root of
/// the coupling matrix, cross-checked against direct maximization within 1e-8.
/// Throws PreconditionError naming is_nilpotent or is_tree.
DiskUnion tree_disk(const QMatrix& a, double tol = 1e-10);

/// Nilpotent and cycle-free: the largest disk over the connected blocks.
DiskUnion cyclefree_disk(const QMatrix& a, double tol = 1e-10);

/// Real diagonal and off-diagonal part of A = D + N.
struct DiagonalSplit {
  std::vector<double> d;
  QMatrix n;
};
/// Throws PreconditionError("real_diagonal") if a diagonal entry has a pure part.
DiagonalSplit split_diagonal(const QMatrix& a);

/// r(d) on an inclusive uniform grid of grid_size centers over [min d_i, max d_i];
/// a single center when all d_i coincide. N must be a nilpotent tree.
DiskUnion disk_union(std::span<const double> d, const QMatrix& n, std::size_t grid_size = 512,
                     const QuadMaxOptions& options = {});

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// [min_k d_k - r_k, max_k d_k + r_k]
Interval real_extent(const DiskUnion& u);

/// Upper boundary of the union by a polar sweep of angle_count rays over
/// [0, pi] from the midpoint of the real extent.
std::vector<Point2> envelope(const DiskUnion& u, std::size_t angle_count = 2048);

/// Distance from p to the union of the hulls of adjacent disks (each hull lies
/// inside the range because the range is convex). 0 inside.
double distance_to_union(const DiskUnion& u, Point2 p);

/// Disk union of D + N that can also evaluate r(d) between grid centers.
/// distance() measures against the grid first; a point left outside is
/// measured again against `refine` extra exact centers in each grid interval
/// near it, which closes the O(h^2) gaps between adjacent grid disks.
class RefinedDiskUnion {
 public:
  RefinedDiskUnion(std::vector<double> d, const QMatrix& n, std::size_t grid_size = 512,
                   const QuadMaxOptions& options = {}, std::size_t refine = 8);

  const DiskUnion& grid() const noexcept { return grid_; }
  /// r(d) by constrained maximization.
  double radius(double d) const;
  /// Distance to the union with every radius multiplied by radius_scale. Not thread-safe (caches radii).
  double distance(Point2 p, double radius_scale = 1.0);
  /// Largest distance over `points`; the exact radii it needs are computed in parallel.
  double max_distance(std::span<const Point2> points, double radius_scale = 1.0);

 private:
  struct GridHit {
    double distance;
    std::size_t interval;  ///< nearest grid capsule
  };
  std::vector<double> compute_interval(std::size_t k) const;
  GridHit grid_hit(Point2 p, double radius_scale) const;
  std::pair<std::size_t, std::size_t> neighbourhood(std::size_t nearest) const;
  double refined(Point2 p, double radius_scale, GridHit h) const;
  void fill(const std::vector<std::size_t>& intervals);

  std::vector<double> d_;
  SymMatrix s_;
  QuadMaxOptions options_;
  DiskUnion grid_;
  std::size_t refine_;
  std::map<std::size_t, std::vector<double>> cache_;
};

struct BildCloud {
  std::vector<UpperBildPoint> points;
  std::uint64_t source_hash = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// to_upper_bild(x* A x) over `count` seeded uniform unit vectors.
BildCloud sample_bild(const QMatrix& a, std::size_t count, std::uint64_t seed);

/// Exact boundary points of the upper Bild: for each direction u at angle
/// phi in [0, pi] the top eigenvector x of cos(phi) M_0 + sin(phi) M_1
/// maximizes <u, x* A x>, and to_upper_bild(x* A x) is a support point.
std::vector<UpperBildPoint> bild_support(const QMatrix& a, std::size_t angle_count = 1024);

/// sample_bild followed by the bild_support points; uniform samples alone
/// rarely come close to the boundary.
BildCloud dense_bild(const QMatrix& a, std::size_t count, std::uint64_t seed, std::size_t angle_count = 1024);

/// sum_i alpha_i^2 a_i with alpha uniform on the unit sphere of R^k and a_i
/// uniform from cloud i. Each a_i is lifted from its class (re, im) to
/// re + im u_i, with u_i = +-i half of the time and uniform on S^2 otherwise.
std::vector<UpperBildPoint> iconv_clouds(std::span<const std::vector<UpperBildPoint>> clouds, std::size_t count,
                                         std::uint64_t seed);

struct SupportBoundary {
  std::vector<double> angles;   ///< 2 pi k / K
  std::vector<double> support;  ///< h(theta_k)
  std::vector<Point2> points;   ///< v* M v for the top eigenvector v
};

/// h(theta) = lambda_max(1/2 (e^{-i theta} M + e^{i theta} M*)). Throws InputError if angle_count < 8.
SupportBoundary support_boundary(const CMatrix& m, std::size_t angle_count);

/// M itself for a real quaternionic matrix.
CMatrix as_complex(const QMatrix& a);

struct CircularityResult {
  bool is_circular = false;
  double center = 0.0;
  double center_im = 0.0;
  double radius = 0.0;
  double deviation = 0.0;
};

/// Fits h(theta) = c . e(theta) + r over equally spaced angles; deviation is
/// the largest residual relative to r, circular below 1e-4.
CircularityResult circularity_score(const SupportBoundary& b);

/// Fits c and r from the real extent, then compares the highest point of each
/// of 64 real-axis bins with sqrt(r^2 - (x - c)^2) at the bin point nearest c.
/// Deviation is the largest residual relative to r; circular below 5e-3.
/// Throws InputError below 1000 points.
CircularityResult circularity_score(const BildCloud& b);

/// 2 area(hull(P)) / area(hull(P and its mirror image)); 1 when the full Bild is convex.
double hull_coverage_ratio(std::span<const UpperBildPoint> points);

std::vector<Point2> to_points(std::span<const UpperBildPoint> points);

struct ModulusResult {
  double modulus = 0.0;
  Quaternion q;  ///< x* A x at the maximizer
  QVector x;
};

/// Local maximizer of |x* A x| by alternating ascent from a seeded random
/// start: u = q / |q|, then x = top eigenvector of sum_k u_k M_k.
ModulusResult max_modulus_ascent(const QMatrix& a, std::uint64_t seed, int max_iterations = 1000);

}  // namespace qrange
