#pragma once

#include <span>
#include <vector>

namespace qrange {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Convex polygon with counterclockwise vertices and no collinear triples.
/// One vertex is a point and two are a segment.
class Hull2D {
 public:
  Hull2D() = default;
  explicit Hull2D(std::vector<Point2> ccw_vertices) : vertices_(std::move(ccw_vertices)) {}

  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  bool empty() const noexcept { return vertices_.empty(); }
  double area() const noexcept;
  /// Euclidean distance from p to the hull; 0 inside.
  double distance(Point2 p) const;
  bool contains(Point2 p, double slack = 1e-9) const { return distance(p) <= slack; }

 private:
  std::vector<Point2> vertices_;
};

/// Andrew's monotone chain. Throws InputError on an empty input.
Hull2D convex_hull_2d(std::span<const Point2> points);

/// Two-sided Hausdorff distance between the convex regions.
double hausdorff_distance(const Hull2D& a, const Hull2D& b);

}  // namespace qrange
