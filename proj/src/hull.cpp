#include "qrange/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qrange/error.hpp"

namespace qrange {

namespace {

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

}  // namespace

double Hull2D::area() const noexcept {
  const std::size_t m = vertices_.size();
  if (m < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Point2& a = vertices_[k];
    const Point2& b = vertices_[(k + 1) % m];
    twice += a.x * b.y - a.y * b.x;
  }
  return 0.5 * twice;
}

double Hull2D::distance(Point2 p) const {
  const std::size_t m = vertices_.size();
  if (m == 0) throw InputError("Hull2D::distance: empty hull");
  if (m == 1) return std::hypot(p.x - vertices_[0].x, p.y - vertices_[0].y);
  if (m == 2) return segment_distance(p, vertices_[0], vertices_[1]);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    const Point2& a = vertices_[k];
    const Point2& b = vertices_[(k + 1) % m];
    if (cross(a, b, p) < 0.0) inside = false;
    best = std::min(best, segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

Hull2D convex_hull_2d(std::span<const Point2> points) {
  if (points.empty()) throw InputError("convex_hull_2d: no points");
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() <= 2) return Hull2D(std::move(pts));

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return Hull2D(std::move(hull));
}

double hausdorff_distance(const Hull2D& a, const Hull2D& b) {
  // The distance to a convex set is convex, so its maximum over a polygon sits at a vertex.
  double d = 0.0;
  for (const Point2& p : a.vertices()) d = std::max(d, b.distance(p));
  for (const Point2& p : b.vertices()) d = std::max(d, a.distance(p));
  return d;
}

}  // namespace qrange
