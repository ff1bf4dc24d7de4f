#pragma once

#include <cstdint>
#include <vector>

#include "d2dsim/random.hpp"

namespace d2dsim {

enum class BoundaryMode { kPlain, kTorus };

struct Point {
  double x{0.0};
  double y{0.0};
  bool operator==(const Point&) const = default;
};

// Rectangular simulation window. Torus mode wraps distances around the
// window edges, which removes boundary effects in statistical checks.
struct Window {
  double x_min{-5.0};
  double x_max{5.0};
  double y_min{-5.0};
  double y_max{5.0};
  BoundaryMode boundary{BoundaryMode::kPlain};

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  void validate() const;  // throws std::invalid_argument if degenerate

  bool operator==(const Window&) const = default;
};

// Planar point pattern; the vector position is the point's stable index.
struct PointSet {
  std::vector<Point> points;

  int size() const { return static_cast<int>(points.size()); }
  const Point& operator[](int i) const { return points[static_cast<std::size_t>(i)]; }
};

// Homogeneous Poisson point process on the window: count ~ Poisson(intensity * area),
// locations iid uniform.
PointSet sample_ppp(double intensity, const Window& window, RandomStream& rng);

// Euclidean distance; in torus mode the minimum over wrapped images.
double distance(Point a, Point b, const Window& window);

// Uniform-grid index for fixed-radius neighbor queries. Immutable after
// construction and safe to share across threads. Query results are sorted
// by point index and match a brute-force scan exactly.
class NeighborIndex {
 public:
  NeighborIndex(const PointSet& points, const Window& window, double radius_hint);

  // All point indices within `radius` of `center` (closed ball).
  std::vector<int> ball(Point center, double radius) const;

  // Same, centered on a member point, excluding the member itself.
  std::vector<int> ball_around(int member, double radius) const;

  double cell_size() const { return cell_; }

 private:
  int cell_x(double x) const;
  int cell_y(double y) const;

  Window window_;
  std::vector<Point> points_;
  double cell_;  // nominal cell size (>= radius hint)
  double cw_;    // actual per-axis cell sizes; tile the window exactly
  double ch_;
  int nx_;
  int ny_;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace d2dsim
