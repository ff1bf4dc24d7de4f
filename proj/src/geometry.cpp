#include "d2dsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d2dsim {

void Window::validate() const {
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw std::invalid_argument("window: x_max must be > x_min and y_max > y_min");
  }
}

PointSet sample_ppp(double intensity, const Window& window, RandomStream& rng) {
  if (intensity < 0.0) {
    throw std::invalid_argument("sample_ppp: intensity must be >= 0");
  }
  window.validate();
  PointSet out;
  const int n = intensity > 0.0 ? rng.poisson(intensity * window.area()) : 0;
  out.points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform(window.x_min, window.x_max);
    const double y = rng.uniform(window.y_min, window.y_max);
    out.points.push_back({x, y});
  }
  return out;
}

double distance(Point a, Point b, const Window& window) {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  if (window.boundary == BoundaryMode::kTorus) {
    // Points lie inside the window, so |dx| <= width and the nearest image
    // is either the direct offset or one wrap.
    dx = std::min(dx, window.width() - dx);
    dy = std::min(dy, window.height() - dy);
  }
  return std::sqrt(dx * dx + dy * dy);
}

NeighborIndex::NeighborIndex(const PointSet& points, const Window& window,
                             double radius_hint)
    : window_(window), points_(points.points) {
  window_.validate();
  if (radius_hint < 0.0) {
    throw std::invalid_argument("NeighborIndex: radius_hint must be >= 0");
  }
  const double side = std::max(window_.width(), window_.height());
  cell_ = std::max(radius_hint, side / 64.0);
  // Cells tile the window exactly so that in torus mode a shift of nx_
  // columns equals a shift of one full window width.
  nx_ = std::max(1, static_cast<int>(std::floor(window_.width() / cell_)));
  ny_ = std::max(1, static_cast<int>(std::floor(window_.height() / cell_)));
  cw_ = window_.width() / nx_;
  ch_ = window_.height() / ny_;
  buckets_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), {});
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    const int ix = cell_x(points_[static_cast<std::size_t>(i)].x);
    const int iy = cell_y(points_[static_cast<std::size_t>(i)].y);
    buckets_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
             static_cast<std::size_t>(ix)]
        .push_back(i);
  }
}

int NeighborIndex::cell_x(double x) const {
  int ix = static_cast<int>(std::floor((x - window_.x_min) / cw_));
  return std::clamp(ix, 0, nx_ - 1);
}

int NeighborIndex::cell_y(double y) const {
  int iy = static_cast<int>(std::floor((y - window_.y_min) / ch_));
  return std::clamp(iy, 0, ny_ - 1);
}

std::vector<int> NeighborIndex::ball(Point center, double radius) const {
  if (radius < 0.0) {
    throw std::invalid_argument("NeighborIndex::ball: radius must be >= 0");
  }
  std::vector<int> result;
  const bool torus = window_.boundary == BoundaryMode::kTorus;

  // Cell span covering [center - radius, center + radius] in each axis.
  // Torus wraps out-of-range indices (never visiting a cell twice), plain
  // clamps the span to the grid.
  int ix_lo = static_cast<int>(std::floor((center.x - radius - window_.x_min) / cw_));
  int ix_hi = static_cast<int>(std::floor((center.x + radius - window_.x_min) / cw_));
  int iy_lo = static_cast<int>(std::floor((center.y - radius - window_.y_min) / ch_));
  int iy_hi = static_cast<int>(std::floor((center.y + radius - window_.y_min) / ch_));
  if (!torus) {
    ix_lo = std::max(ix_lo, 0);
    ix_hi = std::min(ix_hi, nx_ - 1);
    iy_lo = std::max(iy_lo, 0);
    iy_hi = std::min(iy_hi, ny_ - 1);
    if (ix_hi < ix_lo || iy_hi < iy_lo) {
      return result;
    }
  }

  const int count_x = torus ? std::min(ix_hi - ix_lo + 1, nx_) : ix_hi - ix_lo + 1;
  const int count_y = torus ? std::min(iy_hi - iy_lo + 1, ny_) : iy_hi - iy_lo + 1;

  auto wrap = [](int i, int n) { return ((i % n) + n) % n; };

  for (int dy = 0; dy < count_y; ++dy) {
    const int iy = torus ? wrap(iy_lo + dy, ny_) : iy_lo + dy;
    for (int dx = 0; dx < count_x; ++dx) {
      const int ix = torus ? wrap(ix_lo + dx, nx_) : ix_lo + dx;
      for (int idx : buckets_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
                              static_cast<std::size_t>(ix)]) {
        if (distance(center, points_[static_cast<std::size_t>(idx)], window_) <= radius) {
          result.push_back(idx);
        }
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<int> NeighborIndex::ball_around(int member, double radius) const {
  std::vector<int> result = ball(points_[static_cast<std::size_t>(member)], radius);
  auto it = std::lower_bound(result.begin(), result.end(), member);
  if (it != result.end() && *it == member) {
    result.erase(it);
  }
  return result;
}

}  // namespace d2dsim
