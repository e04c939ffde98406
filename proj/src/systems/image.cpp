#include "atlas/systems/image.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace atlas::systems {

Vector ImageGrid::embed(const Vector& point) const {
  if (point.size() != 2)
    throw std::invalid_argument("image embed: point must be planar");
  Vector img = Vector::Zero(kNx * kNy);
  const double px = point[0];
  const double py = point[1];
  // Only pixels inside the bounding square of the disc can light up.
  int ilo = std::max(0, static_cast<int>(std::floor((px - kRadius - kX0) / kSpacing)));
  int ihi = std::min(kNx - 1, static_cast<int>(std::ceil((px + kRadius - kX0) / kSpacing)));
  int jlo = std::max(0, static_cast<int>(std::floor((py - kRadius - kY0) / kSpacing)));
  int jhi = std::min(kNy - 1, static_cast<int>(std::ceil((py + kRadius - kY0) / kSpacing)));
  const double r2 = kRadius * kRadius;
  for (int i = ilo; i <= ihi; ++i) {
    double dx = pixel_x(i) - px;
    for (int j = jlo; j <= jhi; ++j) {
      double dy = pixel_y(j) - py;
      if (dx * dx + dy * dy < r2) img[i * kNy + j] = 1.0;
    }
  }
  return img;
}

Vector ImageGrid::approx_invert(const Vector& image) const {
  if (image.size() != kNx * kNy)
    throw std::invalid_argument("image invert: wrong pixel count");
  double sx = 0.0, sy = 0.0;
  long lit = 0;
  for (int k = 0; k < image.size(); ++k) {
    if (image[k] > 0.5) {
      sx += pixel_x(k / kNy);
      sy += pixel_y(k % kNy);
      ++lit;
    }
  }
  if (lit == 0) throw std::runtime_error("image invert: empty image");
  Vector point(2);
  point << sx / static_cast<double>(lit), sy / static_cast<double>(lit);
  return point;
}

StateSpace image_space(StateSpace base) {
  if (base.dimension != 2)
    throw std::invalid_argument("image_space: base system must be planar");
  auto shared = std::make_shared<StateSpace>(std::move(base));
  ImageGrid grid;

  StateSpace space;
  space.dimension = grid.size();
  space.distance = [grid](const Vector& a, const Vector& b) {
    return grid.distance(a, b);
  };
  space.simulate = [shared, grid](const Vector& start, int n, double t0, Rng& rng) {
    Vector planar = grid.approx_invert(start);
    PointList ends = shared->simulate(planar, n, t0, rng);
    for (Vector& e : ends) e = grid.embed(e);
    return ends;
  };
  space.region_coords = [shared, grid](const Vector& image) {
    return to_region_coords(*shared, grid.approx_invert(image));
  };
  space.initial_points.reserve(shared->initial_points.size());
  for (const Vector& p : shared->initial_points)
    space.initial_points.push_back(grid.embed(p));
  return space;
}

}  // namespace atlas::systems
