#pragma once

#include "atlas/state_space.hpp"
#include "atlas/types.hpp"

namespace atlas::systems {

// Binary disc images over a fixed pixel mesh: pixel (i, j) sits at
// (-1.5 + 0.04 i, -1.5 + 0.04 j) for i < 125, j < 100, covering
// [-1.5, 3.5) x [-1.5, 2.5). A point maps to the indicator of the radius-1/2
// disc around it, flattened row-major in i.
class ImageGrid {
 public:
  static constexpr int kNx = 125;
  static constexpr int kNy = 100;
  static constexpr double kX0 = -1.5;
  static constexpr double kY0 = -1.5;
  static constexpr double kSpacing = 0.04;
  static constexpr double kRadius = 0.5;
  // One pixel flip changes squared Euclidean distance by 1; this factor makes
  // the rescaled Hamming count locally comparable to |x - x'|^2 in the plane.
  static constexpr double kDistScale = kSpacing * kSpacing / 2.0;

  int size() const { return kNx * kNy; }
  double pixel_x(int i) const { return kX0 + kSpacing * i; }
  double pixel_y(int j) const { return kY0 + kSpacing * j; }

  Vector embed(const Vector& point) const;

  // Average of lit pixel centers. Throws on an all-zero image.
  Vector approx_invert(const Vector& image) const;

  double distance(const Vector& a, const Vector& b) const {
    return kDistScale * (a - b).squaredNorm();
  }
};

// Lifts a planar StateSpace to image space: simulate runs the base system
// between approx_invert and embed, distance is the rescaled Hamming count,
// and region membership is evaluated on the inverted planar point.
StateSpace image_space(StateSpace base);

}  // namespace atlas::systems
