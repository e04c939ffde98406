#pragma once

#include <cmath>

#include "atlas/types.hpp"

namespace atlas::systems {

// Smooth double well with minima at 0 and 1 and barrier height 1 at x = 1/2.
inline double u1(double x) {
  double a = x * (x - 1.0);
  return 16.0 * a * a;
}

inline double grad_u1(double x) { return 32.0 * x * (x - 1.0) * (2.0 * x - 1.0); }

// Rough variant: the same well with a fast cosine ripple on top.
inline double v1(double x) { return u1(x) + std::cos(100.0 * M_PI * x) / 6.0; }

inline double grad_v1(double x) {
  return grad_u1(x) - (100.0 * M_PI / 6.0) * std::sin(100.0 * M_PI * x);
}

namespace detail {
inline const double kWellX[3] = {0.0, 1.5, 0.8};
inline const double kWellY[3] = {0.0, 0.0, 1.05};
inline const double kWellInvWidth[3] = {5.0, 5.0, 6.0};
}  // namespace detail

// Three-well potential -ln(sum_i exp(-|x - p_i|^2 / c_i)), evaluated in
// log-sum-exp form: the naive sum underflows a few units away from the wells.
inline double u2(const Vector& x) {
  using namespace detail;
  double a[3];
  double m = -1e300;
  for (int i = 0; i < 3; ++i) {
    double dx = x[0] - kWellX[i];
    double dy = x[1] - kWellY[i];
    a[i] = -(dx * dx + dy * dy) * kWellInvWidth[i];
    m = std::max(m, a[i]);
  }
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += std::exp(a[i] - m);
  return -(m + std::log(s));
}

inline Vector grad_u2(const Vector& x) {
  using namespace detail;
  double a[3];
  double m = -1e300;
  for (int i = 0; i < 3; ++i) {
    double dx = x[0] - kWellX[i];
    double dy = x[1] - kWellY[i];
    a[i] = -(dx * dx + dy * dy) * kWellInvWidth[i];
    m = std::max(m, a[i]);
  }
  double w[3];
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    w[i] = std::exp(a[i] - m);
    total += w[i];
  }
  Vector g = Vector::Zero(2);
  for (int i = 0; i < 3; ++i) {
    double coef = (w[i] / total) * 2.0 * kWellInvWidth[i];
    g[0] += coef * (x[0] - kWellX[i]);
    g[1] += coef * (x[1] - kWellY[i]);
  }
  return g;
}

inline double v2(const Vector& x) {
  return u2(x) + std::cos(100.0 * M_PI * x[0]) / 6.0 +
         std::cos(100.0 * M_PI * x[1]) / 6.0;
}

inline Vector grad_v2(const Vector& x) {
  Vector g = grad_u2(x);
  g[0] -= (100.0 * M_PI / 6.0) * std::sin(100.0 * M_PI * x[0]);
  g[1] -= (100.0 * M_PI / 6.0) * std::sin(100.0 * M_PI * x[1]);
  return g;
}

}  // namespace atlas::systems
