#include "atlas/systems/string_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace atlas::systems {

namespace {
constexpr int kN = kStringPoints;

double compute_norm_target() {
  double s = 0.0;
  for (int i = 0; i < kN; ++i) {
    double v = std::sin(M_PI * static_cast<double>(i) / (kN - 1));
    s += v * v;
  }
  return std::sqrt(s);
}
}  // namespace

double string_norm_target() {
  static const double target = compute_norm_target();
  return target;
}

Vector string_bridge(Rng& rng) {
  Vector w(kN);
  double c = 0.0;
  for (int i = 0; i < kN; ++i) {
    c += rng.normal();
    w[i] = c;
  }
  w.array() -= w[0];
  const double last = w[kN - 1];
  for (int i = 0; i < kN; ++i)
    w[i] -= (static_cast<double>(i) / (kN - 1)) * last;
  return w;
}

Vector string_smooth(const Vector& f) {
  if (f.size() != kN)
    throw std::invalid_argument("string_smooth: expected 100 grid values");
  Vector out(kN);
  for (int i = 0; i < kN; ++i) {
    int h = std::min({2, i, kN - 1 - i});
    out[i] = f.segment(i - h, 2 * h + 1).mean();
  }
  return out;
}

Vector string_apply_bridge(const Vector& f, const Vector& w) {
  Vector g = string_smooth(f + w / 100.0);
  // The ends are already exact zeros when f is a valid state (the bridge and
  // the boundary smoothing windows both vanish there); re-pin before the norm
  // constraint so the invariant is unconditional.
  g[0] = 0.0;
  g[kN - 1] = 0.0;
  double norm = g.norm();
  if (norm == 0.0)
    throw std::runtime_error("string step: degenerate all-zero state");
  g *= string_norm_target() / norm;
  return g;
}

Vector string_step(const Vector& f, Rng& rng) {
  return string_apply_bridge(f, string_bridge(rng));
}

Vector string_initial(Rng& rng) {
  Vector f = rng.normal_vector(kN);
  f[0] = 0.0;
  f[kN - 1] = 0.0;
  f *= string_norm_target() / f.norm();
  return f;
}

StateSpace string_space(int n_init, int heal_steps, Rng& rng) {
  if (n_init < 1)
    throw std::invalid_argument("string_space: need at least one initial point");
  if (heal_steps < 0)
    throw std::invalid_argument("string_space: negative healing");

  StateSpace space;
  space.dimension = kN;
  // Euclidean over the grid, rescaled to approximate the L2 norm of the
  // underlying function (sqrt of the ~1/100 grid spacing).
  space.distance = [](const Vector& a, const Vector& b) {
    return (a - b).norm() / 10.0;
  };
  space.simulate = [](const Vector& start, int n, double t0, Rng& path_rng) {
    // One time unit is one application of the map.
    auto steps = static_cast<long long>(std::llround(t0));
    if (steps < 0) throw std::invalid_argument("string simulate: negative time");
    PointList out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Vector f = start;
      for (long long s = 0; s < steps; ++s) f = string_step(f, path_rng);
      out.push_back(std::move(f));
    }
    return out;
  };
  space.initial_points.reserve(static_cast<std::size_t>(n_init));
  for (int k = 0; k < n_init; ++k) {
    Vector f = string_initial(rng);
    for (int s = 0; s < heal_steps; ++s) f = string_step(f, rng);
    space.initial_points.push_back(std::move(f));
  }
  return space;
}

}  // namespace atlas::systems
