#include "atlas/systems/sde.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "atlas/systems/potentials.hpp"

namespace atlas::systems {

SdeSystem double_well_smooth() {
  SdeSystem sys;
  sys.dimension = 1;
  sys.drift = [](const Vector& x, Vector& out) { out[0] = -grad_u1(x[0]); };
  sys.micro_dt = 0.005;
  return sys;
}

SdeSystem double_well_rough() {
  SdeSystem sys;
  sys.dimension = 1;
  sys.drift = [](const Vector& x, Vector& out) { out[0] = -grad_v1(x[0]); };
  sys.micro_dt = 5e-5;
  return sys;
}

SdeSystem three_well_smooth() {
  SdeSystem sys;
  sys.dimension = 2;
  sys.drift = [](const Vector& x, Vector& out) { out = -grad_u2(x); };
  sys.micro_dt = 0.005;
  return sys;
}

SdeSystem three_well_rough() {
  SdeSystem sys;
  sys.dimension = 2;
  sys.drift = [](const Vector& x, Vector& out) { out = -grad_v2(x); };
  sys.micro_dt = 5e-5;
  return sys;
}

Vector euler_maruyama(const SdeSystem& sys, Vector x, double total_time, Rng& rng) {
  if (sys.micro_dt <= 0.0)
    throw std::invalid_argument("euler_maruyama: micro_dt must be positive");
  if (total_time < 0.0)
    throw std::invalid_argument("euler_maruyama: negative duration");
  if (x.size() != sys.dimension)
    throw std::invalid_argument("euler_maruyama: state dimension mismatch");

  const double h = sys.micro_dt;
  // Snap near-integer quotients so durations meant as exact multiples of the
  // step do not leave a stray partial step behind.
  auto full = static_cast<long long>(std::floor(total_time / h + 1e-9));
  double rem = total_time - static_cast<double>(full) * h;
  if (rem < 1e-9 * h) rem = 0.0;

  Vector b(x.size()), eta(x.size());
  Matrix s;
  const bool unit_noise = !static_cast<bool>(sys.diffusion);
  if (!unit_noise) s.resize(x.size(), x.size());

  auto advance = [&](double dt) {
    sys.drift(x, b);
    rng.fill_normal(eta);
    if (unit_noise) {
      x += b * dt + std::sqrt(dt) * eta;
    } else {
      sys.diffusion(x, s);
      x += b * dt + std::sqrt(dt) * (s * eta);
    }
  };

  for (long long k = 0; k < full; ++k) {
    advance(h);
    if (!x.allFinite())
      throw std::runtime_error("euler_maruyama: non-finite state at micro step " +
                               std::to_string(k + 1) + " of " +
                               std::to_string(full));
  }
  if (rem > 0.0) {
    advance(rem);
    if (!x.allFinite())
      throw std::runtime_error(
          "euler_maruyama: non-finite state at the final partial step");
  }
  return x;
}

PointList grid_1d(double lo, double hi, double step) {
  if (step <= 0.0) throw std::invalid_argument("grid_1d: step must be positive");
  auto count = static_cast<long long>(std::llround((hi - lo) / step)) + 1;
  if (count < 1) throw std::invalid_argument("grid_1d: empty range");
  PointList pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    Vector v(1);
    v[0] = lo + step * static_cast<double>(i);
    pts.push_back(std::move(v));
  }
  return pts;
}

StateSpace sde_space(SdeSystem sys, PointList initial) {
  StateSpace space;
  space.dimension = sys.dimension;
  space.distance = euclidean_distance();
  space.initial_points = std::move(initial);
  auto shared = std::make_shared<SdeSystem>(std::move(sys));
  space.simulate = [shared](const Vector& start, int n, double t0, Rng& rng) {
    PointList out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      out.push_back(euler_maruyama(*shared, start, t0, rng));
    return out;
  };
  return space;
}

}  // namespace atlas::systems
