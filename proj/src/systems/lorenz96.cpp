#include "atlas/systems/lorenz96.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace atlas::systems {

Eigen::Vector2d lorenz96_slow_field(const Eigen::Vector2d& x) {
  const double r = x.norm();
  if (r < 1e-12) return Eigen::Vector2d::Zero();
  const double rdot = -(r - 0.75) * (r - 1.5) * (r - 2.0);
  // Radial part plus rotation at angular speed r - 3/2.
  return (rdot / r) * x + (r - 1.5) * Eigen::Vector2d(-x[1], x[0]);
}

void lorenz96_fast_field(const Vector& y, double forcing, Vector& out) {
  const int n = static_cast<int>(y.size());
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    const double ym2 = y[(i - 2 + n) % n];
    const double ym1 = y[(i - 1 + n) % n];
    const double yp1 = y[(i + 1) % n];
    out[i] = -ym2 * ym1 + ym1 * yp1 - y[i] + forcing;
  }
}

Eigen::Vector2d lorenz96_coupling(const Vector& y) {
  // First component averages decades 0, 2, 4, 6 of the fast block; second
  // the complement. The offset centers both near zero on the attractor.
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < static_cast<int>(y.size()); ++i) {
    if ((i / 10) % 2 == 0)
      s1 += y[i];
    else
      s2 += y[i];
  }
  return {s1 / 320.0 - 0.2925, s2 / 320.0 - 0.2925};
}

namespace {

struct CoupledField {
  const Lorenz96Params& params;
  void operator()(const Vector& v, Vector& out) const {
    out.resize(v.size());
    Eigen::Vector2d x = v.head<2>();
    const auto y = v.tail(v.size() - 2);
    Eigen::Vector2d dx =
        params.eps * lorenz96_slow_field(x) + lorenz96_coupling(y);
    out.head<2>() = dx;
    Vector dy;
    lorenz96_fast_field(y, params.forcing, dy);
    out.tail(v.size() - 2) = dy;
  }
};

void rk4_step_with(const CoupledField& field, Vector& state, double h,
                   Vector& k1, Vector& k2, Vector& k3, Vector& k4, Vector& tmp) {
  field(state, k1);
  tmp = state + (0.5 * h) * k1;
  field(tmp, k2);
  tmp = state + (0.5 * h) * k2;
  field(tmp, k3);
  tmp = state + h * k3;
  field(tmp, k4);
  state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

void lorenz96_rk4_step(Vector& state, const Lorenz96Params& params) {
  if (state.size() != params.n_fast + 2)
    throw std::invalid_argument("lorenz96: state dimension mismatch");
  CoupledField field{params};
  Vector k1, k2, k3, k4, tmp;
  rk4_step_with(field, state, params.rk_h, k1, k2, k3, k4, tmp);
}

StateSpace lorenz96_space(const Lorenz96Params& params, int n_init,
                          double heal_time, Rng& rng) {
  if (n_init < 1)
    throw std::invalid_argument("lorenz96_space: need at least one initial point");
  auto shared = std::make_shared<Lorenz96Params>(params);
  const int dim = params.n_fast + 2;

  auto integrate = [shared](Vector scaled, double total_time, Rng& path_rng,
                            bool jitter) {
    const Lorenz96Params& p = *shared;
    if (jitter && p.jitter > 0.0)
      scaled += p.jitter * path_rng.normal_vector(scaled.size());
    Vector state = scaled;
    state.tail(p.n_fast) /= p.y_scale;
    const double h = p.rk_h;
    auto full = static_cast<long long>(std::floor(total_time / h + 1e-9));
    double rem = total_time - static_cast<double>(full) * h;
    if (rem < 1e-9 * h) rem = 0.0;
    CoupledField field{p};
    Vector k1, k2, k3, k4, tmp;
    for (long long k = 0; k < full; ++k) {
      rk4_step_with(field, state, h, k1, k2, k3, k4, tmp);
      if (!state.allFinite())
        throw std::runtime_error("lorenz96: non-finite state at step " +
                                 std::to_string(k + 1));
    }
    if (rem > 0.0) {
      rk4_step_with(field, state, rem, k1, k2, k3, k4, tmp);
      if (!state.allFinite())
        throw std::runtime_error("lorenz96: non-finite state at the final step");
    }
    state.tail(p.n_fast) *= p.y_scale;
    return state;
  };

  StateSpace space;
  space.dimension = dim;
  space.distance = euclidean_distance();
  space.simulate = [integrate](const Vector& start, int n, double t0,
                               Rng& path_rng) {
    PointList out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      out.push_back(integrate(start, t0, path_rng, true));
    return out;
  };
  space.region_coords = [](const Vector& v) -> Vector { return v.head(2); };

  space.initial_points.reserve(static_cast<std::size_t>(n_init));
  for (int k = 0; k < n_init; ++k) {
    Vector scaled = rng.normal_vector(dim);
    scaled.tail(params.n_fast) *= params.y_scale;
    space.initial_points.push_back(integrate(scaled, heal_time, rng, false));
  }
  return space;
}

}  // namespace atlas::systems
