#include "atlas/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace atlas {

Vector wall(const Vector& x, double delta) {
  double r = x.norm();
  if (r <= 1.5 * delta) return x;
  double target = 2.0 * delta - 0.5 * delta * std::exp(3.0 - 2.0 * r / delta);
  return x * (target / r);
}

AtlasState step_with_dt(const AtlasModel& model, AtlasState s, double dt, Rng& rng) {
  const Chart& here = model.charts[s.chart];

  // Nearest center among the current chart (its own center is the origin)
  // and its neighbors; the map iterates keys in ascending order, so an exact
  // tie resolves to the smallest index.
  int target = s.chart;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [j, c] : here.centers) {
    double d2 = (s.x - c).squaredNorm();
    if (d2 < best) {
      best = d2;
      target = j;
    }
  }

  if (target != s.chart) {
    s.x = apply_transition(model.transition(s.chart, target), s.x);
    s.chart = target;
  }

  const Chart& ch = model.charts[s.chart];
  Vector eta = rng.normal_vector(model.d);
  s.x += ch.drift * dt + std::sqrt(dt) * (ch.diffusion * eta);
  s.x = wall(s.x, model.delta);
  return s;
}

AtlasState step(const AtlasModel& model, AtlasState s, Rng& rng) {
  return step_with_dt(model, s, model.dt, rng);
}

AtlasTrajectory run(const AtlasModel& model, AtlasState s0, long n_steps, Rng& rng) {
  AtlasTrajectory traj;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(s0);
  AtlasState s = std::move(s0);
  for (long i = 1; i <= n_steps; ++i) {
    s = step(model, s, rng);
    traj.times.push_back(double(i) * model.dt);
    traj.states.push_back(s);
  }
  return traj;
}

AtlasState sample_qhat(const AtlasModel& model, AtlasState s0, long n_steps, Rng& rng) {
  AtlasState s = std::move(s0);
  for (long i = 0; i < n_steps; ++i) s = step(model, s, rng);
  double u = rng.uniform() * model.dt;
  return step_with_dt(model, s, u, rng);
}

const Vector& lift(const AtlasModel& model, const AtlasState& s) {
  if (s.chart < 0 || s.chart >= model.net.size())
    throw std::out_of_range("lift: chart index out of range");
  return model.net.points[s.chart];
}

AtlasState state_from_ambient(const AtlasModel& model, const Vector& ambient,
                              const DistanceFn& rho) {
  return {nearest_net_index(model.net, ambient, rho), Vector::Zero(model.d)};
}

}  // namespace atlas
