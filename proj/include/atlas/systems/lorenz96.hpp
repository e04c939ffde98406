#pragma once

#include <Eigen/Dense>

#include "atlas/rng.hpp"
#include "atlas/state_space.hpp"
#include "atlas/types.hpp"

namespace atlas::systems {

// Deterministic multiscale ODE: two slow coordinates driven by summary
// statistics of an 80-dimensional Lorenz-96 system,
//   x' = eps f(x) + g(y),   y' = lorenz96(y),
// integrated with classical RK4. Exposed states carry the fast block scaled
// by y_scale so the slow coordinates dominate distances.
struct Lorenz96Params {
  double eps = 0.01;
  double forcing = 8.0;
  double rk_h = 0.05;
  double jitter = 1e-5;   // perturbation of the (scaled) input per path
  double y_scale = 1e-4;
  int n_fast = 80;
};

// Cartesian form of r' = -(r - 3/4)(r - 3/2)(r - 2), theta' = r - 3/2.
// Stable limit cycles at r = 3/4 and r = 2 with an unstable one at r = 3/2.
Eigen::Vector2d lorenz96_slow_field(const Eigen::Vector2d& x);

// y_i' = -y_{i-2} y_{i-1} + y_{i-1} y_{i+1} - y_i + F with wraparound.
void lorenz96_fast_field(const Vector& y, double forcing, Vector& out);

// Coupling: block averages of alternating decades of the fast variables,
// recentred to be roughly mean zero, unit variance on the attractor.
Eigen::Vector2d lorenz96_coupling(const Vector& y);

// One RK4 step of the coupled 82-dimensional system on the UNSCALED state.
void lorenz96_rk4_step(Vector& state, const Lorenz96Params& params);

// StateSpace over scaled 82-dimensional states. simulate jitters each path's
// scaled input, then integrates; region coordinates are the two slow entries.
// Initial samples are standard normals with the fast block scaled, healed by
// running the simulator for heal_time.
StateSpace lorenz96_space(const Lorenz96Params& params, int n_init,
                          double heal_time, Rng& rng);

}  // namespace atlas::systems
