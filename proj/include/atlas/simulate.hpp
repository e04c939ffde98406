#ifndef ATLAS_SIMULATE_HPP
#define ATLAS_SIMULATE_HPP

#include "atlas/model.hpp"
#include "atlas/rng.hpp"

namespace atlas {

// Position of the surrogate process: chart coordinates x inside chart i,
// with |x| <= 2 delta maintained by the wall.
struct AtlasState {
  int chart = 0;
  Vector x;
};

// Soft confinement: identity up to 3 delta / 2, then a smooth radial
// compression with asymptote 2 delta,
//   W(x) = (x/|x|) (2 delta - (delta/2) exp(3 - 2|x|/delta)).
// C1 at the junction; |W| < 2 delta (saturating to equality only when the
// exponential correction falls below double precision).
Vector wall(const Vector& x, double delta);

// One move of duration dt: pick the nearest chart center among the current
// chart and its neighbors (ties to the smallest index), change coordinates if
// that chart is not the current one, take an Euler step with the local
// coefficients, then apply the wall.
AtlasState step_with_dt(const AtlasModel& model, AtlasState s, double dt, Rng& rng);

// The standard move, duration model.dt.
AtlasState step(const AtlasModel& model, AtlasState s, Rng& rng);

struct AtlasTrajectory {
  std::vector<double> times;
  std::vector<AtlasState> states;  // states[0] is the initial state
};

AtlasTrajectory run(const AtlasModel& model, AtlasState s0, long n_steps, Rng& rng);

// Draws an approximate stationary sample: n_steps full moves, then one move
// of duration u ~ Uniform(0, dt), which unbiases the discrete-time sampling
// of occupation statistics.
AtlasState sample_qhat(const AtlasModel& model, AtlasState s0, long n_steps, Rng& rng);

// Piecewise-constant return to the ambient space: the net point of the
// current chart.
const Vector& lift(const AtlasModel& model, const AtlasState& s);

// Start a trajectory from an ambient point: nearest net chart, origin
// coordinates.
AtlasState state_from_ambient(const AtlasModel& model, const Vector& ambient,
                              const DistanceFn& rho);

}  // namespace atlas

#endif
