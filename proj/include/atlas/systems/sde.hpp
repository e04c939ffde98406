#pragma once

#include <functional>

#include "atlas/rng.hpp"
#include "atlas/state_space.hpp"
#include "atlas/types.hpp"

namespace atlas::systems {

// Overdamped Langevin-style microscale simulator. `drift` writes b(x) into
// its output argument so the integrator can run without per-step allocation.
// An empty `diffusion` means unit isotropic noise.
struct SdeSystem {
  int dimension = 0;
  std::function<void(const Vector&, Vector&)> drift;
  std::function<void(const Vector&, Matrix&)> diffusion;
  double micro_dt = 0.0;
};

SdeSystem double_well_smooth();
SdeSystem double_well_rough();
SdeSystem three_well_smooth();
SdeSystem three_well_rough();

// Explicit scheme x <- x + b(x) h + sigma(x) sqrt(h) eta. Durations that are
// not multiples of micro_dt end with one shorter partial step. Throws if the
// state leaves the representable range, naming the offending step.
Vector euler_maruyama(const SdeSystem& sys, Vector x, double total_time, Rng& rng);

// Inclusive 1-D grid lo, lo+step, ..., hi.
PointList grid_1d(double lo, double hi, double step);

// Wraps an SDE system and a fixed initial point set as a StateSpace with
// Euclidean distance. Paths within one call consume the caller's stream
// sequentially; concurrent batches need separate Rng children.
StateSpace sde_space(SdeSystem sys, PointList initial);

}  // namespace atlas::systems
