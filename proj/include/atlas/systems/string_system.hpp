#pragma once

#include "atlas/rng.hpp"
#include "atlas/state_space.hpp"
#include "atlas/types.hpp"

namespace atlas::systems {

// Random walk on discretized functions f: [0,1] -> R sampled at 100 even grid
// points, endpoints pinned to 0 and Euclidean norm pinned to that of
// sin(pi x). One step adds a scaled Brownian bridge, smooths, renormalizes.

inline constexpr int kStringPoints = 100;

// ||sin(pi x)|| on the grid, the conserved norm (about 7.07).
double string_norm_target();

// Brownian bridge on the grid: cumulative normal sums with the first entry
// subtracted, then deflated by grid_coord * (final entry) so both ends are 0.
Vector string_bridge(Rng& rng);

// Five-point centered moving average; the window shrinks to 3 then 1 points
// at the boundary, so the pinned endpoints pass through unchanged.
Vector string_smooth(const Vector& f);

// Deterministic half of a step: f + w/100, smoothed, endpoints re-pinned,
// renormalized. Odd under (f, w) -> (-f, -w) since every stage is linear up
// to the norm constraint.
Vector string_apply_bridge(const Vector& f, const Vector& w);

Vector string_step(const Vector& f, Rng& rng);

// Uniform draw from the constraint sphere: pinned, renormalized Gaussian.
Vector string_initial(Rng& rng);

// StateSpace over string states. Time is measured in steps of the map, so
// simulate(start, n, t0, rng) runs round(t0) steps per path. Initial samples
// are random sphere points run through `heal_steps` steps to wash out the
// rough directions. Distance is Euclidean/10, approximating the L2 norm of
// the underlying functions (grid spacing ~ 1/100 under the square root).
StateSpace string_space(int n_init, int heal_steps, Rng& rng);

}  // namespace atlas::systems
