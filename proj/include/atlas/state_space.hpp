#ifndef ATLAS_STATE_SPACE_HPP
#define ATLAS_STATE_SPACE_HPP

#include <functional>

#include "atlas/rng.hpp"
#include "atlas/types.hpp"

namespace atlas {

// Everything the learner is allowed to know about a microscale system: how
// far apart two states are, how to run an ensemble of short bursts, and a
// point set covering the region of interest. The simulator is a black box;
// it may be an SDE integrator, an embedded copy of one, or anything else.
struct StateSpace {
  int dimension = 0;
  DistanceFn distance;

  // n independent bursts of duration t0 started at `start`; returns the n
  // endpoints. All randomness comes from `rng`.
  std::function<PointList(const Vector& start, int n, double t0, Rng& rng)> simulate;

  PointList initial_points;

  // Coordinates that region predicates are written in. Identity for plain
  // systems; embedded systems map back through their approximate inverse.
  std::function<Vector(const Vector&)> region_coords;
};

inline Vector to_region_coords(const StateSpace& space, const Vector& x) {
  return space.region_coords ? space.region_coords(x) : x;
}

}  // namespace atlas

#endif
