#ifndef ATLAS_MODEL_HPP
#define ATLAS_MODEL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atlas/delta_net.hpp"
#include "atlas/types.hpp"

namespace atlas {

// One local model: a constant-coefficient SDE in chart coordinates, plus the
// chart-coordinate positions of the net point itself (always the origin) and
// of its neighbors.
struct Chart {
  int index = -1;
  Vector drift;                   // \bar b
  Matrix diffusion;               // \bar sigma, symmetric PSD
  std::map<int, Vector> centers;  // j -> chart coords of net point j; centers.at(index) == 0

  // Diagnostics kept in memory but not serialized: the ambient landmark
  // record (net point first, then its m burst endpoints) and the landmark
  // Gram spectrum the chart was embedded from, divided by the landmark
  // count so entries are squared coordinate scales (feed estimate_dim).
  PointList landmarks;
  Vector spectrum;
};

// Affine chart-to-chart change of coordinates. Row convention:
//   S(x) = (x - mu_from) T + mu_to
// applied to column vectors as T^t (x - mu_from) + mu_to.
struct TransitionMap {
  Vector mu_from;
  Vector mu_to;
  Matrix T;
};

inline Vector apply_transition(const TransitionMap& s, const Vector& x) {
  return s.T.transpose() * (x - s.mu_from) + s.mu_to;
}

struct AtlasModel {
  double delta = 0.0;
  int d = 0;
  double t0 = 0.0;
  double dt = 0.0;
  DeltaNet net;
  std::vector<Chart> charts;  // indexed by net point, charts[k].index == k
  std::map<std::pair<int, int>, TransitionMap> transitions;  // both directions per edge

  std::vector<std::string> warnings;  // collected during learning, not serialized

  const TransitionMap& transition(int from, int to) const;
  bool has_transition(int from, int to) const {
    return transitions.count({from, to}) != 0;
  }
};

}  // namespace atlas

#endif
