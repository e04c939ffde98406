#ifndef ATLAS_DELTA_NET_HPP
#define ATLAS_DELTA_NET_HPP

#include <vector>

#include "atlas/types.hpp"

namespace atlas {

// A delta-net over a point set: net points pairwise at least delta apart,
// every input point within delta of some net point. Two net points are
// neighbors when they are within 2*delta of each other.
struct DeltaNet {
  double delta = 0.0;
  PointList points;                         // insertion order
  std::vector<std::vector<int>> neighbors;  // ascending, self excluded

  int size() const { return int(points.size()); }
};

// Greedy construction in input order: a point joins the net when it is
// strictly farther than delta from every current net point.
DeltaNet build_delta_net(const PointList& points, double delta, const DistanceFn& rho);

// Index of the closest net point; equidistant ties resolve to the smallest
// index. Used to start trajectories from ambient initial conditions.
int nearest_net_index(const DeltaNet& net, const Vector& x, const DistanceFn& rho);

}  // namespace atlas

#endif
