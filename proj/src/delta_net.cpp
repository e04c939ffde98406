#include "atlas/delta_net.hpp"

#include <limits>
#include <stdexcept>

namespace atlas {

DeltaNet build_delta_net(const PointList& points, double delta, const DistanceFn& rho) {
  if (points.empty()) throw std::invalid_argument("build_delta_net: no points");
  if (!(delta > 0.0)) throw std::invalid_argument("build_delta_net: delta must be positive");

  DeltaNet net;
  net.delta = delta;
  for (const Vector& q : points) {
    bool separated = true;
    for (const Vector& y : net.points) {
      if (rho(q, y) <= delta) {
        separated = false;
        break;
      }
    }
    if (separated) net.points.push_back(q);
  }

  const int K = net.size();
  net.neighbors.assign(K, {});
  for (int k = 0; k < K; ++k) {
    for (int j = k + 1; j < K; ++j) {
      if (rho(net.points[k], net.points[j]) <= 2.0 * delta) {
        net.neighbors[k].push_back(j);
        net.neighbors[j].push_back(k);
      }
    }
  }
  // Filled in index order, so each list is already ascending.
  return net;
}

int nearest_net_index(const DeltaNet& net, const Vector& x, const DistanceFn& rho) {
  if (net.points.empty()) throw std::invalid_argument("nearest_net_index: empty net");
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int k = 0; k < net.size(); ++k) {
    double d = rho(x, net.points[k]);
    if (d < best_dist) {
      best_dist = d;
      best = k;
    }
  }
  return best;
}

}  // namespace atlas
