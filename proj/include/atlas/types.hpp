#ifndef ATLAS_TYPES_HPP
#define ATLAS_TYPES_HPP

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace atlas {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using PointList = std::vector<Vector>;
using DistanceFn = std::function<double(const Vector&, const Vector&)>;

inline DistanceFn euclidean_distance() {
  return [](const Vector& a, const Vector& b) { return (a - b).norm(); };
}

}  // namespace atlas

#endif
