#ifndef ATLAS_LEARN_HPP
#define ATLAS_LEARN_HPP

#include <cstdint>
#include <map>
#include <utility>

#include "atlas/model.hpp"
#include "atlas/rng.hpp"
#include "atlas/state_space.hpp"

namespace atlas {

struct LearnParams {
  double delta = 0.0;
  int d = 1;
  int m = 0;       // landmarks per net point; 0 resolves to 2*d
  int p = 10000;   // burst ensemble size per chart
  double t0 = 0.0; // burst duration; <= 0 resolves to delta^2
  double dt = 0.0; // surrogate step; <= 0 resolves to t0/5
  int threads = 1;

  // Fills defaults and validates ranges; throws std::invalid_argument naming
  // the offending field.
  LearnParams resolved() const;
};

// A_k: the net point itself followed by m burst endpoints at time t0.
PointList generate_landmarks(const StateSpace& space, const Vector& y, int m,
                             double t0, Rng& rng);

// Per-chart output of the embedding + estimation stage. member_images[j]
// holds the chart-k coordinates of A_j (rows aligned with A_j), which is all
// the transition fit needs later.
struct ChartBuild {
  Chart chart;
  std::map<int, Matrix> member_images;
  Matrix endpoint_coords;  // p x d
  std::vector<std::string> warnings;
};

// Embeds the union of A_j over j in {k} and its neighbors, extends the p
// burst endpoints from y_k into the chart, translates so y_k sits at the
// origin, and estimates drift and diffusion. Throws on landmark sets of rank
// below d ("degenerate landmarks").
ChartBuild learn_chart(const StateSpace& space, const DeltaNet& net, int k,
                       const std::vector<PointList>& landmarks,
                       const LearnParams& params, Rng& rng);

// Least-squares affine map taking the rows of `from` to the rows of `to`:
// means are matched exactly, the linear part is the thresholded pseudoinverse
// solution on the centered rows.
TransitionMap fit_transition(const Matrix& from, const Matrix& to);

// drift = sample mean / t0; diffusion = psd_sqrt(unbiased covariance / t0).
// Rows of endpoint_coords are the p chart-coordinate endpoints.
std::pair<Vector, Matrix> estimate_coefficients(const Matrix& endpoint_coords,
                                                double t0);

// Symmetric PSD square root; negative eigenvalues are clamped to zero.
Matrix psd_sqrt(const Matrix& c);

// The whole pipeline: net, landmarks, charts, transition maps. Deterministic
// in (inputs, seed) for any thread count; every chart draws from its own
// seed-derived stream.
AtlasModel learn_atlas(const StateSpace& space, const LearnParams& params,
                       std::uint64_t seed);

}  // namespace atlas

#endif
