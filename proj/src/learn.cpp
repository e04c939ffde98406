#include "atlas/learn.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "atlas/embedding.hpp"
#include "atlas/parallel.hpp"

namespace atlas {

namespace {
constexpr double kPinvTol = 1e-10;     // relative singular value cutoff
constexpr double kCenterSlack = 0.3;   // slack on the expected center annulus

Matrix vstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}
}  // namespace

const TransitionMap& AtlasModel::transition(int from, int to) const {
  auto it = transitions.find({from, to});
  if (it == transitions.end()) {
    std::ostringstream msg;
    msg << "missing transition map " << from << " -> " << to;
    throw std::out_of_range(msg.str());
  }
  return it->second;
}

LearnParams LearnParams::resolved() const {
  LearnParams r = *this;
  if (!(r.delta > 0.0)) throw std::invalid_argument("learn: delta must be positive");
  if (r.d < 1) throw std::invalid_argument("learn: d must be at least 1");
  if (r.m == 0) r.m = 2 * r.d;
  if (r.m < r.d) throw std::invalid_argument("learn: m must be at least d");
  if (r.p < 2) throw std::invalid_argument("learn: p must be at least 2");
  if (r.t0 <= 0.0) r.t0 = r.delta * r.delta;
  if (r.dt <= 0.0) r.dt = r.t0 / 5.0;
  return r;
}

PointList generate_landmarks(const StateSpace& space, const Vector& y, int m,
                             double t0, Rng& rng) {
  PointList a;
  a.reserve(m + 1);
  a.push_back(y);
  PointList ends = space.simulate(y, m, t0, rng);
  for (auto& q : ends) a.push_back(std::move(q));
  return a;
}

Matrix psd_sqrt(const Matrix& c) {
  Matrix sym = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  Vector lam = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

std::pair<Vector, Matrix> estimate_coefficients(const Matrix& endpoint_coords,
                                                double t0) {
  const Eigen::Index p = endpoint_coords.rows();
  if (p < 2)
    throw std::invalid_argument(
        "estimate_coefficients: cannot estimate covariance from fewer than 2 "
        "endpoints");
  if (!(t0 > 0.0)) throw std::invalid_argument("estimate_coefficients: t0 must be positive");
  Eigen::RowVectorXd mean = endpoint_coords.colwise().mean();
  Matrix centered = endpoint_coords.rowwise() - mean;
  Matrix cov = centered.transpose() * centered / double(p - 1);
  return {mean.transpose() / t0, psd_sqrt(cov / t0)};
}

TransitionMap fit_transition(const Matrix& from, const Matrix& to) {
  if (from.rows() != to.rows() || from.cols() != to.cols())
    throw std::invalid_argument("fit_transition: point sets must be paired");
  TransitionMap s;
  Eigen::RowVectorXd mu_from = from.colwise().mean();
  Eigen::RowVectorXd mu_to = to.colwise().mean();
  s.mu_from = mu_from.transpose();
  s.mu_to = mu_to.transpose();
  Matrix fc = from.rowwise() - mu_from;
  Matrix tc = to.rowwise() - mu_to;
  Eigen::JacobiSVD<Matrix> svd(fc, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kPinvTol);
  s.T = svd.solve(tc);
  return s;
}

ChartBuild learn_chart(const StateSpace& space, const DeltaNet& net, int k,
                       const std::vector<PointList>& landmarks,
                       const LearnParams& params, Rng& rng) {
  // Member charts contributing landmarks: k itself plus the 2-delta
  // neighborhood, in index order.
  std::vector<int> members = net.neighbors.at(k);
  members.insert(std::lower_bound(members.begin(), members.end(), k), k);

  std::vector<int> block_start(members.size());
  PointList all;
  for (std::size_t b = 0; b < members.size(); ++b) {
    block_start[b] = int(all.size());
    for (const Vector& q : landmarks.at(members[b])) all.push_back(q);
  }
  const int n = int(all.size());
  const int block = params.m + 1;

  Matrix dist(n, n);
  for (int i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j)
      dist(i, j) = dist(j, i) = space.distance(all[i], all[j]);
  }

  Embedding emb = mds(dist, params.d);
  int rank = significant_rank(emb.eigenvalues);
  if (rank < params.d) {
    std::ostringstream msg;
    msg << "degenerate landmarks for chart " << k << " (rank " << rank << " < d "
        << params.d << ")";
    throw std::runtime_error(msg.str());
  }

  // Burst ensemble for the local coefficients, embedded via the out-of-sample
  // extension.
  PointList ends = space.simulate(net.points.at(k), params.p, params.t0, rng);
  Matrix endpoint_coords(params.p, params.d);
  {
    Vector dists(n);
    for (int e = 0; e < params.p; ++e) {
      for (int i = 0; i < n; ++i) dists[i] = space.distance(ends[e], all[i]);
      endpoint_coords.row(e) = extend(emb, dists).transpose();
    }
  }

  // Put the chart's own net point at the origin.
  int self_block = int(std::lower_bound(members.begin(), members.end(), k) -
                       members.begin());
  Eigen::RowVectorXd shift = emb.coords.row(block_start[self_block]);
  Matrix coords = emb.coords.rowwise() - shift;
  endpoint_coords.rowwise() -= shift;

  ChartBuild out;
  out.chart.index = k;
  // Per-landmark scale: raw Gram eigenvalues grow with the landmark count,
  // dividing by n makes entries squared coordinate scales, comparable across
  // charts and against the (delta/4)^2 dimension cutoff.
  out.chart.spectrum = emb.eigenvalues / double(n);
  for (std::size_t b = 0; b < members.size(); ++b) {
    int j = members[b];
    out.member_images[j] = coords.middleRows(block_start[b], block);
    out.chart.centers[j] = coords.row(block_start[b]).transpose();
  }
  out.chart.centers[k] = Vector::Zero(params.d);
  out.endpoint_coords = endpoint_coords;

  auto [b_hat, sigma_hat] = estimate_coefficients(endpoint_coords, params.t0);
  out.chart.drift = b_hat;
  out.chart.diffusion = sigma_hat;

  const double lo = params.delta * (1.0 - kCenterSlack);
  const double hi = 2.0 * params.delta * (1.0 + kCenterSlack);
  for (auto& [j, c] : out.chart.centers) {
    if (j == k) continue;
    double r = c.norm();
    if (r < lo || r > hi) {
      std::ostringstream msg;
      msg << "chart " << k << ": center for neighbor " << j << " at " << r
          << ", outside [" << lo << ", " << hi << "]";
      out.warnings.push_back(msg.str());
    }
  }
  return out;
}

AtlasModel learn_atlas(const StateSpace& space, const LearnParams& params,
                       std::uint64_t seed) {
  LearnParams P = params.resolved();
  if (!space.distance) throw std::invalid_argument("learn_atlas: state space has no distance");
  if (!space.simulate) throw std::invalid_argument("learn_atlas: state space has no simulator");

  Rng root(seed);
  DeltaNet net = build_delta_net(space.initial_points, P.delta, space.distance);
  const int K = net.size();

  std::vector<PointList> landmarks(K);
  parallel_for(K, P.threads, [&](std::size_t k) {
    Rng r = root.child("landmarks", k);
    landmarks[k] = generate_landmarks(space, net.points[k], P.m, P.t0, r);
  });

  std::vector<ChartBuild> builds(K);
  std::vector<std::string> failures(K);
  std::atomic<bool> any_failed{false};
  parallel_for(K, P.threads, [&](std::size_t k) {
    try {
      Rng r = root.child("paths", k);
      builds[k] = learn_chart(space, net, int(k), landmarks, P, r);
    } catch (const std::exception& e) {
      failures[k] = e.what();
      any_failed.store(true);
    }
  });
  if (any_failed.load()) {
    std::ostringstream msg;
    msg << "learn_atlas failed:";
    for (int k = 0; k < K; ++k)
      if (!failures[k].empty()) msg << "\n  " << failures[k];
    throw std::runtime_error(msg.str());
  }

  AtlasModel model;
  model.delta = P.delta;
  model.d = P.d;
  model.t0 = P.t0;
  model.dt = P.dt;
  model.net = net;
  model.charts.resize(K);
  for (int k = 0; k < K; ++k) {
    model.charts[k] = std::move(builds[k].chart);
    model.charts[k].landmarks = std::move(landmarks[k]);
    for (auto& w : builds[k].warnings) model.warnings.push_back(w);
  }

  for (int k = 0; k < K; ++k) {
    for (int j : net.neighbors[k]) {
      if (j < k) continue;
      Matrix x = vstack(builds[k].member_images.at(k), builds[k].member_images.at(j));
      Matrix y = vstack(builds[j].member_images.at(k), builds[j].member_images.at(j));
      model.transitions[{k, j}] = fit_transition(x, y);
      model.transitions[{j, k}] = fit_transition(y, x);
    }
  }
  return model;
}

}  // namespace atlas
