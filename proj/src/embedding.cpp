#include "atlas/embedding.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace atlas {

namespace {
constexpr double kEigTol = 1e-12;  // relative, against the largest eigenvalue
}

Embedding mds(const Matrix& dist, int d) {
  const Eigen::Index n = dist.rows();
  if (dist.cols() != n) throw std::invalid_argument("mds: distance matrix must be square");
  if (n < 2) throw std::invalid_argument("mds: need at least 2 landmarks");
  if (d < 1 || d > int(n) - 1) throw std::invalid_argument("mds: d out of range [1, n-1]");
  const double scale = dist.cwiseAbs().maxCoeff();
  if ((dist - dist.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1.0))
    throw std::invalid_argument("mds: distance matrix must be symmetric");
  if (dist.diagonal().cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("mds: distance matrix must have zero diagonal");

  // Double centering of squared distances gives the Gram matrix of the
  // centered configuration.
  Matrix d2 = dist.array().square();
  Vector row_mean = d2.rowwise().mean();
  double grand = d2.mean();
  Matrix gram =
      -0.5 * (d2 - row_mean.replicate(1, n) - row_mean.transpose().replicate(n, 1) +
              Matrix::Constant(n, n, grand));

  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("mds: eigendecomposition failed");

  // Ascending from the solver; flip to nonincreasing.
  Vector lam = eig.eigenvalues().reverse();
  Matrix vec = eig.eigenvectors().rowwise().reverse();

  Embedding e;
  e.eigenvalues = lam.cwiseMax(0.0);
  e.mean_sq_dist = row_mean;
  double lam_max = e.eigenvalues[0];
  double tol = kEigTol * lam_max;

  e.coords.resize(n, d);
  e.extend_op = Matrix::Zero(d, n);
  for (int a = 0; a < d; ++a) {
    double l = e.eigenvalues[a];
    if (l <= tol || l <= 0.0) {
      e.coords.col(a).setZero();
      continue;
    }
    double s = std::sqrt(l);
    Vector v = vec.col(a);
    // Orientation: largest-magnitude entry positive (first such entry wins).
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) v = -v;
    e.coords.col(a) = s * v;
    e.extend_op.row(a) = v.transpose() / s;
  }
  return e;
}

Vector extend(const Embedding& e, const Vector& dists) {
  if (dists.size() != e.size())
    throw std::invalid_argument("extend: distance vector length must match landmark count");
  Vector q = dists.array().square();
  return 0.5 * (e.extend_op * (e.mean_sq_dist - q));
}

int estimate_dim(const Vector& eigenvalues, double delta) {
  const double cutoff = (delta / 4.0) * (delta / 4.0);
  int count = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] >= cutoff) ++count;
  return std::max(count, 1);
}

int significant_rank(const Vector& eigenvalues) {
  if (eigenvalues.size() == 0) return 0;
  double tol = kEigTol * std::max(eigenvalues.maxCoeff(), 0.0);
  int count = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > tol && eigenvalues[i] > 0.0) ++count;
  return count;
}

}  // namespace atlas
