#ifndef ATLAS_EMBEDDING_HPP
#define ATLAS_EMBEDDING_HPP

#include "atlas/types.hpp"

namespace atlas {

// Classical multidimensional scaling over a landmark set, with the closed
// form out-of-sample extension. Coordinates are rows; columns (axes) have
// zero mean, and each axis is oriented so its largest-magnitude entry is
// positive, which makes the output unique.
struct Embedding {
  Matrix coords;        // n x d landmark coordinates
  Vector eigenvalues;   // full centered-Gram spectrum, nonincreasing, clamped at 0
  Vector mean_sq_dist;  // per-landmark mean of squared distances
  Matrix extend_op;     // d x n pseudoinverse of coords (degenerate axes zeroed)

  int size() const { return int(coords.rows()); }
  int dim() const { return int(coords.cols()); }
};

// dist: symmetric, zero-diagonal landmark distance matrix; d: target
// dimension, 1 <= d <= n-1. Eigenvalues below 1e-12 of the largest are
// treated as zero; negative ones are clamped before the sqrt scaling.
Embedding mds(const Matrix& dist, int d);

// Embeds a new point from its distances to all landmarks:
//   x = extend_op * (mean_sq_dist - dists^2) / 2
// Exact for points on the landmark subspace, least-squares otherwise.
Vector extend(const Embedding& e, const Vector& dists);

// Number of eigenvalues at or above (delta/4)^2; at least 1.
int estimate_dim(const Vector& eigenvalues, double delta);

// Eigenvalues above the relative tolerance 1e-12 of the largest; the rank
// the embedding actually resolves.
int significant_rank(const Vector& eigenvalues);

}  // namespace atlas

#endif
