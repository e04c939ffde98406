#pragma once

#include <functional>
#include <vector>

#include "atlas/model.hpp"
#include "atlas/simulate.hpp"
#include "atlas/types.hpp"

namespace atlas {

// Soft assignment of one sample onto a set of centers: weight
// exp(-rho^2/delta^2) for centers closer than 2*delta, normalized to sum 1.
// A sample with no center in range gets full weight at its nearest center
// (smallest index on ties) so distributions stay normalized.
Vector soft_bin_row(const Vector& sample, const PointList& centers,
                    const DistanceFn& distance, double delta);

// Weighted sum of rows: mu_j = sum_i nu_i row_i[j]. An empty `nu` means
// uniform 1/n. Otherwise nu must have one entry per sample and sum to 1.
Vector soft_bin(const PointList& samples, const Vector& nu,
                const PointList& centers, const DistanceFn& distance,
                double delta);

// Binning for learned-simulator states: the candidate centers for a state on
// chart i are the local coordinates of i and its neighbors, compared by
// Euclidean distance within the chart. Returns a row over all net points.
Vector atlas_bin_row(const AtlasState& state, const AtlasModel& model);

Vector bin_atlas_states(const std::vector<AtlasState>& states,
                        const AtlasModel& model);

// Rows = soft_bin_row of each fine-net point among the coarse centers.
// Right-multiplying a distribution on the fine net by this matrix pushes it
// to the coarse net.
Matrix coarse_map(const PointList& fine_points, const PointList& coarse_centers,
                  const DistanceFn& distance, double delta_c);

double l1_diff(const Vector& p, const Vector& q);

// Per-slice L1 distance between two sample families after binning both onto
// the fine net and pushing to the coarse net, all with the same distance.
// This is the ambient-side comparison protocol; learned-simulator samples go
// through bin_atlas_states and the same coarse push instead.
std::vector<double> multiscale_compare(const std::vector<PointList>& slices_a,
                                       const std::vector<PointList>& slices_b,
                                       const PointList& fine_net,
                                       const PointList& coarse_net, double delta,
                                       double delta_c, const DistanceFn& distance);

struct Region {
  int label = 0;
  std::function<bool(const Vector&)> contains;
};

Region ball_region(int label, Vector center, double radius);
Region outside_region(int label, Vector center, double radius);

// First matching region's label, 0 when none match. If `overlaps` is given it
// is incremented when the point is claimed by more than one region (regions
// are meant to be disjoint; overlap signals a misconfiguration worth
// surfacing).
int classify_point(const Vector& point, const std::vector<Region>& regions,
                   int* overlaps = nullptr);

std::vector<int> classify(const PointList& points,
                          const std::vector<Region>& regions,
                          int* overlaps = nullptr);

// Transition-time samples between labeled regions, counted from first entry
// into a region to first entry into the next different region, intervening
// "none" steps included. Region labels are 1-based; times are physical
// (step count times dt_per_step).
class TransitionStats {
 public:
  explicit TransitionStats(int n_regions);

  void record(int from, int to, double time);
  void merge(const TransitionStats& other);

  int n_regions() const { return static_cast<int>(counts_.rows()); }
  int count(int from, int to) const;
  bool has(int from, int to) const { return count(from, to) > 0; }
  double mean(int from, int to) const;  // NaN when no samples
  double total_time(int from, int to) const;

 private:
  Matrix total_time_;
  Eigen::MatrixXi counts_;
};

// n_regions = 0 sizes the result by the largest label seen. Throws
// invalid_argument on empty input and runtime_error("... no region visits")
// when every label is 0.
TransitionStats transition_times(const std::vector<int>& labels,
                                 double dt_per_step, int n_regions = 0);

}  // namespace atlas
