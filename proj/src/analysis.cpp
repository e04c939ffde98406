#include "atlas/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace atlas {

namespace {

// Shared by ambient and chart-space binning once distances are computed.
Vector row_from_distances(const Vector& rho, double delta) {
  const int k = static_cast<int>(rho.size());
  Vector row = Vector::Zero(k);
  double total = 0.0;
  for (int j = 0; j < k; ++j) {
    if (rho[j] < 2.0 * delta) {
      row[j] = std::exp(-rho[j] * rho[j] / (delta * delta));
      total += row[j];
    }
  }
  if (total > 0.0) {
    row /= total;
    return row;
  }
  int nearest = 0;
  for (int j = 1; j < k; ++j)
    if (rho[j] < rho[nearest]) nearest = j;
  row[nearest] = 1.0;
  return row;
}

}  // namespace

Vector soft_bin_row(const Vector& sample, const PointList& centers,
                    const DistanceFn& distance, double delta) {
  if (centers.empty())
    throw std::invalid_argument("soft_bin: centers must be nonempty");
  if (delta <= 0.0) throw std::invalid_argument("soft_bin: delta must be positive");
  Vector rho(static_cast<int>(centers.size()));
  for (std::size_t j = 0; j < centers.size(); ++j)
    rho[static_cast<int>(j)] = distance(sample, centers[j]);
  return row_from_distances(rho, delta);
}

Vector soft_bin(const PointList& samples, const Vector& nu,
                const PointList& centers, const DistanceFn& distance,
                double delta) {
  if (samples.empty())
    throw std::invalid_argument("soft_bin: samples must be nonempty");
  const auto n = static_cast<int>(samples.size());
  if (nu.size() != 0) {
    if (nu.size() != n)
      throw std::invalid_argument("soft_bin: one weight per sample required");
    if (std::abs(nu.sum() - 1.0) > 1e-9)
      throw std::invalid_argument("soft_bin: sample weights must sum to 1");
  }
  Vector mu = Vector::Zero(static_cast<int>(centers.size()));
  for (int i = 0; i < n; ++i) {
    double w = nu.size() ? nu[i] : 1.0 / n;
    mu += w * soft_bin_row(samples[static_cast<std::size_t>(i)], centers,
                           distance, delta);
  }
  return mu;
}

Vector atlas_bin_row(const AtlasState& state, const AtlasModel& model) {
  if (state.chart < 0 || state.chart >= static_cast<int>(model.charts.size()))
    throw std::out_of_range("atlas_bin_row: chart index out of range");
  const Chart& chart = model.charts[static_cast<std::size_t>(state.chart)];
  Vector row = Vector::Zero(static_cast<int>(model.net.size()));
  Vector rho(static_cast<int>(chart.centers.size()));
  std::vector<int> members;
  members.reserve(chart.centers.size());
  int k = 0;
  for (const auto& [j, c] : chart.centers) {
    rho[k++] = (state.x - c).norm();
    members.push_back(j);
  }
  Vector local = row_from_distances(rho, model.delta);
  for (std::size_t m = 0; m < members.size(); ++m)
    row[members[m]] = local[static_cast<int>(m)];
  return row;
}

Vector bin_atlas_states(const std::vector<AtlasState>& states,
                        const AtlasModel& model) {
  if (states.empty())
    throw std::invalid_argument("bin_atlas_states: states must be nonempty");
  Vector mu = Vector::Zero(static_cast<int>(model.net.size()));
  for (const AtlasState& s : states) mu += atlas_bin_row(s, model);
  mu /= static_cast<double>(states.size());
  return mu;
}

Matrix coarse_map(const PointList& fine_points, const PointList& coarse_centers,
                  const DistanceFn& distance, double delta_c) {
  Matrix map(static_cast<int>(fine_points.size()),
             static_cast<int>(coarse_centers.size()));
  for (std::size_t i = 0; i < fine_points.size(); ++i)
    map.row(static_cast<int>(i)) =
        soft_bin_row(fine_points[i], coarse_centers, distance, delta_c).transpose();
  return map;
}

double l1_diff(const Vector& p, const Vector& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("l1_diff: distributions must share a support");
  return (p - q).lpNorm<1>();
}

std::vector<double> multiscale_compare(const std::vector<PointList>& slices_a,
                                       const std::vector<PointList>& slices_b,
                                       const PointList& fine_net,
                                       const PointList& coarse_net, double delta,
                                       double delta_c, const DistanceFn& distance) {
  if (slices_a.size() != slices_b.size())
    throw std::invalid_argument("multiscale_compare: slice count mismatch");
  Matrix push = coarse_map(fine_net, coarse_net, distance, delta_c);
  std::vector<double> l1;
  l1.reserve(slices_a.size());
  for (std::size_t t = 0; t < slices_a.size(); ++t) {
    Vector mu_a = soft_bin(slices_a[t], Vector(), fine_net, distance, delta);
    Vector mu_b = soft_bin(slices_b[t], Vector(), fine_net, distance, delta);
    l1.push_back(l1_diff(push.transpose() * mu_a, push.transpose() * mu_b));
  }
  return l1;
}

Region ball_region(int label, Vector center, double radius) {
  Region region;
  region.label = label;
  region.contains = [center = std::move(center), radius](const Vector& x) {
    return (x - center).norm() < radius;
  };
  return region;
}

Region outside_region(int label, Vector center, double radius) {
  Region region;
  region.label = label;
  region.contains = [center = std::move(center), radius](const Vector& x) {
    return (x - center).norm() > radius;
  };
  return region;
}

int classify_point(const Vector& point, const std::vector<Region>& regions,
                   int* overlaps) {
  int label = 0;
  int hits = 0;
  for (const Region& region : regions) {
    if (region.contains(point)) {
      if (label == 0) label = region.label;
      ++hits;
    }
  }
  if (overlaps && hits > 1) ++*overlaps;
  return label;
}

std::vector<int> classify(const PointList& points,
                          const std::vector<Region>& regions, int* overlaps) {
  std::vector<int> labels;
  labels.reserve(points.size());
  int shared = 0;
  for (const Vector& x : points) labels.push_back(classify_point(x, regions, &shared));
  if (overlaps) *overlaps = shared;
  return labels;
}

TransitionStats::TransitionStats(int n_regions)
    : total_time_(Matrix::Zero(n_regions, n_regions)),
      counts_(Eigen::MatrixXi::Zero(n_regions, n_regions)) {}

void TransitionStats::record(int from, int to, double time) {
  total_time_(from - 1, to - 1) += time;
  counts_(from - 1, to - 1) += 1;
}

void TransitionStats::merge(const TransitionStats& other) {
  if (other.n_regions() != n_regions())
    throw std::invalid_argument("TransitionStats: region count mismatch");
  total_time_ += other.total_time_;
  counts_ += other.counts_;
}

int TransitionStats::count(int from, int to) const {
  return counts_(from - 1, to - 1);
}

double TransitionStats::mean(int from, int to) const {
  int n = count(from, to);
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return total_time_(from - 1, to - 1) / n;
}

double TransitionStats::total_time(int from, int to) const {
  return total_time_(from - 1, to - 1);
}

TransitionStats transition_times(const std::vector<int>& labels,
                                 double dt_per_step, int n_regions) {
  if (labels.empty())
    throw std::invalid_argument("transition_times: empty label sequence");
  int max_label = 0;
  for (int l : labels) {
    if (l < 0) throw std::invalid_argument("transition_times: negative label");
    max_label = std::max(max_label, l);
  }
  if (max_label == 0)
    throw std::runtime_error("transition_times: no region visits");
  if (n_regions == 0) n_regions = max_label;
  if (max_label > n_regions)
    throw std::invalid_argument("transition_times: label exceeds region count");

  TransitionStats stats(n_regions);
  int active = 0;
  std::size_t entered = 0;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    int l = labels[s];
    if (l == 0) continue;
    if (active == 0) {
      active = l;  // skip to the first region visit
      entered = s;
    } else if (l != active) {
      stats.record(active, l, static_cast<double>(s - entered) * dt_per_step);
      active = l;
      entered = s;
    }
    // Re-entering the active region does not restart the clock: the sample
    // runs from the FIRST entry, matching the worked counting convention.
  }
  return stats;
}

}  // namespace atlas
