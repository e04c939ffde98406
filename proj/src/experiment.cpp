#include "atlas/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "atlas/delta_net.hpp"
#include "atlas/parallel.hpp"

namespace atlas {

namespace {

long steps_to_reach(double t, double dt) {
  return static_cast<long>(std::ceil(t / dt - 1e-9));
}

std::vector<double> resolve_times(const CompareParams& params) {
  if (params.times.empty()) return dyadic_times(params.horizon);
  double prev = 0.0;
  for (double t : params.times) {
    if (!(t > prev))
      throw std::invalid_argument(
          "comparison times must be positive and strictly increasing");
    prev = t;
  }
  return params.times;
}

}  // namespace

std::vector<double> dyadic_times(double horizon) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("comparison horizon must be positive");
  std::vector<double> times;
  for (double t = 1.0; t <= horizon; t *= 2.0) times.push_back(t);
  if (times.empty() || times.back() < horizon) times.push_back(horizon);
  return times;
}

ComparisonReport run_comparison(const StateSpace& space, const AtlasModel& model,
                                const CompareParams& params, std::uint64_t seed) {
  if (params.n_ics < 1)
    throw std::invalid_argument("comparison needs at least one initial condition");
  if (params.n_paths < 1)
    throw std::invalid_argument("comparison needs at least one path");
  const std::vector<double> times = resolve_times(params);
  const int n_charts = model.net.size();
  if (params.n_ics > n_charts)
    throw std::invalid_argument(
        "more initial conditions requested than distinct net points");
  const double delta_c = params.delta_c > 0.0 ? params.delta_c : model.delta;

  DeltaNet coarse = build_delta_net(space.initial_points, delta_c, space.distance);
  const Matrix push =
      coarse_map(model.net.points, coarse.points, space.distance, delta_c);

  Rng root(seed);

  // Partial Fisher-Yates over the chart indices gives distinct starts.
  std::vector<int> order(static_cast<std::size_t>(n_charts));
  std::iota(order.begin(), order.end(), 0);
  Rng ics_rng = root.child("ics");
  const auto n_ics = static_cast<std::size_t>(params.n_ics);
  for (std::size_t i = 0; i < n_ics; ++i) {
    std::size_t j = i + static_cast<std::size_t>(
                            ics_rng.below(static_cast<std::uint64_t>(
                                static_cast<std::size_t>(n_charts) - i)));
    std::swap(order[i], order[j]);
  }

  const std::size_t n_times = times.size();
  ComparisonReport report;
  report.times = times;
  report.start_charts.assign(order.begin(), order.begin() + static_cast<long>(n_ics));
  report.l1 = Matrix::Zero(params.n_ics, static_cast<long>(n_times));
  report.coarse_centers = coarse.points;
  report.original_hist.resize(n_ics);
  report.atlas_hist.resize(n_ics);
  report.dt_ratio = params.micro_dt > 0.0 ? model.dt / params.micro_dt : 0.0;

  parallel_for(n_ics, params.threads, [&](std::size_t ic) {
    const int chart = report.start_charts[ic];
    const Vector& y0 = model.net.points[static_cast<std::size_t>(chart)];

    // One pass of chained bursts per path, binned into a running sum per
    // slice, so nothing sample-sized is ever retained.
    auto original_side = [&](const char* label) {
      std::vector<Vector> mu(n_times, Vector::Zero(n_charts));
      for (int path = 0; path < params.n_paths; ++path) {
        Rng pr = root.child(label, static_cast<std::uint64_t>(ic))
                     .child(static_cast<std::uint64_t>(path));
        Vector x = y0;
        double prev = 0.0;
        for (std::size_t k = 0; k < n_times; ++k) {
          x = space.simulate(x, 1, times[k] - prev, pr)[0];
          prev = times[k];
          mu[k] += soft_bin_row(x, model.net.points, space.distance, model.delta);
        }
      }
      return mu;
    };

    std::vector<Vector> mu = original_side("orig");
    std::vector<Vector> nu;
    if (params.self_test) {
      nu = original_side("self");
    } else {
      nu.assign(n_times, Vector::Zero(n_charts));
      for (int path = 0; path < params.n_paths; ++path) {
        Rng pr = root.child("atlas", static_cast<std::uint64_t>(ic))
                     .child(static_cast<std::uint64_t>(path));
        AtlasState s{chart, Vector::Zero(model.d)};
        long done = 0;
        for (std::size_t k = 0; k < n_times; ++k) {
          const long want = steps_to_reach(times[k], model.dt);
          for (; done < want; ++done) s = step(model, s, pr);
          nu[k] += atlas_bin_row(s, model);
        }
      }
    }

    report.original_hist[ic].resize(n_times);
    report.atlas_hist[ic].resize(n_times);
    for (std::size_t k = 0; k < n_times; ++k) {
      Vector p = push.transpose() * (mu[k] / params.n_paths);
      Vector q = push.transpose() * (nu[k] / params.n_paths);
      report.l1(static_cast<long>(ic), static_cast<long>(k)) = l1_diff(p, q);
      report.original_hist[ic][k] = std::move(p);
      report.atlas_hist[ic][k] = std::move(q);
    }
  });

  report.mean_l1 = report.l1.colwise().mean().transpose();
  report.std_l1 = Vector::Zero(static_cast<long>(n_times));
  if (params.n_ics > 1) {
    for (long k = 0; k < static_cast<long>(n_times); ++k) {
      const double m = report.mean_l1[k];
      report.std_l1[k] = std::sqrt(
          (report.l1.col(k).array() - m).square().sum() / (params.n_ics - 1));
    }
  }
  return report;
}

TransitionReport run_transition_times(const StateSpace& space,
                                      const AtlasModel& model,
                                      const std::vector<Region>& regions,
                                      const TransitionParams& params,
                                      std::uint64_t seed) {
  if (params.n_paths < 1)
    throw std::invalid_argument("transition runs need at least one path");
  if (!(params.path_time > 0.0))
    throw std::invalid_argument("transition path_time must be positive");
  if (!(params.micro_dt > 0.0))
    throw std::invalid_argument("transition micro_dt must be positive");
  if (regions.empty())
    throw std::invalid_argument("transition runs need at least one region");
  int n_regions = 0;
  for (const Region& r : regions) {
    if (r.label < 1)
      throw std::invalid_argument("region labels must be positive");
    n_regions = std::max(n_regions, r.label);
  }

  const long n_micro = std::lround(params.path_time / params.micro_dt);
  const long n_atlas = std::lround(params.path_time / model.dt);
  if (n_micro < 1 || n_atlas < 1)
    throw std::invalid_argument("transition path_time shorter than one step");

  Rng root(seed);
  Rng starts_rng = root.child("starts");
  const auto n_paths = static_cast<std::size_t>(params.n_paths);
  std::vector<int> starts(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p)
    starts[p] = static_cast<int>(starts_rng.below(model.net.size()));

  std::vector<TransitionStats> orig_stats(n_paths, TransitionStats(n_regions));
  std::vector<TransitionStats> atlas_stats(n_paths, TransitionStats(n_regions));
  std::vector<int> overlaps(n_paths, 0);

  parallel_for(n_paths, params.threads, [&](std::size_t p) {
    const int chart = starts[p];
    int shared = 0;

    Rng pr = root.child("orig", static_cast<std::uint64_t>(p));
    Vector x = model.net.points[static_cast<std::size_t>(chart)];
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(n_micro) + 1);
    labels.push_back(classify_point(to_region_coords(space, x), regions, &shared));
    for (long s = 0; s < n_micro; ++s) {
      x = space.simulate(x, 1, params.micro_dt, pr)[0];
      labels.push_back(classify_point(to_region_coords(space, x), regions, &shared));
    }
    orig_stats[p] = transition_times(labels, params.micro_dt, n_regions);

    Rng ar = root.child("atlas", static_cast<std::uint64_t>(p));
    AtlasState state{chart, Vector::Zero(model.d)};
    labels.clear();
    labels.push_back(classify_point(to_region_coords(space, lift(model, state)),
                                    regions, &shared));
    for (long s = 0; s < n_atlas; ++s) {
      state = step(model, state, ar);
      labels.push_back(classify_point(to_region_coords(space, lift(model, state)),
                                      regions, &shared));
    }
    atlas_stats[p] = transition_times(labels, model.dt, n_regions);
    overlaps[p] = shared;
  });

  TransitionReport report{TransitionStats(n_regions), TransitionStats(n_regions),
                          0, params.micro_dt, model.dt};
  for (std::size_t p = 0; p < n_paths; ++p) {
    report.original.merge(orig_stats[p]);
    report.atlas.merge(atlas_stats[p]);
    report.overlaps += overlaps[p];
  }
  return report;
}

EffectivePotential effective_potential_1d(const AtlasModel& model) {
  const auto n = static_cast<long>(model.charts.size());
  bool ambient_1d = n > 0;
  for (const Vector& y : model.net.points) ambient_1d &= y.size() == 1;
  if (model.d != 1 || !ambient_1d)
    throw std::invalid_argument(
        "effective potential needs a one-dimensional model");

  std::vector<long> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](long a, long b) {
    return model.net.points[static_cast<std::size_t>(a)][0] <
           model.net.points[static_cast<std::size_t>(b)][0];
  });

  EffectivePotential ep;
  ep.position = Vector(n);
  ep.drift = Vector(n);
  ep.diffusion = Vector(n);
  ep.potential = Vector(n);
  for (long r = 0; r < n; ++r) {
    const auto k = static_cast<std::size_t>(idx[static_cast<std::size_t>(r)]);
    const Chart& chart = model.charts[k];
    const double yk = model.net.points[k][0];

    // The chart's 1-d embedding is unique up to reflection; its neighbors'
    // ambient offsets reveal which sign it picked.
    double orient = 0.0;
    for (const auto& [j, c] : chart.centers) {
      if (j == chart.index) continue;
      orient += (model.net.points[static_cast<std::size_t>(j)][0] - yk) * c[0];
    }
    const double sign = orient < 0.0 ? -1.0 : 1.0;

    ep.position[r] = yk;
    ep.drift[r] = sign * chart.drift[0];
    ep.diffusion[r] = std::abs(chart.diffusion(0, 0));
  }

  ep.potential[0] = 0.0;
  for (long r = 1; r < n; ++r)
    ep.potential[r] = ep.potential[r - 1] -
                      0.5 * (ep.drift[r - 1] + ep.drift[r]) *
                          (ep.position[r] - ep.position[r - 1]);
  ep.potential.array() -= ep.potential.minCoeff();
  return ep;
}

}  // namespace atlas
