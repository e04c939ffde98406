#ifndef ATLAS_EXPERIMENT_HPP
#define ATLAS_EXPERIMENT_HPP

#include <cstdint>
#include <vector>

#include "atlas/analysis.hpp"
#include "atlas/model.hpp"
#include "atlas/simulate.hpp"
#include "atlas/state_space.hpp"

namespace atlas {

// Slice times 1, 2, 4, ... capped by the horizon, which is always the last
// slice. A horizon below 1 gives the single slice {horizon}.
std::vector<double> dyadic_times(double horizon);

struct CompareParams {
  int n_ics = 10;
  int n_paths = 10000;
  double horizon = 0.0;       // used when `times` is empty
  std::vector<double> times;  // explicit slice times, strictly increasing
  double delta_c = 0.0;       // coarse bin width; <= 0 means the model delta
  double micro_dt = 0.0;      // one original-simulator step, for the ratio report
  bool self_test = false;     // original vs original on split streams
  int threads = 1;
};

struct ComparisonReport {
  std::vector<double> times;
  std::vector<int> start_charts;  // one net index per initial condition
  Matrix l1;                      // n_ics x n_times
  Vector mean_l1;                 // per slice, across initial conditions
  Vector std_l1;                  // sample standard deviation (0 for one IC)
  PointList coarse_centers;
  // Coarse-net weights per initial condition and slice, for plotting.
  std::vector<std::vector<Vector>> original_hist;
  std::vector<std::vector<Vector>> atlas_hist;
  double dt_ratio = 0.0;  // surrogate step / original step; 0 when unknown
};

// Head-to-head distribution comparison. Initial conditions are distinct net
// points; both simulators start every path from the same net point. Each
// original path advances by the exact gaps between slices; each surrogate
// path is recorded at the first whole step reaching the slice time. Samples
// are soft-binned onto the model net per path (ambient distances for the
// original, chart distances for the surrogate), pushed to a coarse net grown
// from the system's initial point set, and compared in L1 per slice.
//
// Stream layout, fixed so runs are reproducible for any thread count:
// Rng(seed).child("ics") picks start charts; path `p` of initial condition
// `i` draws from child("orig", i).child(p), child("atlas", i).child(p), or
// child("self", i).child(p) in self_test mode, where the surrogate side is
// replaced by a second original run.
ComparisonReport run_comparison(const StateSpace& space, const AtlasModel& model,
                                const CompareParams& params, std::uint64_t seed);

struct TransitionParams {
  int n_paths = 12;
  double path_time = 0.0;  // physical duration of every long run
  double micro_dt = 0.0;   // original-simulator step between classifications
  int threads = 1;
};

struct TransitionReport {
  TransitionStats original;
  TransitionStats atlas;
  int overlaps = 0;  // points claimed by more than one region, both sides
  double micro_dt = 0.0;
  double atlas_dt = 0.0;
};

// Long-run transition-time statistics from both simulators, merged over
// n_paths independent paths. Every point of each path is labeled (the start
// point included; surrogate states through their net-point lift, both sides
// through the system's region coordinates) and fed to transition_times, so
// reported times are physical. Streams: Rng(seed).child("starts") picks one
// start chart per path in order; path `p` draws from child("orig", p) and
// child("atlas", p).
TransitionReport run_transition_times(const StateSpace& space,
                                      const AtlasModel& model,
                                      const std::vector<Region>& regions,
                                      const TransitionParams& params,
                                      std::uint64_t seed);

struct EffectivePotential {
  Vector position;   // ambient 1-d net points, ascending
  Vector drift;      // learned drift mapped back to ambient orientation
  Vector diffusion;  // |sigma| per net point
  Vector potential;  // trapezoid integral of -drift, shifted to minimum 0
};

// Undoes each chart's arbitrary 1-d reflection by orienting it against the
// ambient offsets of its neighbors, then integrates the negated drift over
// the sorted net. Only meaningful for d = 1 in a 1-d ambient space.
EffectivePotential effective_potential_1d(const AtlasModel& model);

}  // namespace atlas

#endif
