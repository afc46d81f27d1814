// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pulsetls/pulse.hpp"
#include "pulsetls/state.hpp"

namespace pulsetls {

enum class JumpChannel : int { kRadiative = 0, kPhonon = 1, kNoise = 2 };

const char* to_string(JumpChannel channel);

struct JumpRecord {
  std::uint64_t seed = 0;  // master seed
  std::uint64_t stream = 0;
  std::vector<double> jump_times;
  std::vector<JumpChannel> jump_channels;
  int photon_count = 0;  // radiative jumps only
};

struct TrajectoryOptions {
  // Normalized |c_e|^2 at every grid point. Disables the early exit once no
  // further jump is possible.
  bool record_path = false;
};

struct Trajectory {
  JumpRecord record;
  std::vector<double> conditional_pe;  // empty unless record_path
};

// One Monte Carlo wave-function run starting from |g> at grid.t_start. The
// result is a pure function of the arguments.
Trajectory sample_trajectory(const SystemParams& params, const PulseSpec& spec,
                             const TimeGrid& grid, std::uint64_t master_seed,
                             std::uint64_t stream,
                             const TrajectoryOptions& options = {});

struct PhotocountResult {
  std::map<int, std::int64_t> counts_histogram;
  std::map<int, double> p_n;
  std::map<int, double> std_err_p_n;
  std::map<int, double> purities;  // n >= 1; empty when no photon was seen
  std::int64_t n_trajectories = 0;
  double expected_n = 0.0;
  double expected_n_std_err = 0.0;
  // Estimator sum n(n-1)/N over (sum n/N)^2 with a delta-method error.
  // NaN when no photon was seen.
  double g2_zero = 0.0;
  double g2_zero_std_err = 0.0;
  // Totals of the sigma^+ sigma jumps, which never count as photons.
  std::int64_t phonon_jumps = 0;
  std::int64_t noise_jumps = 0;

  double probability(int n) const;
  double std_err(int n) const;
  double purity(int n) const;
};

// Trajectory i uses stream i of master_seed. Counts are integers and the
// reduction is order independent, so the result does not depend on threads.
PhotocountResult photocount_distribution(const SystemParams& params,
                                         const PulseSpec& spec,
                                         const TimeGrid& grid,
                                         std::int64_t n_trajectories,
                                         std::uint64_t master_seed,
                                         int threads = 1);

// pi_n = P_n / sum_{m>0} P_m. Throws Degenerate when that sum is zero.
std::map<int, double> purity(const std::map<int, double>& p_n);

// Mean conditional Pe(t) over n_trajectories runs, summed in index order
// within fixed-size blocks, so it is reproducible for any thread count.
std::vector<double> ensemble_pe(const SystemParams& params,
                                const PulseSpec& spec, const TimeGrid& grid,
                                std::int64_t n_trajectories,
                                std::uint64_t master_seed, int threads = 1);

// Histogram of (first jump time, delay to second) over records with exactly
// two photons, normalised by the total trajectory count so that it
// estimates the ordered pair density p2(t1, tau).
struct PairHistogram {
  double t1_begin, t1_width;
  double tau_width;
  std::size_t t1_bins, tau_bins;
  std::vector<double> density;  // row-major [t1][tau]
  std::int64_t n_trajectories = 0;
  std::int64_t pairs = 0;
};

PairHistogram pair_histogram(const SystemParams& params, const PulseSpec& spec,
                             const TimeGrid& grid, std::int64_t n_trajectories,
                             std::uint64_t master_seed, double t1_begin,
                             double t1_width, std::size_t t1_bins,
                             double tau_width, std::size_t tau_bins,
                             int threads = 1);

}  // namespace pulsetls
