// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "pulsetls/trajectories.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "pulsetls/error.hpp"
#include "pulsetls/parallel.hpp"
#include "pulsetls/rng.hpp"

namespace pulsetls {

namespace {

constexpr cplx kI{0.0, 1.0};

// Unnormalized state (c_g, c_e).
struct Amplitudes {
  cplx g;
  cplx e;
  double norm() const { return std::norm(g) + std::norm(e); }
};

using Mat2 = std::array<cplx, 4>;

Amplitudes apply_map(const Mat2& m, const Amplitudes& a) {
  return {m[0] * a.g + m[1] * a.e, m[2] * a.g + m[3] * a.e};
}

// Non-Hermitian effective evolution d psi/dt = -i H_eff psi between jumps.
class EffectiveEvolution {
 public:
  EffectiveEvolution(const SystemParams& params, const PulseSpec& spec,
                     const TimeGrid& grid)
      : params_(params), spec_(spec), support_(drive_support(spec)) {
    free_ = step_map(0.0, grid.dt, /*driven=*/false);
    if (spec.area == 0.0) return;
    const auto index = [&](double t, bool up) -> std::size_t {
      const double x = (t - grid.t_start) / grid.dt;
      if (x <= 0.0) return 0;
      return static_cast<std::size_t>(up ? std::ceil(x) : std::floor(x));
    };
    first_driven_ = index(support_.begin, false);
    first_free_ = std::max(first_driven_, index(support_.end, true));
    maps_.reserve(first_free_ - first_driven_);
    for (std::size_t k = first_driven_; k < first_free_; ++k) {
      maps_.push_back(step_map(grid.time(k), grid.dt, true));
    }
  }

  const Mat2& map(std::size_t k) const {
    return (k >= first_driven_ && k < first_free_) ? maps_[k - first_driven_]
                                                  : free_;
  }
  std::size_t first_free() const { return first_free_; }

  // Partial RK4 step of length h from t.
  Amplitudes advance(const Amplitudes& a, double t, double h) const {
    return apply_map(step_map(t, h, driven(t, h)), a);
  }

  double phonon_rate(double t) const {
    return params_.phonon_b * std::norm(omega(t));
  }

 private:
  bool driven(double t, double h) const {
    return spec_.area != 0.0 && t + h > support_.begin && t < support_.end;
  }

  cplx omega(double t) const {
    if (spec_.area == 0.0 || t < support_.begin || t > support_.end) {
      return {0.0, 0.0};
    }
    return drive_amplitude(spec_, t);
  }

  Mat2 generator(cplx om) const {
    const double kappa = params_.gamma + params_.gamma_d +
                         params_.phonon_b * std::norm(om);
    return {cplx{0.0}, -kI * 0.5 * std::conj(om), -kI * 0.5 * om,
            cplx{-0.5 * kappa}};
  }

  Mat2 step_map(double t, double h, bool driven) const {
    const auto om = [&](double s) { return driven ? drive_amplitude(spec_, s)
                                                  : cplx{0.0}; };
    const Mat2 a = generator(om(t));
    const Mat2 b = generator(om(t + 0.5 * h));
    const Mat2 c = generator(om(t + h));
    auto mul = [](const Mat2& x, const Mat2& y) {
      return Mat2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                  x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
    };
    auto shifted = [](const Mat2& x, double s) {
      return Mat2{1.0 + s * x[0], s * x[1], s * x[2], 1.0 + s * x[3]};
    };
    const Mat2 k1 = a;
    const Mat2 k2 = mul(b, shifted(k1, 0.5 * h));
    const Mat2 k3 = mul(b, shifted(k2, 0.5 * h));
    const Mat2 k4 = mul(c, shifted(k3, h));
    Mat2 m{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}};
    for (int i = 0; i < 4; ++i) {
      m[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return m;
  }

  SystemParams params_;
  PulseSpec spec_;
  Interval support_;
  std::vector<Mat2> maps_;
  Mat2 free_{};
  std::size_t first_driven_ = 0;
  std::size_t first_free_ = 0;
};

Trajectory run_trajectory(const EffectiveEvolution& evolution,
                          const SystemParams& params, const TimeGrid& grid,
                          std::uint64_t master_seed, std::uint64_t stream,
                          const TrajectoryOptions& options) {
  Trajectory out;
  out.record.seed = master_seed;
  out.record.stream = stream;
  RandomStream rng(master_seed, stream);
  const std::size_t n = grid.size();
  const double bisection_tol = grid.dt / 100.0;
  if (options.record_path) out.conditional_pe.assign(n, 0.0);

  Amplitudes psi{cplx{1.0}, cplx{0.0}};
  double threshold = rng.uniform_open();

  auto jump = [&](const Amplitudes& at, double t) {
    const double total = params.gamma + evolution.phonon_rate(t) + params.gamma_d;
    const double u = rng.uniform_open() * total;
    JumpChannel channel = JumpChannel::kRadiative;
    if (u >= params.gamma) {
      channel = (u < params.gamma + evolution.phonon_rate(t))
                    ? JumpChannel::kPhonon
                    : JumpChannel::kNoise;
    }
    out.record.jump_times.push_back(t);
    out.record.jump_channels.push_back(channel);
    threshold = rng.uniform_open();
    if (channel == JumpChannel::kRadiative) {
      ++out.record.photon_count;
      return Amplitudes{cplx{1.0}, cplx{0.0}};
    }
    return Amplitudes{cplx{0.0}, at.e / std::abs(at.e)};
  };

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (options.record_path) {
      out.conditional_pe[k] = std::norm(psi.e) / psi.norm();
    }
    if (k >= evolution.first_free()) {
      // Without drive the norm decays monotonically towards |c_g|^2.
      if (psi.e == 0.0) break;
      if (!options.record_path && std::norm(psi.g) >= threshold) break;
    }
    Amplitudes next = apply_map(evolution.map(k), psi);
    if (next.norm() > threshold) {
      psi = next;
      continue;
    }
    // A jump lies inside [t_k, t_k+1]. Bisect on the norm, jump, and finish
    // the step from the jump time; repeat if the remainder jumps again.
    double t = grid.time(k);
    double remaining = grid.dt;
    Amplitudes current = psi;
    for (;;) {
      double lo = 0.0;
      double hi = remaining;
      while (hi - lo > bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        if (evolution.advance(current, t, mid).norm() > threshold) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const Amplitudes at = evolution.advance(current, t, hi);
      t += hi;
      remaining -= hi;
      current = jump(at, t);
      if (remaining <= 0.0) {
        next = current;
        break;
      }
      next = evolution.advance(current, t, remaining);
      if (next.norm() > threshold) break;
    }
    psi = next;
  }
  // With a recorded path the only early exit is psi = |g>, where the
  // remaining entries are already zero.
  if (options.record_path) {
    out.conditional_pe[n - 1] =
        psi.e == 0.0 ? 0.0 : std::norm(psi.e) / psi.norm();
  }
  return out;
}

void check_inputs(const SystemParams& params, const PulseSpec& spec,
                  const TimeGrid& grid) {
  params.validate();
  spec.validate();
  grid.validate();
  check_step_size(params, spec, grid);
}

constexpr std::int64_t kBlock = 4096;

}  // namespace

const char* to_string(JumpChannel channel) {
  switch (channel) {
    case JumpChannel::kRadiative:
      return "radiative";
    case JumpChannel::kPhonon:
      return "phonon";
    case JumpChannel::kNoise:
      return "noise";
  }
  return "unknown";
}

Trajectory sample_trajectory(const SystemParams& params, const PulseSpec& spec,
                             const TimeGrid& grid, std::uint64_t master_seed,
                             std::uint64_t stream,
                             const TrajectoryOptions& options) {
  check_inputs(params, spec, grid);
  const EffectiveEvolution evolution(params, spec, grid);
  return run_trajectory(evolution, params, grid, master_seed, stream, options);
}

double PhotocountResult::probability(int n) const {
  const auto it = p_n.find(n);
  return it == p_n.end() ? 0.0 : it->second;
}

double PhotocountResult::std_err(int n) const {
  const auto it = std_err_p_n.find(n);
  return it == std_err_p_n.end() ? 0.0 : it->second;
}

double PhotocountResult::purity(int n) const {
  const auto it = purities.find(n);
  return it == purities.end() ? 0.0 : it->second;
}

std::map<int, double> purity(const std::map<int, double>& p_n) {
  double emitted = 0.0;
  for (const auto& [n, p] : p_n) {
    if (n > 0) emitted += p;
  }
  if (!(emitted > 0.0)) {
    throw Degenerate("photon number purity undefined: no photon emitted");
  }
  std::map<int, double> out;
  for (const auto& [n, p] : p_n) {
    if (n > 0) out[n] = p / emitted;
  }
  return out;
}

PhotocountResult photocount_distribution(const SystemParams& params,
                                         const PulseSpec& spec,
                                         const TimeGrid& grid,
                                         std::int64_t n_trajectories,
                                         std::uint64_t master_seed,
                                         int threads) {
  if (n_trajectories < 1) {
    throw InvalidArgument("n_trajectories must be at least 1");
  }
  check_inputs(params, spec, grid);
  const EffectiveEvolution evolution(params, spec, grid);

  struct Block {
    std::map<int, std::int64_t> counts;
    std::int64_t phonon = 0;
    std::int64_t noise = 0;
  };
  const std::size_t blocks =
      static_cast<std::size_t>((n_trajectories + kBlock - 1) / kBlock);
  std::vector<Block> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::int64_t begin = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t end = std::min(n_trajectories, begin + kBlock);
    Block& block = partial[b];
    for (std::int64_t i = begin; i < end; ++i) {
      const Trajectory tr =
          run_trajectory(evolution, params, grid, master_seed,
                         static_cast<std::uint64_t>(i), TrajectoryOptions{});
      ++block.counts[tr.record.photon_count];
      for (JumpChannel c : tr.record.jump_channels) {
        if (c == JumpChannel::kPhonon) ++block.phonon;
        if (c == JumpChannel::kNoise) ++block.noise;
      }
    }
  });

  PhotocountResult result;
  result.n_trajectories = n_trajectories;
  for (const Block& block : partial) {
    for (const auto& [n, c] : block.counts) result.counts_histogram[n] += c;
    result.phonon_jumps += block.phonon;
    result.noise_jumps += block.noise;
  }

  const double total = static_cast<double>(n_trajectories);
  double s1 = 0.0, s2 = 0.0, sx = 0.0, sxx = 0.0, sxn = 0.0;
  for (const auto& [n, c] : result.counts_histogram) {
    const double p = static_cast<double>(c) / total;
    result.p_n[n] = p;
    result.std_err_p_n[n] = std::sqrt(p * (1.0 - p) / total);
    const double dn = n;
    const double x = dn * (dn - 1.0);
    s1 += p * dn;
    s2 += p * dn * dn;
    sx += p * x;
    sxx += p * x * x;
    sxn += p * x * dn;
  }
  result.expected_n = s1;
  const double var_n = std::max(0.0, s2 - s1 * s1);
  result.expected_n_std_err = std::sqrt(var_n / total);
  if (s1 > 0.0) {
    result.purities = purity(result.p_n);
    const double m = s1;
    const double f = sx;
    result.g2_zero = f / (m * m);
    const double var_x = std::max(0.0, sxx - sx * sx);
    const double cov = sxn - sx * s1;
    const double var_g = (var_x / std::pow(m, 4) +
                          4.0 * f * f * var_n / std::pow(m, 6) -
                          4.0 * f * cov / std::pow(m, 5)) /
                         total;
    result.g2_zero_std_err = std::sqrt(std::max(0.0, var_g));
  } else {
    result.g2_zero = std::numeric_limits<double>::quiet_NaN();
    result.g2_zero_std_err = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

std::vector<double> ensemble_pe(const SystemParams& params,
                                const PulseSpec& spec, const TimeGrid& grid,
                                std::int64_t n_trajectories,
                                std::uint64_t master_seed, int threads) {
  if (n_trajectories < 1) {
    throw InvalidArgument("n_trajectories must be at least 1");
  }
  check_inputs(params, spec, grid);
  const EffectiveEvolution evolution(params, spec, grid);
  constexpr std::int64_t kPathBlock = 256;
  const std::size_t n = grid.size();
  const std::size_t blocks = static_cast<std::size_t>(
      (n_trajectories + kPathBlock - 1) / kPathBlock);
  const std::size_t wave = static_cast<std::size_t>(std::max(threads, 1)) * 2;
  std::vector<double> mean(n, 0.0);
  TrajectoryOptions options;
  options.record_path = true;
  for (std::size_t first = 0; first < blocks; first += wave) {
    const std::size_t count = std::min(wave, blocks - first);
    std::vector<std::vector<double>> sums(count, std::vector<double>(n, 0.0));
    parallel_for(count, threads, [&](std::size_t w) {
      const std::int64_t begin =
          static_cast<std::int64_t>(first + w) * kPathBlock;
      const std::int64_t end = std::min(n_trajectories, begin + kPathBlock);
      for (std::int64_t i = begin; i < end; ++i) {
        const Trajectory tr =
            run_trajectory(evolution, params, grid, master_seed,
                           static_cast<std::uint64_t>(i), options);
        for (std::size_t k = 0; k < n; ++k) sums[w][k] += tr.conditional_pe[k];
      }
    });
    for (const auto& s : sums) {
      for (std::size_t k = 0; k < n; ++k) mean[k] += s[k];
    }
  }
  for (double& m : mean) m /= static_cast<double>(n_trajectories);
  return mean;
}

PairHistogram pair_histogram(const SystemParams& params, const PulseSpec& spec,
                             const TimeGrid& grid, std::int64_t n_trajectories,
                             std::uint64_t master_seed, double t1_begin,
                             double t1_width, std::size_t t1_bins,
                             double tau_width, std::size_t tau_bins,
                             int threads) {
  if (n_trajectories < 1 || t1_bins == 0 || tau_bins == 0 ||
      !(t1_width > 0.0) || !(tau_width > 0.0)) {
    throw InvalidArgument("invalid pair histogram layout");
  }
  check_inputs(params, spec, grid);
  const EffectiveEvolution evolution(params, spec, grid);
  const std::size_t blocks =
      static_cast<std::size_t>((n_trajectories + kBlock - 1) / kBlock);
  std::vector<std::vector<std::int64_t>> partial(
      blocks, std::vector<std::int64_t>(t1_bins * tau_bins, 0));
  std::vector<std::int64_t> pairs(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::int64_t begin = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t end = std::min(n_trajectories, begin + kBlock);
    for (std::int64_t i = begin; i < end; ++i) {
      const Trajectory tr =
          run_trajectory(evolution, params, grid, master_seed,
                         static_cast<std::uint64_t>(i), TrajectoryOptions{});
      if (tr.record.photon_count != 2) continue;
      std::array<double, 2> times{};
      std::size_t found = 0;
      for (std::size_t j = 0; j < tr.record.jump_times.size(); ++j) {
        if (tr.record.jump_channels[j] == JumpChannel::kRadiative) {
          times[found++] = tr.record.jump_times[j];
        }
      }
      ++pairs[b];
      const double x = (times[0] - t1_begin) / t1_width;
      const double y = (times[1] - times[0]) / tau_width;
      if (x < 0.0 || y < 0.0) continue;
      const auto xi = static_cast<std::size_t>(x);
      const auto yi = static_cast<std::size_t>(y);
      if (xi < t1_bins && yi < tau_bins) ++partial[b][xi * tau_bins + yi];
    }
  });
  PairHistogram h{t1_begin, t1_width, tau_width, t1_bins, tau_bins,
                  std::vector<double>(t1_bins * tau_bins, 0.0),
                  n_trajectories, 0};
  const double norm =
      1.0 / (static_cast<double>(n_trajectories) * t1_width * tau_width);
  for (std::size_t b = 0; b < blocks; ++b) {
    h.pairs += pairs[b];
    for (std::size_t k = 0; k < h.density.size(); ++k) {
      h.density[k] += static_cast<double>(partial[b][k]);
    }
  }
  for (double& d : h.density) d *= norm;
  return h;
}

}  // namespace pulsetls
