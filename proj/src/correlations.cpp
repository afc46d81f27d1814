// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "pulsetls/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pulsetls/error.hpp"
#include "pulsetls/lindblad.hpp"
#include "regression.hpp"

namespace pulsetls {

namespace {

constexpr double kTailWarning = 1e-3;
constexpr double kRegimeTolerance = -1e-6;

std::size_t tau_points(const SystemParams& params, const TimeGrid& grid,
                       double tau_max) {
  const double span = tau_max > 0.0 ? tau_max : 10.0 * params.tau_e();
  if (!std::isfinite(span)) throw InvalidArgument("tau_max must be finite");
  return std::max<std::size_t>(
      2, static_cast<std::size_t>(std::llround(span / grid.dt)) + 1);
}

std::vector<double> excited_population(const Propagator& propagator,
                                       const DensityMatrix& rho0,
                                       std::size_t n) {
  std::vector<double> pe(n);
  Vec4 v = rho0.vec();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) v = propagator.step(k - 1, v);
    pe[k] = v[3].real();
  }
  return pe;
}

std::size_t output_rows(const PulseSpec& spec, const TimeGrid& grid,
                        double t1_output_end) {
  const double end =
      std::isnan(t1_output_end) ? drive_support(spec).end : t1_output_end;
  if (end < grid.t_start) return 0;
  const double x = std::floor((end - grid.t_start) / grid.dt);
  return std::min(grid.size(), static_cast<std::size_t>(x) + 1);
}

void validate_inputs(const SystemParams& params, const PulseSpec& spec,
                     const TimeGrid& grid, const CorrelationOptions& options) {
  params.validate();
  spec.validate();
  grid.validate();
  check_step_size(params, spec, grid);
  if (options.t1_stride == 0 || options.tau_stride == 0) {
    throw InvalidArgument("output strides must be positive");
  }
  if (options.tau_max < 0.0) throw InvalidArgument("tau_max must be >= 0");
}

}  // namespace

CorrelationGrid g2_grid(const SystemParams& params, const PulseSpec& spec,
                        const TimeGrid& grid,
                        const CorrelationOptions& options) {
  validate_inputs(params, spec, grid, options);
  CorrelationGrid corr;
  corr.grid = grid;
  corr.n_tau = tau_points(params, grid, options.tau_max);

  const Propagator propagator(params, spec, grid);
  const std::size_t n = grid.size();
  corr.pe_of_t = excited_population(propagator, options.rho0, n);
  corr.expected_n = params.gamma * trapezoid(corr.pe_of_t, grid.dt);

  // sigma rho sigma^+ = rho_ee |g><g|. Without drive |g><g| is stationary,
  // so rows from first_free on vanish identically.
  const double gamma2 = params.gamma * params.gamma;
  const std::size_t k_off = propagator.first_free();
  auto seed = [&](std::size_t i) -> std::optional<Vec4> {
    if (i >= k_off || corr.pe_of_t[i] == 0.0) return std::nullopt;
    return Vec4{cplx{gamma2 * corr.pe_of_t[i]}, cplx{0.0}, cplx{0.0},
                cplx{0.0}};
  };
  auto readout = [](const Vec4& v) { return v[3].real(); };

  detail::OutputLayout layout{options.t1_stride, options.tau_stride,
                              output_rows(spec, grid, options.t1_output_end)};
  auto out = detail::regress<double>(propagator, grid, corr.n_tau,
                                     propagator.population_factor(), seed,
                                     readout, layout, true, options.threads);

  for (std::size_t i : out.row_index) corr.t1_axis.push_back(grid.time(i));
  for (std::size_t j : out.col_index) {
    corr.tau_axis.push_back(static_cast<double>(j) * grid.dt);
  }
  corr.g2_values = std::move(out.stored);
  corr.g2_row_integral = std::move(out.row_integral);
  corr.g2_col_integral = std::move(out.col_integral);
  corr.g2_second_time = std::move(out.second_time);
  corr.g2_integral = out.total;

  for (double v : corr.g2_values) corr.g2_max = std::max(corr.g2_max, v);
  // The tau = 0 column: the collapsed state has no excited population.
  for (std::size_t i = 0; i < n; ++i) {
    if (auto s = seed(i)) {
      corr.g2_diagonal_max =
          std::max(corr.g2_diagonal_max, std::abs(readout(*s)));
    }
  }

  const double a = propagator.population_factor();
  if (corr.g2_integral > 0.0) {
    const double beyond =
        corr.g2_col_integral.back() * grid.dt * a / (1.0 - a);
    corr.tail_mass_fraction = beyond / corr.g2_integral;
    if (corr.tail_mass_fraction > kTailWarning) {
      corr.warnings.push_back("tau_max truncates " +
                              std::to_string(corr.tail_mass_fraction) +
                              " of the pair mass");
    }
  }
  const double tp = spec.tau_p();
  if (grid.t_start > spec.center_time - 4.0 * tp ||
      grid.time(grid.n_steps()) < spec.center_time + 4.0 * tp) {
    corr.warnings.push_back(
        "time grid does not cover t_c +/- 4 tau_p; pulse is truncated");
  }
  return corr;
}

void p2_from_g2(CorrelationGrid& corr) {
  corr.p2_joint = corr.g2_values;
  corr.p2_of_t1 = corr.g2_row_integral;
  corr.p2_of_tau = corr.g2_col_integral;
  corr.pair_probability = corr.g2_integral;
}

void p1_density(const SystemParams& params, const PulseSpec& spec,
                const TimeGrid& grid, CorrelationGrid& corr) {
  (void)spec;
  if (corr.p2_of_t1.empty()) p2_from_g2(corr);
  const std::size_t n = grid.size();
  if (corr.pe_of_t.size() != n || corr.g2_second_time.size() != n) {
    throw InvalidArgument("correlation grid does not match the time grid");
  }
  corr.p1_of_t1.resize(n);
  corr.p1_min = std::numeric_limits<double>::infinity();
  std::size_t run = 0;
  std::size_t longest = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p1 = params.gamma * corr.pe_of_t[k] - corr.p2_of_t1[k] -
                      corr.g2_second_time[k];
    corr.p1_of_t1[k] = p1;
    corr.p1_min = std::min(corr.p1_min, p1);
    run = p1 < kRegimeTolerance ? run + 1 : 0;
    longest = std::max(longest, run);
  }
  corr.single_probability = trapezoid(corr.p1_of_t1, grid.dt);
  if (longest >= 2) {
    throw RegimeViolation(
        "single-photon density p1 reaches " + std::to_string(corr.p1_min) +
        "; three-photon emission is not negligible");
  }
}

G2Summary summarize(const CorrelationGrid& corr) {
  G2Summary s;
  s.e_n = corr.expected_n;
  s.e_n_n_minus_1 = 2.0 * corr.g2_integral;
  if (!(s.e_n > 0.0)) {
    throw Degenerate("g2[0] undefined: expected photon number is zero");
  }
  s.g2_zero = s.e_n_n_minus_1 / (s.e_n * s.e_n);
  return s;
}

G2Summary g2_zero(const SystemParams& params, const PulseSpec& spec,
                  const TimeGrid& grid, const CorrelationOptions& options) {
  CorrelationOptions no_matrix = options;
  no_matrix.t1_output_end = -std::numeric_limits<double>::infinity();
  return summarize(g2_grid(params, spec, grid, no_matrix));
}

TwoSidedG2 g2_two_sided(const SystemParams& params, const PulseSpec& spec,
                        const TimeGrid& grid, std::size_t stride) {
  params.validate();
  spec.validate();
  grid.validate();
  check_step_size(params, spec, grid);
  if (stride == 0) throw InvalidArgument("stride must be positive");
  const Propagator propagator(params, spec, grid);
  const std::size_t n = grid.size();
  const std::vector<double> pe =
      excited_population(propagator, DensityMatrix::ground(), n);
  const double gamma2 = params.gamma * params.gamma;

  TwoSidedG2 out;
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < n; i += stride) {
    index.push_back(i);
    out.times.push_back(grid.time(i));
  }
  const std::size_t m = index.size();
  out.values.assign(m * m, 0.0);

  // Forward: collapse at t_i, propagate, read sigma^+ sigma at later t_j.
  for (std::size_t p = 0; p < m; ++p) {
    Vec4 v{cplx{gamma2 * pe[index[p]]}, cplx{0.0}, cplx{0.0}, cplx{0.0}};
    std::size_t k = index[p];
    for (std::size_t q = p + 1; q < m; ++q) {
      for (; k < index[q]; ++k) v = propagator.step(k, v);
      out.values[p * m + q] = v[3].real();
    }
  }
  // Backward: the functional rho -> tr[sigma^+ sigma E(rho)] pulled back
  // from t_i with the transposed step maps, applied to the collapsed state
  // at the earlier t_j.
  for (std::size_t p = 0; p < m; ++p) {
    std::array<cplx, 4> f{cplx{0.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}};
    std::size_t k = index[p];
    for (std::size_t q = p; q-- > 0;) {
      for (; k > index[q]; --k) {
        const Mat4& map = propagator.map(k - 1);
        std::array<cplx, 4> g{};
        for (int c = 0; c < 4; ++c) {
          for (int r = 0; r < 4; ++r) g[c] += f[r] * map[4 * r + c];
        }
        f = g;
      }
      out.values[p * m + q] = (f[0] * gamma2 * pe[index[q]]).real();
    }
  }
  return out;
}

}  // namespace pulsetls
