// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "pulsetls/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pulsetls/error.hpp"
#include "pulsetls/lindblad.hpp"
#include "regression.hpp"

namespace pulsetls {

G1Grid g1_grid(const SystemParams& params, const PulseSpec& spec,
               const TimeGrid& grid, const CorrelationOptions& options) {
  params.validate();
  spec.validate();
  grid.validate();
  check_step_size(params, spec, grid);
  if (options.t1_stride == 0 || options.tau_stride == 0) {
    throw InvalidArgument("output strides must be positive");
  }
  G1Grid g1;
  g1.grid = grid;
  const double span =
      options.tau_max > 0.0 ? options.tau_max : 10.0 * params.tau_e();
  g1.n_tau = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::llround(span / grid.dt)) + 1);

  const Propagator propagator(params, spec, grid);
  const std::size_t n = grid.size();
  std::vector<DensityMatrix> rho(n);
  {
    Vec4 v = options.rho0.vec();
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) v = propagator.step(k - 1, v);
      rho[k] = DensityMatrix::from_vec(v);
    }
  }
  std::vector<double> pe(n);
  for (std::size_t k = 0; k < n; ++k) pe[k] = rho[k].excited_population();
  g1.expected_n = params.gamma * trapezoid(pe, grid.dt);

  // <sigma^+(t1) sigma(t1 + tau)> = tr[sigma E(rho sigma^+)], and
  // rho sigma^+ has entries (gg, eg) = (rho_ge, rho_ee).
  const double gamma = params.gamma;
  auto seed = [&](std::size_t i) -> std::optional<Vec4> {
    const DensityMatrix& r = rho[i];
    if (r.ee == 0.0 && r.ge == 0.0) return std::nullopt;
    return Vec4{gamma * r.ge, cplx{0.0}, gamma * r.ee, cplx{0.0}};
  };
  auto readout = [](const Vec4& v) { return v[2]; };

  double end = options.t1_output_end;
  if (std::isnan(end)) end = drive_support(spec).end;
  std::size_t rows = 0;
  if (end >= grid.t_start) {
    rows = std::min(n, static_cast<std::size_t>(
                           std::floor((end - grid.t_start) / grid.dt)) + 1);
  }
  detail::OutputLayout layout{options.t1_stride, options.tau_stride, rows};
  auto out = detail::regress<cplx>(propagator, grid, g1.n_tau,
                                   propagator.coherence_factor(), seed, readout,
                                   layout, false, options.threads);
  for (std::size_t i : out.row_index) g1.t1_axis.push_back(grid.time(i));
  for (std::size_t j : out.col_index) {
    g1.tau_axis.push_back(static_cast<double>(j) * grid.dt);
  }
  g1.values = std::move(out.stored);
  g1.integrated = std::move(out.col_integral);

  const double total = std::abs(g1.integrated.front());
  const double c = std::abs(propagator.coherence_factor());
  if (total > 0.0) {
    const double beyond = std::abs(g1.integrated.back()) * grid.dt * c / (1.0 - c);
    if (beyond / total > 1e-3) {
      g1.warnings.push_back("tau_max truncates the first-order correlation");
    }
  }
  return g1;
}

std::vector<double> frequency_axis(double range, std::size_t points) {
  if (!(range > 0.0) || points < 2) {
    throw InvalidArgument("frequency axis needs range > 0 and >= 2 points");
  }
  std::vector<double> axis(points);
  const double step = 2.0 * range / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    axis[k] = -range + step * static_cast<double>(k);
  }
  return axis;
}

SpectrumResult emission_spectrum(const G1Grid& g1,
                                 std::span<const double> omega_axis,
                                 double detector_linewidth) {
  if (!(detector_linewidth >= 0.0)) {
    throw InvalidArgument("detector linewidth must be non-negative");
  }
  const std::size_t n_tau = g1.integrated.size();
  const double dt = g1.grid.dt;
  std::vector<cplx> weighted(n_tau);
  for (std::size_t j = 0; j < n_tau; ++j) {
    const double tau = static_cast<double>(j) * dt;
    weighted[j] = detail::trapezoid_weight(j, n_tau, dt) *
                  std::exp(-0.5 * detector_linewidth * tau) * g1.integrated[j];
  }

  SpectrumResult result;
  result.omega_axis.assign(omega_axis.begin(), omega_axis.end());
  result.s_of_omega.resize(omega_axis.size());
  result.detector_linewidth = detector_linewidth;
  result.expected_n = g1.expected_n;
  constexpr std::size_t kReanchor = 512;
  for (std::size_t w = 0; w < omega_axis.size(); ++w) {
    const double omega = omega_axis[w];
    const cplx rotation = std::polar(1.0, omega * dt);
    cplx phase{1.0, 0.0};
    double sum = 0.0;
    for (std::size_t j = 0; j < n_tau; ++j) {
      if (j % kReanchor == 0) {
        phase = std::polar(1.0, omega * dt * static_cast<double>(j));
      }
      sum += (phase * weighted[j]).real();
      phase *= rotation;
    }
    result.s_of_omega[w] = sum / std::numbers::pi;
  }
  return result;
}

double spectral_weight(const SpectrumResult& spectrum) {
  double total = 0.0;
  for (std::size_t k = 1; k < spectrum.omega_axis.size(); ++k) {
    total += 0.5 * (spectrum.s_of_omega[k] + spectrum.s_of_omega[k - 1]) *
             (spectrum.omega_axis[k] - spectrum.omega_axis[k - 1]);
  }
  return total;
}

double interquartile_width(const SpectrumResult& spectrum) {
  const auto& x = spectrum.omega_axis;
  const auto& s = spectrum.s_of_omega;
  if (x.size() < 2) throw InvalidArgument("spectrum axis too short");
  std::vector<double> cumulative(x.size(), 0.0);
  for (std::size_t k = 1; k < x.size(); ++k) {
    cumulative[k] = cumulative[k - 1] +
                    0.5 * (std::max(s[k], 0.0) + std::max(s[k - 1], 0.0)) *
                        (x[k] - x[k - 1]);
  }
  const double total = cumulative.back();
  if (!(total > 0.0)) throw Degenerate("spectrum has no weight");
  auto quantile = [&](double level) {
    const double target = level * total;
    const auto it =
        std::lower_bound(cumulative.begin(), cumulative.end(), target);
    const std::size_t k = static_cast<std::size_t>(it - cumulative.begin());
    if (k == 0) return x.front();
    const double span = cumulative[k] - cumulative[k - 1];
    const double frac = span > 0.0 ? (target - cumulative[k - 1]) / span : 0.0;
    return x[k - 1] + frac * (x[k] - x[k - 1]);
  };
  return quantile(0.75) - quantile(0.25);
}

}  // namespace pulsetls
