// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "pulsetls/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pulsetls/error.hpp"

namespace pulsetls {

void SystemParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gamma must be positive, got " +
                          std::to_string(gamma));
  }
  if (!(gamma_d >= 0.0) || !std::isfinite(gamma_d)) {
    throw InvalidArgument("gamma_d must be non-negative, got " +
                          std::to_string(gamma_d));
  }
  if (!(phonon_b >= 0.0) || !std::isfinite(phonon_b)) {
    throw InvalidArgument("phonon_b must be non-negative, got " +
                          std::to_string(phonon_b));
  }
}

DensityMatrix DensityMatrix::superposition(double pe, double phase) {
  const double a = std::sqrt(1.0 - pe);
  const cplx b = std::polar(std::sqrt(pe), -phase);
  // |psi><psi| with psi = (a, b)
  return {cplx{a * a}, a * std::conj(b), b * a, b * std::conj(b)};
}

double DensityMatrix::hermiticity_error() const {
  return std::max({std::abs(ge - std::conj(eg)), std::abs(gg.imag()),
                   std::abs(ee.imag())});
}

double DensityMatrix::min_eigenvalue() const {
  const double a = gg.real();
  const double d = ee.real();
  const cplx off = 0.5 * (ge + std::conj(eg));
  const double mean = 0.5 * (a + d);
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(off));
  return mean - half_gap;
}

double DensityMatrix::purity() const {
  return (gg * gg + ge * eg + eg * ge + ee * ee).real();
}

std::size_t TimeGrid::n_steps() const {
  const double span = (t_end - t_start) / dt;
  return static_cast<std::size_t>(std::ceil(span - 1e-9));
}

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end)) {
    throw InvalidArgument("time grid needs t_start < t_end");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("time grid needs dt > 0");
  }
  const double span = (t_end - t_start) / dt;
  if (!(span < 1e9)) {
    throw InvalidArgument("time grid has too many steps: " +
                          std::to_string(span));
  }
}

TimeGrid default_grid(const SystemParams& params, const PulseSpec& spec) {
  params.validate();
  spec.validate();
  const double tp = spec.tau_p();
  const double te = params.tau_e();
  return {spec.center_time - 5.0 * tp, spec.center_time + 10.0 * te,
          std::min(tp / 100.0, te / 2000.0)};
}

void check_step_size(const SystemParams& params, const PulseSpec& spec,
                     const TimeGrid& grid) {
  const double tp = spec.tau_p();
  if (grid.dt > tp / 20.0) {
    throw NumericalGuard("dt = " + std::to_string(grid.dt) +
                         " exceeds tau_p / 20 = " + std::to_string(tp / 20.0));
  }
  if (grid.dt > params.tau_e() / 200.0) {
    throw NumericalGuard("dt = " + std::to_string(grid.dt) +
                         " exceeds tau_e / 200 = " +
                         std::to_string(params.tau_e() / 200.0));
  }
}

}  // namespace pulsetls
