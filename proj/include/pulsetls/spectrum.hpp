// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pulsetls/correlations.hpp"
#include "pulsetls/pulse.hpp"
#include "pulsetls/state.hpp"

namespace pulsetls {

// G1(t1, tau) = gamma <sigma^+(t1) sigma(t1 + tau)> from the regression
// theorem.
struct G1Grid {
  TimeGrid grid;
  std::size_t n_tau = 0;
  std::vector<double> t1_axis;
  std::vector<double> tau_axis;
  std::vector<cplx> values;      // decimated, row-major [t1][tau]
  std::vector<cplx> integrated;  // int G1(t1, tau) dt1 at full tau resolution
  double expected_n = 0.0;
  std::vector<std::string> warnings;
};

G1Grid g1_grid(const SystemParams& params, const PulseSpec& spec,
               const TimeGrid& grid, const CorrelationOptions& options = {});

struct SpectrumResult {
  std::vector<double> omega_axis;
  std::vector<double> s_of_omega;
  double detector_linewidth = 0.0;
  double expected_n = 0.0;
};

// S(w) = (1/pi) Re int dtau exp(i w tau) int dt1 G1(t1, tau), so that the
// integral over all w equals E[n]. A positive detector_linewidth convolves
// with a unit-area Lorentzian of that FWHM.
SpectrumResult emission_spectrum(const G1Grid& g1,
                                 std::span<const double> omega_axis,
                                 double detector_linewidth = 0.0);

// Evenly spaced axis on [-range, range].
std::vector<double> frequency_axis(double range, std::size_t points);

// Distance between the 25% and 75% points of the cumulative spectrum.
double interquartile_width(const SpectrumResult& spectrum);

// Trapezoid integral of S over its axis.
double spectral_weight(const SpectrumResult& spectrum);

}  // namespace pulsetls
