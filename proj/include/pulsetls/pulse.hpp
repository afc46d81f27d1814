// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

namespace pulsetls {

using cplx = std::complex<double>;

// Chirped Gaussian drive. Times are in whatever unit the caller uses for the
// system rates; the library never assumes a unit.
struct PulseSpec {
  double area = 0.0;               // radians
  double tau_fwhm = 1.0;           // intensity FWHM of |Omega(t)|^2
  double chirp_bw_fraction = 0.0;  // fractional bandwidth increase
  double carrier_phase = 0.0;      // radians
  double center_time = 0.0;

  // Gaussian 1/e half width of the amplitude: tau_fwhm / sqrt(2 ln 2).
  double tau_p() const;
  // Quadratic phase coefficient alpha of exp(-i alpha (t - t_c)^2).
  double chirp() const;

  // Throws InvalidArgument when an invariant does not hold.
  void validate() const;
};

double chirp_parameter(double delta_bw, double tau_p);

// Rabi frequency Omega(t) = mu E(t) / hbar including chirp and carrier phase.
cplx drive_amplitude(const PulseSpec& spec, double t);

// Integral of |Omega| from -infinity to t.
double accumulated_area(const PulseSpec& spec, double t);

// Interval outside of which the drive is treated as exactly zero by the
// propagators: t_c +/- kSupportHalfWidth * tau_p. There
// |Omega| / max|Omega| < exp(-64), far below double resolution.
inline constexpr double kSupportHalfWidth = 8.0;

struct Interval {
  double begin;
  double end;
};

Interval drive_support(const PulseSpec& spec);

}  // namespace pulsetls
