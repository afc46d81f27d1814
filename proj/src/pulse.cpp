// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "pulsetls/pulse.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pulsetls/error.hpp"

namespace pulsetls {

double PulseSpec::tau_p() const {
  return tau_fwhm / std::sqrt(2.0 * std::numbers::ln2);
}

double PulseSpec::chirp() const {
  return chirp_parameter(chirp_bw_fraction, tau_p());
}

void PulseSpec::validate() const {
  if (!(tau_fwhm > 0.0) || !std::isfinite(tau_fwhm)) {
    throw InvalidArgument("pulse tau_fwhm must be positive and finite, got " +
                          std::to_string(tau_fwhm));
  }
  if (!(area >= 0.0) || !std::isfinite(area)) {
    throw InvalidArgument("pulse area must be non-negative, got " +
                          std::to_string(area));
  }
  if (!(chirp_bw_fraction >= 0.0) || !std::isfinite(chirp_bw_fraction)) {
    throw InvalidArgument("chirp bandwidth fraction must be non-negative, got " +
                          std::to_string(chirp_bw_fraction));
  }
  if (!std::isfinite(carrier_phase) || !std::isfinite(center_time)) {
    throw InvalidArgument("pulse phase and centre must be finite");
  }
}

double chirp_parameter(double delta_bw, double tau_p) {
  if (!(delta_bw >= 0.0)) {
    throw InvalidArgument("chirp bandwidth fraction must be non-negative");
  }
  if (!(tau_p > 0.0)) throw InvalidArgument("tau_p must be positive");
  return std::sqrt(2.0 * delta_bw + delta_bw * delta_bw) / (tau_p * tau_p);
}

cplx drive_amplitude(const PulseSpec& spec, double t) {
  if (spec.area == 0.0) return {0.0, 0.0};
  const double tp = spec.tau_p();
  const double s = t - spec.center_time;
  const double envelope = spec.area / std::sqrt(tp * tp * std::numbers::pi) *
                          std::exp(-s * s / (tp * tp));
  const double phase = spec.chirp() * s * s + spec.carrier_phase;
  return std::polar(envelope, -phase);
}

double accumulated_area(const PulseSpec& spec, double t) {
  const double x = (t - spec.center_time) / spec.tau_p();
  // erfc keeps full relative precision deep in the leading tail.
  return 0.5 * spec.area * std::erfc(-x);
}

Interval drive_support(const PulseSpec& spec) {
  const double half = kSupportHalfWidth * spec.tau_p();
  return {spec.center_time - half, spec.center_time + half};
}

}  // namespace pulsetls
