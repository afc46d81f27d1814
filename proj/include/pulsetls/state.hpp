// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "pulsetls/pulse.hpp"

namespace pulsetls {

// Physical rates of the emitter. Any consistent time unit works; tau_e() is
// the natural one.
struct SystemParams {
  double gamma = 1.0;     // radiative decay rate
  double gamma_d = 0.0;   // noise dephasing rate (sigma^+ sigma channel)
  double phonon_b = 0.0;  // power-dependent dephasing coefficient, a time

  double tau_e() const { return 1.0 / gamma; }
  void validate() const;
};

// 2x2 operator in the {|g>, |e>} basis. Also used for the non-Hermitian
// conditional operators of the regression theorem, so nothing here assumes
// Hermiticity.
struct DensityMatrix {
  cplx gg{1.0, 0.0};
  cplx ge{0.0, 0.0};
  cplx eg{0.0, 0.0};  // <e|rho|g>
  cplx ee{0.0, 0.0};

  static DensityMatrix ground() { return {}; }
  static DensityMatrix excited() {
    return {cplx{0.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}};
  }
  // sqrt(1 - pe)|g> + exp(-i phase) sqrt(pe)|e>
  static DensityMatrix superposition(double pe, double phase = 0.0);

  cplx trace() const { return gg + ee; }
  double excited_population() const { return ee.real(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;  // of the Hermitian part
  double purity() const;          // tr rho^2, real part

  std::array<cplx, 4> vec() const { return {gg, ge, eg, ee}; }
  static DensityMatrix from_vec(const std::array<cplx, 4>& v) {
    return {v[0], v[1], v[2], v[3]};
  }
};

// Uniform grid t_k = t_start + k dt, k = 0 .. n_steps. The last point is the
// first grid point at or after t_end.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;

  std::size_t n_steps() const;
  std::size_t size() const { return n_steps() + 1; }
  double time(std::size_t k) const {
    return t_start + static_cast<double>(k) * dt;
  }
  void validate() const;
};

// [t_c - 5 tau_p, t_c + 10 tau_e] with dt = min(tau_p / 100, tau_e / 2000).
TimeGrid default_grid(const SystemParams& params, const PulseSpec& spec);

// Throws NumericalGuard when dt > tau_p / 20 or dt > tau_e / 200.
void check_step_size(const SystemParams& params, const PulseSpec& spec,
                     const TimeGrid& grid);

}  // namespace pulsetls
