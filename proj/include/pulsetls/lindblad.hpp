// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulsetls/pulse.hpp"
#include "pulsetls/state.hpp"

namespace pulsetls {

// Instantaneous collapse rates. Only the radiative channel (operator
// sqrt(gamma) sigma) is a photodetection channel; the other two act through
// sigma^+ sigma.
struct CollapseRates {
  double radiative;
  double phonon;
  double noise;
};

CollapseRates collapse_rates(const SystemParams& params, const PulseSpec& spec,
                             double t);

// d rho / dt of the master equation with H = (Omega sigma^+ + Omega* sigma)/2.
DensityMatrix master_rhs(const DensityMatrix& rho, double t,
                         const SystemParams& params, const PulseSpec& spec);

using Vec4 = std::array<cplx, 4>;   // (gg, ge, eg, ee)
using Mat4 = std::array<cplx, 16>;  // row-major, acts on Vec4

// Generator of the master equation for a fixed drive value.
Mat4 liouvillian(const SystemParams& params, cplx omega);

// Linear map taking rho(t) to its classical RK4 step rho(t + h).
Mat4 rk4_map(const SystemParams& params, const PulseSpec& spec, double t,
             double h);

Vec4 apply(const Mat4& m, const Vec4& v);

// Caches one RK4 step map per grid step inside the drive support. Outside
// the support every step uses the same free map, so indices may run past the
// end of the grid.
class Propagator {
 public:
  Propagator(const SystemParams& params, const PulseSpec& spec,
             const TimeGrid& grid);

  const Mat4& map(std::size_t k) const {
    return (k >= first_driven_ && k < first_free_) ? maps_[k - first_driven_]
                                                  : free_;
  }
  Vec4 step(std::size_t k, const Vec4& v) const {
    return pulsetls::apply(map(k), v);
  }

  // Steps k < first_driven() or k >= first_free() use the free map.
  std::size_t first_driven() const { return first_driven_; }
  std::size_t first_free() const { return first_free_; }

  const Mat4& free_map() const { return free_; }
  // Per-step factors of the free map on rho_ee and on rho_eg.
  double population_factor() const { return free_[15].real(); }
  cplx coherence_factor() const { return free_[10]; }

 private:
  std::vector<Mat4> maps_;
  Mat4 free_{};
  std::size_t first_driven_ = 0;
  std::size_t first_free_ = 0;
};

struct PropagationDiagnostics {
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<std::string> warnings;
};

struct PropagationResult {
  TimeGrid grid;
  std::vector<double> pe_of_t;
  std::optional<std::vector<DensityMatrix>> rho_of_t;
  double expected_n = 0.0;  // gamma * trapezoid(pe_of_t)
  // Excited population just after the drive, referred back to the pulse
  // centre with the free decay factor. NaN if the grid ends inside the pulse.
  // Exact in the impulsive limit; for pulses comparable to tau_e it
  // over-corrects and can exceed 1.
  double post_pulse_pe = 0.0;
  PropagationDiagnostics diagnostics;
};

struct PropagateOptions {
  bool store_states = false;
};

PropagationResult propagate(const DensityMatrix& rho0,
                            const SystemParams& params, const PulseSpec& spec,
                            const TimeGrid& grid,
                            const PropagateOptions& options = {});

struct RabiPoint {
  double area;
  double pe_ideal;  // sin^2(A/2)
  double post_pulse_pe;
  double expected_n;
};

// Each area runs on the grid given, or on default_grid when none is given.
std::vector<RabiPoint> rabi_scan(const SystemParams& params,
                                 const PulseSpec& base_spec,
                                 std::span<const double> areas,
                                 const std::optional<TimeGrid>& grid,
                                 int threads = 1);

// Exclusive photon-number probabilities P_0 .. P_n_max from the master
// equation resolved by radiative jump count, starting from |g><g|. Excited
// population left at the end of the grid is counted as one more photon.
// overflow = 1 - sum P_n collects records with more than n_max photons.
struct PhotonNumberDistribution {
  std::vector<double> p_n;
  double overflow = 0.0;
};

PhotonNumberDistribution photon_number_distribution(const SystemParams& params,
                                                    const PulseSpec& spec,
                                                    const TimeGrid& grid,
                                                    int n_max);

// Trapezoid rule on a uniform grid.
double trapezoid(std::span<const double> values, double dt);

}  // namespace pulsetls
