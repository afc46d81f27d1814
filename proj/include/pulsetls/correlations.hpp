// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pulsetls/pulse.hpp"
#include "pulsetls/state.hpp"

namespace pulsetls {

struct CorrelationOptions {
  double tau_max = 0.0;  // 0 selects 10 tau_e
  // Decimation of the stored matrices only; every integral and marginal is
  // taken at full resolution.
  std::size_t t1_stride = 1;
  std::size_t tau_stride = 1;
  // Stored rows stop after this time. NaN selects the end of the drive
  // support; later rows of G2 are identically zero.
  double t1_output_end = std::numeric_limits<double>::quiet_NaN();
  DensityMatrix rho0 = DensityMatrix::ground();
  int threads = 1;
};

// Two-time second-order correlation G2(t1, tau) on the grid's t1 axis and
// the rectangular delay axis tau_j = j dt, j = 0 .. n_tau - 1.
struct CorrelationGrid {
  TimeGrid grid;
  std::size_t n_tau = 0;

  // Stored (decimated) axes and matrices, row-major [t1][tau].
  std::vector<double> t1_axis;
  std::vector<double> tau_axis;
  std::vector<double> g2_values;
  std::vector<double> p2_joint;  // empty until p2_from_g2

  // Full-resolution marginals.
  std::vector<double> pe_of_t;         // on the grid
  std::vector<double> g2_row_integral;  // int G2(t1, tau) dtau, on the grid
  std::vector<double> g2_second_time;   // int G2(t - tau, tau) dtau, on the grid
  std::vector<double> g2_col_integral;  // int G2(t1, tau) dt1, on the tau axis
  double g2_integral = 0.0;             // half-plane double integral of G2

  // Filled by p2_from_g2: density of ordered pairs (first emission at t1,
  // second at t1 + tau). On the one-sided delay axis this equals G2.
  std::vector<double> p2_of_t1;
  std::vector<double> p2_of_tau;
  double pair_probability = 0.0;  // P_2

  // Filled by p1_density.
  std::vector<double> p1_of_t1;
  double single_probability = 0.0;  // P_1
  double p1_min = 0.0;

  double expected_n = 0.0;
  double g2_max = 0.0;
  double g2_diagonal_max = 0.0;  // max over t1 of |G2(t1, 0)|
  double tail_mass_fraction = 0.0;
  std::vector<std::string> warnings;
};

CorrelationGrid g2_grid(const SystemParams& params, const PulseSpec& spec,
                        const TimeGrid& grid,
                        const CorrelationOptions& options = {});

void p2_from_g2(CorrelationGrid& corr);

// p1(t) = gamma Pe(t) - p2_first(t) - p2_second(t). Throws RegimeViolation
// when p1 < -1e-6 on two or more consecutive samples; the grid is still
// filled in before throwing.
void p1_density(const SystemParams& params, const PulseSpec& spec,
                const TimeGrid& grid, CorrelationGrid& corr);

struct G2Summary {
  double g2_zero = 0.0;
  double e_n = 0.0;
  double e_n_n_minus_1 = 0.0;
};

// g2[0] = E[n(n-1)] / E[n]^2 with E[n(n-1)] = 2 * half-plane integral of G2.
// Throws Degenerate when E[n] = 0.
G2Summary g2_zero(const SystemParams& params, const PulseSpec& spec,
                  const TimeGrid& grid, const CorrelationOptions& options = {});
G2Summary summarize(const CorrelationGrid& corr);

// G2(t_i, t_j) on a decimated square grid. Entries with i < j come from
// forward propagation of the collapsed state at t_i; entries with i > j come
// from backward propagation of sigma^+ sigma with the adjoint generator
// from t_i. Exchange symmetry of the result checks the two routes against
// each other.
struct TwoSidedG2 {
  std::vector<double> times;
  std::vector<double> values;  // row-major [i][j]
};

TwoSidedG2 g2_two_sided(const SystemParams& params, const PulseSpec& spec,
                        const TimeGrid& grid, std::size_t stride);

}  // namespace pulsetls
