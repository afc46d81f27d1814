// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "pulsetls/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pulsetls/error.hpp"
#include "pulsetls/parallel.hpp"

namespace pulsetls {

namespace {

constexpr cplx kI{0.0, 1.0};

Mat4 identity4() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[5 * i] = 1.0;
  return m;
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      const cplx aik = a[4 * i + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < 4; ++j) c[4 * i + j] += aik * b[4 * k + j];
    }
  }
  return c;
}

// I + s * m
Mat4 shifted(const Mat4& m, double s) {
  Mat4 r = identity4();
  for (int i = 0; i < 16; ++i) r[i] += s * m[i];
  return r;
}

std::size_t floor_index(double x) {
  return x <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(x));
}

std::size_t ceil_index(double x) {
  return x <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(x));
}

}  // namespace

CollapseRates collapse_rates(const SystemParams& params, const PulseSpec& spec,
                             double t) {
  const double omega = std::abs(drive_amplitude(spec, t));
  return {params.gamma, params.phonon_b * omega * omega, params.gamma_d};
}

Mat4 liouvillian(const SystemParams& params, cplx omega) {
  const double kappa =
      params.gamma_d + params.phonon_b * std::norm(omega);  // sigma^+ sigma
  const double coherence_decay = 0.5 * (params.gamma + kappa);
  const cplx half = 0.5 * omega;
  const cplx half_c = std::conj(half);
  enum { GG = 0, GE = 1, EG = 2, EE = 3 };
  Mat4 m{};
  auto at = [&m](int row, int col) -> cplx& { return m[4 * row + col]; };
  at(GG, GE) = kI * half;
  at(GG, EG) = -kI * half_c;
  at(GG, EE) = params.gamma;
  at(GE, GG) = kI * half_c;
  at(GE, GE) = -coherence_decay;
  at(GE, EE) = -kI * half_c;
  at(EG, GG) = -kI * half;
  at(EG, EG) = -coherence_decay;
  at(EG, EE) = kI * half;
  at(EE, GE) = -kI * half;
  at(EE, EG) = kI * half_c;
  at(EE, EE) = -params.gamma;
  return m;
}

Vec4 apply(const Mat4& m, const Vec4& v) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) {
    r[i] = m[4 * i] * v[0] + m[4 * i + 1] * v[1] + m[4 * i + 2] * v[2] +
           m[4 * i + 3] * v[3];
  }
  return r;
}

DensityMatrix master_rhs(const DensityMatrix& rho, double t,
                         const SystemParams& params, const PulseSpec& spec) {
  return DensityMatrix::from_vec(
      pulsetls::apply(liouvillian(params, drive_amplitude(spec, t)), rho.vec()));
}

Mat4 rk4_map(const SystemParams& params, const PulseSpec& spec, double t,
             double h) {
  const Mat4 a = liouvillian(params, drive_amplitude(spec, t));
  const Mat4 b = liouvillian(params, drive_amplitude(spec, t + 0.5 * h));
  const Mat4 c = liouvillian(params, drive_amplitude(spec, t + h));
  const Mat4 k1 = a;
  const Mat4 k2 = multiply(b, shifted(k1, 0.5 * h));
  const Mat4 k3 = multiply(b, shifted(k2, 0.5 * h));
  const Mat4 k4 = multiply(c, shifted(k3, h));
  Mat4 m = identity4();
  for (int i = 0; i < 16; ++i) {
    m[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return m;
}

Propagator::Propagator(const SystemParams& params, const PulseSpec& spec,
                       const TimeGrid& grid) {
  PulseSpec off = spec;
  off.area = 0.0;
  free_ = rk4_map(params, off, 0.0, grid.dt);
  if (spec.area == 0.0) return;
  const Interval support = drive_support(spec);
  first_driven_ = floor_index((support.begin - grid.t_start) / grid.dt);
  first_free_ = std::max(first_driven_,
                         ceil_index((support.end - grid.t_start) / grid.dt));
  maps_.reserve(first_free_ - first_driven_);
  for (std::size_t k = first_driven_; k < first_free_; ++k) {
    maps_.push_back(rk4_map(params, spec, grid.time(k), grid.dt));
  }
}

PhotonNumberDistribution photon_number_distribution(const SystemParams& params,
                                                    const PulseSpec& spec,
                                                    const TimeGrid& grid,
                                                    int n_max) {
  params.validate();
  spec.validate();
  grid.validate();
  check_step_size(params, spec, grid);
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");

  // Block n obeys d rho_n/dt = L0 rho_n + J rho_{n-1}, where L0 lacks the
  // radiative refilling term and J rho = gamma rho_ee |g><g|.
  const std::size_t blocks = static_cast<std::size_t>(n_max) + 1;
  auto no_jump = [&](double t) {
    Mat4 m = liouvillian(params, drive_amplitude(spec, t));
    m[3] = 0.0;  // (GG, EE)
    return m;
  };
  std::vector<Vec4> y(blocks, Vec4{});
  y[0][0] = 1.0;
  auto rhs = [&](const Mat4& l0, const std::vector<Vec4>& v,
                 std::vector<Vec4>& out) {
    for (std::size_t n = 0; n < blocks; ++n) {
      out[n] = pulsetls::apply(l0, v[n]);
      if (n > 0) out[n][0] += params.gamma * v[n - 1][3];
    }
  };
  std::vector<Vec4> k1(blocks), k2(blocks), k3(blocks), k4(blocks),
      tmp(blocks);
  auto combine = [&](const std::vector<Vec4>& k, double f) {
    for (std::size_t n = 0; n < blocks; ++n) {
      for (int i = 0; i < 4; ++i) tmp[n][i] = y[n][i] + f * k[n][i];
    }
  };
  const double h = grid.dt;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double t = grid.time(k);
    const Mat4 a = no_jump(t);
    const Mat4 b = no_jump(t + 0.5 * h);
    const Mat4 c = no_jump(t + h);
    rhs(a, y, k1);
    combine(k1, 0.5 * h);
    rhs(b, tmp, k2);
    combine(k2, 0.5 * h);
    rhs(b, tmp, k3);
    combine(k3, h);
    rhs(c, tmp, k4);
    for (std::size_t n = 0; n < blocks; ++n) {
      for (int i = 0; i < 4; ++i) {
        y[n][i] += h / 6.0 *
                   (k1[n][i] + 2.0 * k2[n][i] + 2.0 * k3[n][i] + k4[n][i]);
      }
    }
  }

  PhotonNumberDistribution out;
  out.p_n.resize(blocks);
  double total = 0.0;
  for (std::size_t n = 0; n < blocks; ++n) {
    double p = y[n][0].real();
    if (n > 0) p += y[n - 1][3].real();
    out.p_n[n] = p;
    total += p;
  }
  out.overflow = 1.0 - total;
  return out;
}

double trapezoid(std::span<const double> values, double dt) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) sum += values[k];
  return sum * dt;
}

PropagationResult propagate(const DensityMatrix& rho0,
                            const SystemParams& params, const PulseSpec& spec,
                            const TimeGrid& grid,
                            const PropagateOptions& options) {
  params.validate();
  spec.validate();
  grid.validate();
  check_step_size(params, spec, grid);

  PropagationResult result;
  result.grid = grid;
  auto& diag = result.diagnostics;
  const double tp = spec.tau_p();
  if (grid.t_start > spec.center_time - 4.0 * tp ||
      grid.time(grid.n_steps()) < spec.center_time + 4.0 * tp) {
    diag.warnings.push_back(
        "time grid does not cover t_c +/- 4 tau_p; pulse is truncated");
  }

  const Propagator propagator(params, spec, grid);
  const std::size_t n = grid.size();
  result.pe_of_t.resize(n);
  if (options.store_states) result.rho_of_t.emplace().reserve(n);

  const Interval support = drive_support(spec);
  result.post_pulse_pe = std::numeric_limits<double>::quiet_NaN();
  bool post_pulse_found = false;

  diag.min_eigenvalue = std::numeric_limits<double>::infinity();
  Vec4 v = rho0.vec();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) v = propagator.step(k - 1, v);
    const DensityMatrix rho = DensityMatrix::from_vec(v);
    result.pe_of_t[k] = rho.excited_population();
    diag.max_trace_error =
        std::max(diag.max_trace_error, std::abs(rho.trace() - 1.0));
    diag.max_hermiticity_error =
        std::max(diag.max_hermiticity_error, rho.hermiticity_error());
    diag.min_eigenvalue = std::min(diag.min_eigenvalue, rho.min_eigenvalue());
    if (!post_pulse_found && grid.time(k) >= support.end) {
      post_pulse_found = true;
      result.post_pulse_pe =
          result.pe_of_t[k] *
          std::exp(params.gamma * (grid.time(k) - spec.center_time));
    }
    if (options.store_states) result.rho_of_t->push_back(rho);
  }
  if (spec.area == 0.0 && !post_pulse_found) {
    result.post_pulse_pe = result.pe_of_t.back();
  }
  result.expected_n = params.gamma * trapezoid(result.pe_of_t, grid.dt);
  return result;
}

std::vector<RabiPoint> rabi_scan(const SystemParams& params,
                                 const PulseSpec& base_spec,
                                 std::span<const double> areas,
                                 const std::optional<TimeGrid>& grid,
                                 int threads) {
  if (areas.empty()) throw InvalidArgument("area list is empty");
  for (double a : areas) {
    if (!(a >= 0.0)) throw InvalidArgument("areas must be non-negative");
  }
  std::vector<RabiPoint> points(areas.size());
  parallel_for(areas.size(), threads, [&](std::size_t i) {
    PulseSpec spec = base_spec;
    spec.area = areas[i];
    const TimeGrid g = grid ? *grid : default_grid(params, spec);
    const PropagationResult r =
        propagate(DensityMatrix::ground(), params, spec, g);
    const double s = std::sin(0.5 * spec.area);
    points[i] = {spec.area, s * s, r.post_pulse_pe, r.expected_n};
  });
  return points;
}

}  // namespace pulsetls
