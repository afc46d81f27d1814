// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include "pulsetls/pulsetls.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pulsetls/correlations.hpp"
#include "pulsetls/error.hpp"
#include "pulsetls/lindblad.hpp"
#include "pulsetls/pulse.hpp"
#include "pulsetls/spectrum.hpp"
#include "pulsetls/state.hpp"
#include "pulsetls/trajectories.hpp"

namespace pt = pulsetls;

struct ptls_propagation {
  pt::PropagationResult result;
  std::vector<double> times;
};

struct ptls_trajectory {
  pt::Trajectory trajectory;
  std::vector<double> times;
  std::vector<int> channels;
};

struct ptls_photocounts {
  pt::PhotocountResult result;
};

struct ptls_correlations {
  pt::CorrelationGrid grid;
};

struct ptls_spectrum {
  pt::SpectrumResult result;
  double iqr = 0.0;
};

namespace {

thread_local std::string g_last_error;

ptls_status to_status(pt::ErrorCode code) {
  return static_cast<ptls_status>(static_cast<int>(code));
}

// Runs body and maps any exception to a status with a stored message.
template <typename F>
ptls_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return PTLS_OK;
  } catch (const pt::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PTLS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PTLS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) {
    throw pt::InvalidArgument(std::string(name) + " must not be null");
  }
}

pt::SystemParams to_params(const ptls_system* s) {
  require(s, "system");
  pt::SystemParams p{s->gamma, s->gamma_d, s->phonon_b};
  p.validate();
  return p;
}

pt::PulseSpec to_spec(const ptls_pulse* p) {
  require(p, "pulse");
  pt::PulseSpec s{p->area, p->tau_fwhm, p->chirp_bw_fraction,
                  p->carrier_phase, p->center_time};
  s.validate();
  return s;
}

pt::TimeGrid to_grid(const ptls_grid* g, const pt::SystemParams& params,
                     const pt::PulseSpec& spec) {
  if (g == nullptr) return pt::default_grid(params, spec);
  pt::TimeGrid grid{g->t_start, g->t_end, g->dt};
  grid.validate();
  return grid;
}

std::vector<double> grid_times(const pt::TimeGrid& grid) {
  std::vector<double> t(grid.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = grid.time(k);
  return t;
}

}  // namespace

extern "C" {

const char* ptls_version(void) { return "1.0.0"; }

const char* ptls_last_error(void) { return g_last_error.c_str(); }

const char* ptls_status_name(ptls_status status) {
  switch (status) {
    case PTLS_OK: return "ok";
    case PTLS_ERR_INTERNAL: return "internal error";
    case PTLS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PTLS_ERR_NUMERICAL_GUARD: return "numerical guard";
    case PTLS_ERR_REGIME_VIOLATION: return "regime violation";
    case PTLS_ERR_DEGENERATE: return "degenerate";
  }
  return "unknown";
}

ptls_status ptls_drive_amplitude(const ptls_pulse* pulse, double t, double* re,
                                 double* im) {
  return guarded([&] {
    require(re, "re");
    require(im, "im");
    const pt::cplx w = pt::drive_amplitude(to_spec(pulse), t);
    *re = w.real();
    *im = w.imag();
  });
}

ptls_status ptls_chirp_parameter(double delta_bw, double tau_p, double* alpha) {
  return guarded([&] {
    require(alpha, "alpha");
    *alpha = pt::chirp_parameter(delta_bw, tau_p);
  });
}

ptls_status ptls_accumulated_area(const ptls_pulse* pulse, double t,
                                  double* area) {
  return guarded([&] {
    require(area, "area");
    *area = pt::accumulated_area(to_spec(pulse), t);
  });
}

ptls_status ptls_default_grid(const ptls_system* system,
                              const ptls_pulse* pulse, ptls_grid* grid) {
  return guarded([&] {
    require(grid, "grid");
    const pt::TimeGrid g = pt::default_grid(to_params(system), to_spec(pulse));
    *grid = {g.t_start, g.t_end, g.dt};
  });
}

// Master equation ------------------------------------------------------------

ptls_status ptls_propagate(const ptls_system* system, const ptls_pulse* pulse,
                           const ptls_grid* grid, ptls_propagation** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto params = to_params(system);
    const auto spec = to_spec(pulse);
    const auto g = to_grid(grid, params, spec);
    auto h = std::make_unique<ptls_propagation>();
    h->result = pt::propagate(pt::DensityMatrix::ground(), params, spec, g);
    h->times = grid_times(h->result.grid);
    *out = h.release();
  });
}

void ptls_propagation_free(ptls_propagation* p) { delete p; }

size_t ptls_propagation_size(const ptls_propagation* p) {
  return p ? p->times.size() : 0;
}
const double* ptls_propagation_times(const ptls_propagation* p) {
  return p ? p->times.data() : nullptr;
}
const double* ptls_propagation_pe(const ptls_propagation* p) {
  return p ? p->result.pe_of_t.data() : nullptr;
}
double ptls_propagation_expected_n(const ptls_propagation* p) {
  return p ? p->result.expected_n : 0.0;
}
double ptls_propagation_post_pulse_pe(const ptls_propagation* p) {
  return p ? p->result.post_pulse_pe : 0.0;
}
size_t ptls_propagation_warning_count(const ptls_propagation* p) {
  return p ? p->result.diagnostics.warnings.size() : 0;
}
const char* ptls_propagation_warning(const ptls_propagation* p, size_t i) {
  if (p == nullptr || i >= p->result.diagnostics.warnings.size()) return "";
  return p->result.diagnostics.warnings[i].c_str();
}
void ptls_propagation_diagnostics(const ptls_propagation* p,
                                  double* max_trace_error,
                                  double* max_hermiticity_error,
                                  double* min_eigenvalue) {
  if (p == nullptr) return;
  const auto& d = p->result.diagnostics;
  if (max_trace_error) *max_trace_error = d.max_trace_error;
  if (max_hermiticity_error) *max_hermiticity_error = d.max_hermiticity_error;
  if (min_eigenvalue) *min_eigenvalue = d.min_eigenvalue;
}

ptls_status ptls_rabi_scan(const ptls_system* system,
                           const ptls_pulse* base_pulse, const double* areas,
                           size_t n_areas, const ptls_grid* grid, int threads,
                           ptls_rabi_point* out) {
  return guarded([&] {
    if (n_areas > 0) {
      require(areas, "areas");
      require(out, "out");
    }
    const auto params = to_params(system);
    const auto spec = to_spec(base_pulse);
    std::optional<pt::TimeGrid> g;
    if (grid != nullptr) g = to_grid(grid, params, spec);
    const auto points = pt::rabi_scan(
        params, spec, std::span<const double>(areas, n_areas), g, threads);
    for (std::size_t i = 0; i < points.size(); ++i) {
      out[i] = {points[i].area, points[i].pe_ideal, points[i].post_pulse_pe,
                points[i].expected_n};
    }
  });
}

ptls_status ptls_photon_number_distribution(const ptls_system* system,
                                            const ptls_pulse* pulse,
                                            const ptls_grid* grid, int n_max,
                                            double* p_out, double* overflow) {
  return guarded([&] {
    require(p_out, "p_out");
    const auto params = to_params(system);
    const auto spec = to_spec(pulse);
    const auto g = to_grid(grid, params, spec);
    const auto d = pt::photon_number_distribution(params, spec, g, n_max);
    std::copy(d.p_n.begin(), d.p_n.end(), p_out);
    if (overflow) *overflow = d.overflow;
  });
}

// Trajectories ----------------------------------------------------------------

ptls_status ptls_trajectory_sample(const ptls_system* system,
                                   const ptls_pulse* pulse,
                                   const ptls_grid* grid, uint64_t master_seed,
                                   uint64_t stream, ptls_trajectory** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto params = to_params(system);
    const auto spec = to_spec(pulse);
    const auto g = to_grid(grid, params, spec);
    auto h = std::make_unique<ptls_trajectory>();
    h->trajectory = pt::sample_trajectory(params, spec, g, master_seed, stream,
                                          {.record_path = true});
    h->times = grid_times(g);
    for (auto c : h->trajectory.record.jump_channels) {
      h->channels.push_back(static_cast<int>(c));
    }
    *out = h.release();
  });
}

void ptls_trajectory_free(ptls_trajectory* t) { delete t; }

size_t ptls_trajectory_size(const ptls_trajectory* t) {
  return t ? t->times.size() : 0;
}
const double* ptls_trajectory_times(const ptls_trajectory* t) {
  return t ? t->times.data() : nullptr;
}
const double* ptls_trajectory_conditional_pe(const ptls_trajectory* t) {
  return t ? t->trajectory.conditional_pe.data() : nullptr;
}
size_t ptls_trajectory_jump_count(const ptls_trajectory* t) {
  return t ? t->trajectory.record.jump_times.size() : 0;
}
const double* ptls_trajectory_jump_times(const ptls_trajectory* t) {
  return t ? t->trajectory.record.jump_times.data() : nullptr;
}
const int* ptls_trajectory_jump_channels(const ptls_trajectory* t) {
  return t ? t->channels.data() : nullptr;
}
int ptls_trajectory_photon_count(const ptls_trajectory* t) {
  return t ? t->trajectory.record.photon_count : 0;
}

ptls_status ptls_photocounts_run(const ptls_system* system,
                                 const ptls_pulse* pulse, const ptls_grid* grid,
                                 int64_t n_trajectories, uint64_t master_seed,
                                 int threads, ptls_photocounts** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto params = to_params(system);
    const auto spec = to_spec(pulse);
    const auto g = to_grid(grid, params, spec);
    auto h = std::make_unique<ptls_photocounts>();
    h->result = pt::photocount_distribution(params, spec, g, n_trajectories,
                                            master_seed, threads);
    *out = h.release();
  });
}

void ptls_photocounts_free(ptls_photocounts* p) { delete p; }

int ptls_photocounts_max_n(const ptls_photocounts* p) {
  if (p == nullptr || p->result.counts_histogram.empty()) return 0;
  return p->result.counts_histogram.rbegin()->first;
}
int64_t ptls_photocounts_trajectories(const ptls_photocounts* p) {
  return p ? p->result.n_trajectories : 0;
}
int64_t ptls_photocounts_count(const ptls_photocounts* p, int n) {
  if (p == nullptr) return 0;
  const auto it = p->result.counts_histogram.find(n);
  return it == p->result.counts_histogram.end() ? 0 : it->second;
}
double ptls_photocounts_probability(const ptls_photocounts* p, int n) {
  return p ? p->result.probability(n) : 0.0;
}
double ptls_photocounts_std_err(const ptls_photocounts* p, int n) {
  return p ? p->result.std_err(n) : 0.0;
}
double ptls_photocounts_purity(const ptls_photocounts* p, int n) {
  return p ? p->result.purity(n) : 0.0;
}
double ptls_photocounts_expected_n(const ptls_photocounts* p) {
  return p ? p->result.expected_n : 0.0;
}
double ptls_photocounts_expected_n_std_err(const ptls_photocounts* p) {
  return p ? p->result.expected_n_std_err : 0.0;
}
double ptls_photocounts_g2_zero(const ptls_photocounts* p) {
  return p ? p->result.g2_zero : std::numeric_limits<double>::quiet_NaN();
}
double ptls_photocounts_g2_zero_std_err(const ptls_photocounts* p) {
  return p ? p->result.g2_zero_std_err
           : std::numeric_limits<double>::quiet_NaN();
}

// Correlations ----------------------------------------------------------------

void ptls_correlation_options_init(ptls_correlation_options* o) {
  if (o == nullptr) return;
  o->tau_max = 0.0;
  o->t1_stride = 1;
  o->tau_stride = 1;
  o->t1_output_end = std::numeric_limits<double>::quiet_NaN();
  o->threads = 1;
}

ptls_status ptls_correlations_run(const ptls_system* system,
                                  const ptls_pulse* pulse,
                                  const ptls_grid* grid,
                                  const ptls_correlation_options* o,
                                  ptls_correlations** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto params = to_params(system);
    const auto spec = to_spec(pulse);
    const auto g = to_grid(grid, params, spec);
    pt::CorrelationOptions opts;
    if (o != nullptr) {
      opts.tau_max = o->tau_max;
      opts.t1_stride = o->t1_stride == 0 ? 1 : o->t1_stride;
      opts.tau_stride = o->tau_stride == 0 ? 1 : o->tau_stride;
      opts.t1_output_end = o->t1_output_end;
      opts.threads = o->threads;
    }
    auto h = std::make_unique<ptls_correlations>();
    h->grid = pt::g2_grid(params, spec, g, opts);
    pt::p2_from_g2(h->grid);
    // The handle is returned even on a regime violation so callers can
    // inspect the offending densities.
    try {
      pt::p1_density(params, spec, g, h->grid);
    } catch (const pt::RegimeViolation&) {
      *out = h.release();
      throw;
    }
    *out = h.release();
  });
}

void ptls_correlations_free(ptls_correlations* c) { delete c; }

size_t ptls_correlations_t1_size(const ptls_correlations* c) {
  return c ? c->grid.t1_axis.size() : 0;
}
size_t ptls_correlations_tau_size(const ptls_correlations* c) {
  return c ? c->grid.tau_axis.size() : 0;
}
const double* ptls_correlations_t1_axis(const ptls_correlations* c) {
  return c ? c->grid.t1_axis.data() : nullptr;
}
const double* ptls_correlations_tau_axis(const ptls_correlations* c) {
  return c ? c->grid.tau_axis.data() : nullptr;
}
const double* ptls_correlations_p2_joint(const ptls_correlations* c) {
  return c ? c->grid.p2_joint.data() : nullptr;
}
size_t ptls_correlations_grid_size(const ptls_correlations* c) {
  return c ? c->grid.pe_of_t.size() : 0;
}
size_t ptls_correlations_delay_size(const ptls_correlations* c) {
  return c ? c->grid.n_tau : 0;
}
double ptls_correlations_dt(const ptls_correlations* c) {
  return c ? c->grid.grid.dt : 0.0;
}
double ptls_correlations_t_start(const ptls_correlations* c) {
  return c ? c->grid.grid.t_start : 0.0;
}
const double* ptls_correlations_pe(const ptls_correlations* c) {
  return c ? c->grid.pe_of_t.data() : nullptr;
}
const double* ptls_correlations_p1_of_t1(const ptls_correlations* c) {
  return c ? c->grid.p1_of_t1.data() : nullptr;
}
const double* ptls_correlations_p2_of_t1(const ptls_correlations* c) {
  return c ? c->grid.p2_of_t1.data() : nullptr;
}
const double* ptls_correlations_p2_of_tau(const ptls_correlations* c) {
  return c ? c->grid.p2_of_tau.data() : nullptr;
}
size_t ptls_correlations_warning_count(const ptls_correlations* c) {
  return c ? c->grid.warnings.size() : 0;
}
const char* ptls_correlations_warning(const ptls_correlations* c, size_t i) {
  if (c == nullptr || i >= c->grid.warnings.size()) return "";
  return c->grid.warnings[i].c_str();
}

void ptls_correlations_summary(const ptls_correlations* c,
                               ptls_correlation_summary* s) {
  if (c == nullptr || s == nullptr) return;
  const auto& g = c->grid;
  s->single_probability = g.single_probability;
  s->pair_probability = g.pair_probability;
  s->expected_n = g.expected_n;
  s->e_n_n_minus_1 = 2.0 * g.g2_integral;
  s->g2_zero = g.expected_n > 0.0
                   ? s->e_n_n_minus_1 / (g.expected_n * g.expected_n)
                   : std::numeric_limits<double>::quiet_NaN();
  s->p1_min = g.p1_min;
  s->tail_mass_fraction = g.tail_mass_fraction;
}

ptls_status ptls_g2_zero(const ptls_system* system, const ptls_pulse* pulse,
                         const ptls_grid* grid, double tau_max, int threads,
                         ptls_g2_summary* out) {
  return guarded([&] {
    require(out, "out");
    const auto params = to_params(system);
    const auto spec = to_spec(pulse);
    const auto g = to_grid(grid, params, spec);
    pt::CorrelationOptions opts;
    opts.tau_max = tau_max;
    opts.threads = threads;
    const auto s = pt::g2_zero(params, spec, g, opts);
    *out = {s.g2_zero, s.e_n, s.e_n_n_minus_1};
  });
}

// Spectrum --------------------------------------------------------------------

ptls_status ptls_spectrum_run(const ptls_system* system,
                              const ptls_pulse* pulse, const ptls_grid* grid,
                              double tau_max, const double* omega_axis,
                              size_t n_omega, double detector_linewidth,
                              int rho0_excited, int threads,
                              ptls_spectrum** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (n_omega < 2) throw pt::InvalidArgument("need at least two frequencies");
    require(omega_axis, "omega_axis");
    const auto params = to_params(system);
    const auto spec = to_spec(pulse);
    const auto g = to_grid(grid, params, spec);
    pt::CorrelationOptions opts;
    opts.tau_max = tau_max;
    opts.threads = threads;
    opts.t1_output_end = -std::numeric_limits<double>::infinity();
    if (rho0_excited != 0) opts.rho0 = pt::DensityMatrix::excited();
    const auto g1 = pt::g1_grid(params, spec, g, opts);
    auto h = std::make_unique<ptls_spectrum>();
    h->result = pt::emission_spectrum(
        g1, std::span<const double>(omega_axis, n_omega), detector_linewidth);
    h->iqr = pt::interquartile_width(h->result);
    *out = h.release();
  });
}

void ptls_spectrum_free(ptls_spectrum* s) { delete s; }

size_t ptls_spectrum_size(const ptls_spectrum* s) {
  return s ? s->result.omega_axis.size() : 0;
}
const double* ptls_spectrum_omega(const ptls_spectrum* s) {
  return s ? s->result.omega_axis.data() : nullptr;
}
const double* ptls_spectrum_values(const ptls_spectrum* s) {
  return s ? s->result.s_of_omega.data() : nullptr;
}
double ptls_spectrum_expected_n(const ptls_spectrum* s) {
  return s ? s->result.expected_n : 0.0;
}
double ptls_spectrum_interquartile_width(const ptls_spectrum* s) {
  return s ? s->iqr : 0.0;
}

}  // extern "C"
