/* Copyright 2026 The pulsetls Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the pulsed two-level emitter simulator.
 *
 * All functions return a ptls_status. On failure the message is available
 * from ptls_last_error() on the same thread until the next call. Result
 * objects are opaque handles owned by the caller and released with the
 * matching *_free function; array accessors return pointers that stay valid
 * for the lifetime of the handle.
 *
 * The library works in whatever time unit the caller uses consistently for
 * gamma, gamma_d, phonon_b, the pulse and the grid.
 */
#ifndef PULSETLS_PULSETLS_H_
#define PULSETLS_PULSETLS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PULSETLS_BUILDING)
#    define PTLS_API __declspec(dllexport)
#  else
#    define PTLS_API __declspec(dllimport)
#  endif
#else
#  define PTLS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptls_status {
  PTLS_OK = 0,
  PTLS_ERR_INTERNAL = 1,
  PTLS_ERR_INVALID_ARGUMENT = 2,
  PTLS_ERR_NUMERICAL_GUARD = 3,
  PTLS_ERR_REGIME_VIOLATION = 4,
  PTLS_ERR_DEGENERATE = 5
} ptls_status;

typedef struct ptls_system {
  double gamma;    /* radiative decay rate */
  double gamma_d;  /* noise dephasing rate */
  double phonon_b; /* phonon dephasing coefficient (a time) */
} ptls_system;

typedef struct ptls_pulse {
  double area; /* radians */
  double tau_fwhm;
  double chirp_bw_fraction;
  double carrier_phase;
  double center_time;
} ptls_pulse;

typedef struct ptls_grid {
  double t_start;
  double t_end;
  double dt;
} ptls_grid;

typedef enum ptls_channel {
  PTLS_CHANNEL_RADIATIVE = 0,
  PTLS_CHANNEL_PHONON = 1,
  PTLS_CHANNEL_NOISE = 2
} ptls_channel;

PTLS_API const char* ptls_version(void);
PTLS_API const char* ptls_last_error(void);
PTLS_API const char* ptls_status_name(ptls_status status);

/* Pulse ------------------------------------------------------------------ */

PTLS_API ptls_status ptls_drive_amplitude(const ptls_pulse* pulse, double t,
                                          double* re, double* im);
PTLS_API ptls_status ptls_chirp_parameter(double delta_bw, double tau_p,
                                          double* alpha);
PTLS_API ptls_status ptls_accumulated_area(const ptls_pulse* pulse, double t,
                                           double* area);
PTLS_API ptls_status ptls_default_grid(const ptls_system* system,
                                       const ptls_pulse* pulse,
                                       ptls_grid* grid);

/* Master equation -------------------------------------------------------- */

typedef struct ptls_propagation ptls_propagation;

/* Starts from |g><g| at grid->t_start. grid may be NULL for the default. */
PTLS_API ptls_status ptls_propagate(const ptls_system* system,
                                    const ptls_pulse* pulse,
                                    const ptls_grid* grid,
                                    ptls_propagation** out);
PTLS_API void ptls_propagation_free(ptls_propagation* p);
PTLS_API size_t ptls_propagation_size(const ptls_propagation* p);
PTLS_API const double* ptls_propagation_times(const ptls_propagation* p);
PTLS_API const double* ptls_propagation_pe(const ptls_propagation* p);
PTLS_API double ptls_propagation_expected_n(const ptls_propagation* p);
PTLS_API double ptls_propagation_post_pulse_pe(const ptls_propagation* p);
/* Worst trace error, Hermiticity error and smallest eigenvalue seen. */
PTLS_API size_t ptls_propagation_warning_count(const ptls_propagation* p);
PTLS_API const char* ptls_propagation_warning(const ptls_propagation* p,
                                              size_t i);
PTLS_API void ptls_propagation_diagnostics(const ptls_propagation* p,
                                           double* max_trace_error,
                                           double* max_hermiticity_error,
                                           double* min_eigenvalue);

typedef struct ptls_rabi_point {
  double area;
  double pe_ideal;
  double post_pulse_pe;
  double expected_n;
} ptls_rabi_point;

/* out must hold n_areas points. grid may be NULL. */
PTLS_API ptls_status ptls_rabi_scan(const ptls_system* system,
                                    const ptls_pulse* base_pulse,
                                    const double* areas, size_t n_areas,
                                    const ptls_grid* grid, int threads,
                                    ptls_rabi_point* out);

/* Exclusive P_0 .. P_n_max from the jump-count resolved master equation.
 * p_out must hold n_max + 1 values. overflow may be NULL. */
PTLS_API ptls_status ptls_photon_number_distribution(const ptls_system* system,
                                                     const ptls_pulse* pulse,
                                                     const ptls_grid* grid,
                                                     int n_max, double* p_out,
                                                     double* overflow);

/* Trajectories ------------------------------------------------------------ */

typedef struct ptls_trajectory ptls_trajectory;

PTLS_API ptls_status ptls_trajectory_sample(const ptls_system* system,
                                            const ptls_pulse* pulse,
                                            const ptls_grid* grid,
                                            uint64_t master_seed,
                                            uint64_t stream,
                                            ptls_trajectory** out);
PTLS_API void ptls_trajectory_free(ptls_trajectory* t);
PTLS_API size_t ptls_trajectory_size(const ptls_trajectory* t);
PTLS_API const double* ptls_trajectory_times(const ptls_trajectory* t);
PTLS_API const double* ptls_trajectory_conditional_pe(const ptls_trajectory* t);
PTLS_API size_t ptls_trajectory_jump_count(const ptls_trajectory* t);
PTLS_API const double* ptls_trajectory_jump_times(const ptls_trajectory* t);
PTLS_API const int* ptls_trajectory_jump_channels(const ptls_trajectory* t);
PTLS_API int ptls_trajectory_photon_count(const ptls_trajectory* t);

typedef struct ptls_photocounts ptls_photocounts;

PTLS_API ptls_status ptls_photocounts_run(const ptls_system* system,
                                          const ptls_pulse* pulse,
                                          const ptls_grid* grid,
                                          int64_t n_trajectories,
                                          uint64_t master_seed, int threads,
                                          ptls_photocounts** out);
PTLS_API void ptls_photocounts_free(ptls_photocounts* p);
/* Largest photon number observed. */
PTLS_API int ptls_photocounts_max_n(const ptls_photocounts* p);
PTLS_API int64_t ptls_photocounts_trajectories(const ptls_photocounts* p);
PTLS_API int64_t ptls_photocounts_count(const ptls_photocounts* p, int n);
PTLS_API double ptls_photocounts_probability(const ptls_photocounts* p, int n);
PTLS_API double ptls_photocounts_std_err(const ptls_photocounts* p, int n);
/* 0 for n < 1 or when no photon was observed. */
PTLS_API double ptls_photocounts_purity(const ptls_photocounts* p, int n);
PTLS_API double ptls_photocounts_expected_n(const ptls_photocounts* p);
PTLS_API double ptls_photocounts_expected_n_std_err(const ptls_photocounts* p);
PTLS_API double ptls_photocounts_g2_zero(const ptls_photocounts* p);
PTLS_API double ptls_photocounts_g2_zero_std_err(const ptls_photocounts* p);

/* Correlations ------------------------------------------------------------ */

typedef struct ptls_correlation_options {
  double tau_max;       /* 0 selects 10 / gamma */
  size_t t1_stride;     /* 0 is treated as 1 */
  size_t tau_stride;    /* 0 is treated as 1 */
  double t1_output_end; /* NaN selects the end of the drive support */
  int threads;
} ptls_correlation_options;

PTLS_API void ptls_correlation_options_init(ptls_correlation_options* o);

typedef struct ptls_correlations ptls_correlations;

/* Computes G2, p2 and p1. On PTLS_ERR_REGIME_VIOLATION *out is still set
 * and holds the flagged densities. */
PTLS_API ptls_status ptls_correlations_run(const ptls_system* system,
                                           const ptls_pulse* pulse,
                                           const ptls_grid* grid,
                                           const ptls_correlation_options* o,
                                           ptls_correlations** out);
PTLS_API void ptls_correlations_free(ptls_correlations* c);
PTLS_API size_t ptls_correlations_t1_size(const ptls_correlations* c);
PTLS_API size_t ptls_correlations_tau_size(const ptls_correlations* c);
PTLS_API const double* ptls_correlations_t1_axis(const ptls_correlations* c);
PTLS_API const double* ptls_correlations_tau_axis(const ptls_correlations* c);
/* Row-major [t1][tau] ordered pair density p2(t1, tau) = G2(t1, tau). */
PTLS_API const double* ptls_correlations_p2_joint(const ptls_correlations* c);
/* Full-resolution marginals: grid axis for p1/p2(t1), delay axis for
 * p2(tau). */
PTLS_API size_t ptls_correlations_grid_size(const ptls_correlations* c);
PTLS_API size_t ptls_correlations_delay_size(const ptls_correlations* c);
PTLS_API double ptls_correlations_dt(const ptls_correlations* c);
PTLS_API double ptls_correlations_t_start(const ptls_correlations* c);
PTLS_API const double* ptls_correlations_pe(const ptls_correlations* c);
PTLS_API const double* ptls_correlations_p1_of_t1(const ptls_correlations* c);
PTLS_API const double* ptls_correlations_p2_of_t1(const ptls_correlations* c);
PTLS_API const double* ptls_correlations_p2_of_tau(const ptls_correlations* c);

typedef struct ptls_correlation_summary {
  double single_probability; /* P_1 */
  double pair_probability;   /* P_2 */
  double expected_n;
  double e_n_n_minus_1;
  double g2_zero;
  double p1_min;
  double tail_mass_fraction;
} ptls_correlation_summary;

/* Non-fatal notes, for example about truncated delay tails. */
PTLS_API size_t ptls_correlations_warning_count(const ptls_correlations* c);
PTLS_API const char* ptls_correlations_warning(const ptls_correlations* c,
                                               size_t i);

PTLS_API void ptls_correlations_summary(const ptls_correlations* c,
                                        ptls_correlation_summary* s);

typedef struct ptls_g2_summary {
  double g2_zero;
  double e_n;
  double e_n_n_minus_1;
} ptls_g2_summary;

PTLS_API ptls_status ptls_g2_zero(const ptls_system* system,
                                  const ptls_pulse* pulse,
                                  const ptls_grid* grid, double tau_max,
                                  int threads, ptls_g2_summary* out);

/* Spectrum ---------------------------------------------------------------- */

typedef struct ptls_spectrum ptls_spectrum;

/* rho0_excited != 0 starts from |e><e| instead of |g><g|. */
PTLS_API ptls_status ptls_spectrum_run(const ptls_system* system,
                                       const ptls_pulse* pulse,
                                       const ptls_grid* grid, double tau_max,
                                       const double* omega_axis,
                                       size_t n_omega,
                                       double detector_linewidth,
                                       int rho0_excited, int threads,
                                       ptls_spectrum** out);
PTLS_API void ptls_spectrum_free(ptls_spectrum* s);
PTLS_API size_t ptls_spectrum_size(const ptls_spectrum* s);
PTLS_API const double* ptls_spectrum_omega(const ptls_spectrum* s);
PTLS_API const double* ptls_spectrum_values(const ptls_spectrum* s);
PTLS_API double ptls_spectrum_expected_n(const ptls_spectrum* s);
PTLS_API double ptls_spectrum_interquartile_width(const ptls_spectrum* s);

#ifdef __cplusplus
}
#endif

#endif /* PULSETLS_PULSETLS_H_ */
