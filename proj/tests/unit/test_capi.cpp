// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pulsetls/pulsetls.h"

extern "C" double ptls_c_check_pi_pulse(void);

namespace {

constexpr double kPi = std::numbers::pi;
const ptls_system kIdeal{1.0, 0.0, 0.0};

ptls_pulse pulse(double area, double tau = 0.1) {
  return ptls_pulse{area, tau, 0.0, 0.0, 0.0};
}

}  // namespace

TEST_CASE("header compiles as C and links") {
  CHECK(ptls_c_check_pi_pulse() == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("version and status names") {
  CHECK(std::string(ptls_version()) == "1.0.0");
  CHECK(std::string(ptls_status_name(PTLS_OK)) == "ok");
  CHECK(std::string(ptls_status_name(PTLS_ERR_REGIME_VIOLATION)) ==
        "regime violation");
  CHECK(std::string(ptls_status_name(static_cast<ptls_status>(99))) ==
        "unknown");
}

TEST_CASE("invalid arguments report a status and a message") {
  ptls_propagation* p = nullptr;
  CHECK(ptls_propagate(nullptr, nullptr, nullptr, &p) ==
        PTLS_ERR_INVALID_ARGUMENT);
  CHECK(p == nullptr);
  const ptls_pulse bad = pulse(kPi, -1.0);
  CHECK(ptls_propagate(&kIdeal, &bad, nullptr, &p) ==
        PTLS_ERR_INVALID_ARGUMENT);
  CHECK(p == nullptr);
  CHECK(std::string(ptls_last_error()).find("tau_fwhm") != std::string::npos);
  const ptls_pulse ok = pulse(kPi);
  CHECK(ptls_propagate(&kIdeal, &ok, nullptr, nullptr) ==
        PTLS_ERR_INVALID_ARGUMENT);
  // A step wider than the guard allows.
  const ptls_grid coarse{-1.0, 5.0, 0.05};
  CHECK(ptls_propagate(&kIdeal, &ok, &coarse, &p) == PTLS_ERR_NUMERICAL_GUARD);
  CHECK(p == nullptr);
  // Free functions accept NULL.
  ptls_propagation_free(nullptr);
  ptls_trajectory_free(nullptr);
  ptls_photocounts_free(nullptr);
  ptls_correlations_free(nullptr);
  ptls_spectrum_free(nullptr);
}

TEST_CASE("pulse helpers") {
  const ptls_pulse s = pulse(kPi);
  double re = 0.0, im = 0.0;
  REQUIRE(ptls_drive_amplitude(&s, 0.0, &re, &im) == PTLS_OK);
  const double tau_p = 0.1 / std::sqrt(2.0 * std::log(2.0));
  CHECK(re == doctest::Approx(std::sqrt(kPi) / tau_p));
  CHECK(im == doctest::Approx(0.0));
  double area = 0.0;
  REQUIRE(ptls_accumulated_area(&s, 1.0, &area) == PTLS_OK);
  CHECK(area == doctest::Approx(kPi).epsilon(1e-10));
  double alpha = 0.0;
  REQUIRE(ptls_chirp_parameter(0.0, 1.0, &alpha) == PTLS_OK);
  CHECK(alpha == 0.0);
  ptls_grid g{};
  REQUIRE(ptls_default_grid(&kIdeal, &s, &g) == PTLS_OK);
  CHECK(g.t_start == doctest::Approx(-5.0 * tau_p));
  CHECK(g.t_end == doctest::Approx(10.0));
}

TEST_CASE("propagation handle") {
  const ptls_pulse s = pulse(2 * kPi);
  ptls_propagation* p = nullptr;
  REQUIRE(ptls_propagate(&kIdeal, &s, nullptr, &p) == PTLS_OK);
  const std::size_t n = ptls_propagation_size(p);
  REQUIRE(n > 1000);
  CHECK(ptls_propagation_pe(p)[0] == 0.0);
  // The last step may overshoot t_end by less than dt.
  ptls_grid g{};
  REQUIRE(ptls_default_grid(&kIdeal, &s, &g) == PTLS_OK);
  CHECK(ptls_propagation_times(p)[n - 1] >= g.t_end - 1e-12);
  CHECK(ptls_propagation_times(p)[n - 1] < g.t_end + g.dt);
  CHECK(ptls_propagation_expected_n(p) ==
        doctest::Approx(0.1448099472).epsilon(1e-6));
  double trace = 1.0, herm = 1.0, eig = -1.0;
  ptls_propagation_diagnostics(p, &trace, &herm, &eig);
  CHECK(trace < 1e-10);
  CHECK(herm < 1e-10);
  CHECK(eig > -1e-10);
  ptls_propagation_free(p);
}

TEST_CASE("rabi scan and photon number distribution") {
  const double areas[] = {0.0, kPi, 2 * kPi};
  ptls_rabi_point out[3];
  const ptls_pulse base = pulse(0.0, 0.001);
  REQUIRE(ptls_rabi_scan(&kIdeal, &base, areas, 3, nullptr, 1, out) ==
          PTLS_OK);
  CHECK(out[1].pe_ideal == doctest::Approx(1.0));
  CHECK(out[1].post_pulse_pe == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(out[2].post_pulse_pe < 1e-3);
  double p[4];
  double overflow = -1.0;
  const ptls_pulse s = pulse(2 * kPi);
  REQUIRE(ptls_photon_number_distribution(&kIdeal, &s, nullptr, 3, p,
                                          &overflow) == PTLS_OK);
  CHECK(p[0] + p[1] + p[2] + p[3] + overflow == doctest::Approx(1.0));
  CHECK(ptls_photon_number_distribution(&kIdeal, &s, nullptr, 0, p,
                                        nullptr) == PTLS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("trajectory and photocounts") {
  const ptls_pulse s = pulse(kPi);
  ptls_trajectory* t = nullptr;
  REQUIRE(ptls_trajectory_sample(&kIdeal, &s, nullptr, 7, 3, &t) == PTLS_OK);
  const std::size_t jumps = ptls_trajectory_jump_count(t);
  int radiative = 0;
  for (std::size_t i = 0; i < jumps; ++i) {
    radiative += ptls_trajectory_jump_channels(t)[i] == PTLS_CHANNEL_RADIATIVE;
  }
  CHECK(ptls_trajectory_photon_count(t) == radiative);
  CHECK(ptls_trajectory_size(t) > 0);
  ptls_trajectory_free(t);

  ptls_photocounts* a = nullptr;
  ptls_photocounts* b = nullptr;
  REQUIRE(ptls_photocounts_run(&kIdeal, &s, nullptr, 5000, 11, 1, &a) ==
          PTLS_OK);
  REQUIRE(ptls_photocounts_run(&kIdeal, &s, nullptr, 5000, 11, 3, &b) ==
          PTLS_OK);
  CHECK(ptls_photocounts_trajectories(a) == 5000);
  int64_t total = 0;
  for (int n = 0; n <= ptls_photocounts_max_n(a); ++n) {
    CHECK(ptls_photocounts_count(a, n) == ptls_photocounts_count(b, n));
    total += ptls_photocounts_count(a, n);
  }
  CHECK(total == 5000);
  CHECK(ptls_photocounts_expected_n(a) == doctest::Approx(1.02).epsilon(0.03));
  CHECK(ptls_photocounts_count(a, 99) == 0);
  ptls_photocounts_free(a);
  ptls_photocounts_free(b);
  CHECK(ptls_photocounts_run(&kIdeal, &s, nullptr, 0, 1, 1, &a) ==
        PTLS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("correlations: regime violation still returns the handle") {
  const ptls_pulse s = pulse(2 * kPi);
  ptls_correlation_options o;
  ptls_correlation_options_init(&o);
  CHECK(o.t1_stride == 1);
  CHECK(std::isnan(o.t1_output_end));
  o.t1_stride = 4;
  o.tau_stride = 8;
  ptls_correlations* c = nullptr;
  CHECK(ptls_correlations_run(&kIdeal, &s, nullptr, &o, &c) ==
        PTLS_ERR_REGIME_VIOLATION);
  REQUIRE(c != nullptr);
  ptls_correlation_summary sum{};
  ptls_correlations_summary(c, &sum);
  CHECK(sum.pair_probability == doctest::Approx(0.0625218424).epsilon(1e-6));
  CHECK(sum.g2_zero == doctest::Approx(5.9630022369).epsilon(1e-6));
  CHECK(sum.p1_min < -1e-6);
  CHECK(ptls_correlations_t1_size(c) * 4 >= ptls_correlations_t1_size(c));
  const std::size_t nt = ptls_correlations_tau_size(c);
  CHECK(ptls_correlations_p2_joint(c)[nt + 1] >= 0.0);
  CHECK(ptls_correlations_grid_size(c) > ptls_correlations_t1_size(c));
  ptls_correlations_free(c);

  ptls_g2_summary g{};
  REQUIRE(ptls_g2_zero(&kIdeal, &s, nullptr, 0.0, 1, &g) == PTLS_OK);
  CHECK(g.g2_zero == doctest::Approx(sum.g2_zero).epsilon(1e-12));
  const ptls_pulse dark = pulse(0.0);
  CHECK(ptls_g2_zero(&kIdeal, &dark, nullptr, 0.0, 1, &g) ==
        PTLS_ERR_DEGENERATE);
}

TEST_CASE("spectrum handle") {
  std::vector<double> w(401);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -10.0 + 0.05 * i;
  const ptls_pulse s = pulse(0.0);
  ptls_spectrum* sp = nullptr;
  REQUIRE(ptls_spectrum_run(&kIdeal, &s, nullptr, 0.0, w.data(), w.size(), 0.0,
                            1, 1, &sp) == PTLS_OK);
  REQUIRE(ptls_spectrum_size(sp) == w.size());
  CHECK(ptls_spectrum_omega(sp)[0] == -10.0);
  CHECK(ptls_spectrum_values(sp)[200] == doctest::Approx(2.0 / kPi).epsilon(0.01));
  CHECK(ptls_spectrum_interquartile_width(sp) ==
        doctest::Approx(1.0).epsilon(0.1));
  ptls_spectrum_free(sp);
  CHECK(ptls_spectrum_run(&kIdeal, &s, nullptr, 0.0, nullptr, 0, 0.0, 1, 1,
                          &sp) == PTLS_ERR_INVALID_ARGUMENT);
}
