// Copyright 2026 The pulsetls Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pulsetls/error.hpp"
#include "pulsetls/pulse.hpp"

using namespace pulsetls;
constexpr double kPi = std::numbers::pi;

namespace {

// Composite Simpson rule over [a, b] with n (even) panels.
template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("tau_p and validation") {
  PulseSpec s{kPi, 1.0};
  CHECK(s.tau_p() == doctest::Approx(1.0 / std::sqrt(2.0 * std::log(2.0))));
  CHECK_NOTHROW(s.validate());
  CHECK_THROWS_AS((PulseSpec{kPi, 0.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((PulseSpec{-1.0, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((PulseSpec{kPi, 1.0, -0.1}.validate()), InvalidArgument);
}

TEST_CASE("zero area gives zero drive") {
  const PulseSpec s{0.0, 1.0};
  for (double t : {-3.0, 0.0, 0.4, 10.0}) CHECK(drive_amplitude(s, t) == cplx{});
}

TEST_CASE("peak amplitude equals sqrt(pi)/tau_p for a pi pulse") {
  const PulseSpec s{kPi, 1.0};
  const double expected = std::sqrt(kPi) * std::sqrt(2.0 * std::log(2.0));
  CHECK(std::abs(drive_amplitude(s, 0.0)) ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(drive_amplitude(s, 0.0).imag() == 0.0);
}

TEST_CASE("chirp and phase leave the magnitude unchanged") {
  const PulseSpec plain{2 * kPi, 0.7, 0.0, 0.0, 0.3};
  PulseSpec chirped = plain;
  chirped.chirp_bw_fraction = 0.054;
  chirped.carrier_phase = 1.1;
  for (double t = -2.0; t <= 2.0; t += 0.137) {
    CHECK(std::abs(drive_amplitude(chirped, t)) ==
          doctest::Approx(std::abs(drive_amplitude(plain, t))).epsilon(1e-14));
    // Magnitude is even about the centre.
    CHECK(std::abs(drive_amplitude(plain, 0.3 + t)) ==
          doctest::Approx(std::abs(drive_amplitude(plain, 0.3 - t)))
              .epsilon(1e-13));
  }
  // Phase at the centre is -phi; away from it the chirp adds -alpha s^2.
  CHECK(std::arg(drive_amplitude(chirped, 0.3)) == doctest::Approx(-1.1));
  const double s = 0.25;
  const double expected = -(chirped.chirp() * s * s + 1.1);
  CHECK(std::arg(drive_amplitude(chirped, 0.3 + s)) ==
        doctest::Approx(expected));
}

TEST_CASE("chirp parameter") {
  CHECK(chirp_parameter(0.0, 1.0) == 0.0);
  CHECK(chirp_parameter(0.027, 1.0) ==
        doctest::Approx(0.2339423006).epsilon(1e-9));
  CHECK(chirp_parameter(0.054, 1.0) ==
        doctest::Approx(std::sqrt(0.108 + 0.002916)).epsilon(1e-14));
  CHECK(chirp_parameter(0.027, 2.0) ==
        doctest::Approx(chirp_parameter(0.027, 1.0) / 4.0));
  double previous = -1.0;
  for (double d = 0.0; d < 0.2; d += 0.01) {
    const double a = chirp_parameter(d, 0.5);
    CHECK(a > previous);
    previous = a;
  }
  CHECK_THROWS_AS(chirp_parameter(-0.01, 1.0), InvalidArgument);
  CHECK_THROWS_AS(chirp_parameter(0.01, 0.0), InvalidArgument);
  CHECK_THROWS_AS(chirp_parameter(0.01, -1.0), InvalidArgument);
}

TEST_CASE("accumulated area") {
  const PulseSpec s{2 * kPi, 0.4, 0.027, 0.2, 1.5};
  CHECK(accumulated_area(s, -1e6) == 0.0);
  CHECK(accumulated_area(s, 1.5) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(accumulated_area(s, 1.5 + s.tau_p()) ==
        doctest::Approx(2 * kPi * (1.0 + std::erf(1.0)) / 2.0).epsilon(1e-14));
  CHECK(accumulated_area(s, 1e6) == doctest::Approx(2 * kPi).epsilon(1e-15));

  // Independent oracle: Simpson quadrature of |Omega|.
  auto mag = [&](double t) { return std::abs(drive_amplitude(s, t)); };
  const double lo = 1.5 - 12 * s.tau_p();
  for (double t : {0.9, 1.3, 1.5, 1.8, 2.4}) {
    CHECK(accumulated_area(s, t) ==
          doctest::Approx(simpson(mag, lo, t, 20000)).epsilon(1e-10));
  }
  // Area property over the whole line to 1e-9 relative.
  CHECK(simpson(mag, lo, 1.5 + 12 * s.tau_p(), 20000) ==
        doctest::Approx(2 * kPi).epsilon(1e-9));

  double previous = 0.0;
  for (double t = -1.0; t < 4.0; t += 0.01) {
    const double a = accumulated_area(s, t);
    CHECK(a >= previous);
    previous = a;
  }
}

TEST_CASE("drive support") {
  const PulseSpec s{kPi, 0.3, 0.0, 0.0, 2.0};
  const Interval i = drive_support(s);
  CHECK(i.begin == doctest::Approx(2.0 - kSupportHalfWidth * s.tau_p()));
  CHECK(i.end == doctest::Approx(2.0 + kSupportHalfWidth * s.tau_p()));
  // Beyond the support the drive is below double resolution of its peak.
  CHECK(std::abs(drive_amplitude(s, i.end)) <
        1e-27 * std::abs(drive_amplitude(s, 2.0)));
}
