# Copyright 2026 The pulsetls Authors.
# SPDX-License-Identifier: Apache-2.0

"""Independent reference values for the two-level pulsed-emission tests.

Uses scipy's adaptive DOP853 integrator on the full 2x2 matrix form of the
master equation (no fixed-step maps, no closed-form shortcuts) and
Gauss-Legendre quadrature over the first-emission time. The numbers it prints
are frozen into tests/unit/test_correlations.cpp, tests/unit/test_capi.cpp and
tests/acceptance.

    python3 tests/oracles/regression_oracle.py
"""
import math

import numpy as np
from scipy.integrate import solve_ivp

SM = np.array([[0, 1], [0, 0]], dtype=complex)  # |g><e| in (g, e) basis
SP = SM.conj().T
NE = SP @ SM


def drive(t, area, tau_fwhm, dbw):
    tp = tau_fwhm / math.sqrt(2 * math.log(2))
    alpha = math.sqrt(2 * dbw + dbw * dbw) / tp**2
    return area / math.sqrt(tp * tp * math.pi) * math.exp(-t * t / tp**2) * np.exp(-1j * alpha * t * t)


def rhs_factory(area, tau_fwhm, gamma, gamma_d, phonon_b, dbw):
    def rhs(t, y):
        rho = y[:4].reshape(2, 2)
        om = drive(t, area, tau_fwhm, dbw)
        h = 0.5 * (om * SP + np.conj(om) * SM)
        d = -1j * (h @ rho - rho @ h)
        for rate, op in ((gamma, SM), (gamma_d + phonon_b * abs(om) ** 2, NE)):
            d += rate * (op @ rho @ op.conj().T - 0.5 * (op.conj().T @ op @ rho + rho @ op.conj().T @ op))
        out = np.empty(5, dtype=complex)
        out[:4] = d.reshape(4)
        out[4] = gamma * rho[1, 1]  # running photon number
        return out

    return rhs


def solve(rhs, t0, t1, rho0, dense=False):
    y0 = np.zeros(5, dtype=complex)
    y0[:4] = rho0.reshape(4)
    return solve_ivp(rhs, (t0, t1), y0, method="DOP853", rtol=1e-11, atol=1e-13, dense_output=dense)


def case(area, tau_fwhm, gamma=1.0, gamma_d=0.0, phonon_b=0.0, dbw=0.0, t_end=10.0, tau_max=10.0, nodes=240):
    tp = tau_fwhm / math.sqrt(2 * math.log(2))
    t_start = -5 * tp
    rhs = rhs_factory(area, tau_fwhm, gamma, gamma_d, phonon_b, dbw)
    ground = np.array([[1, 0], [0, 0]], dtype=complex)
    main = solve(rhs, t_start, t_end, ground, dense=True)
    expected_n = main.y[4, -1].real
    # Pair mass: first emissions after the drive window start from |g> with no
    # drive left and cannot produce a second photon.
    x, w = np.polynomial.legendre.leggauss(nodes)
    a, b = t_start, 8 * tp
    pair = 0.0
    for xi, wi in zip(x, w):
        t1 = 0.5 * (b - a) * xi + 0.5 * (b + a)
        pe = main.sol(t1)[3].real
        cond = solve(rhs, t1, t1 + tau_max, ground)
        pair += 0.5 * (b - a) * wi * gamma * pe * cond.y[4, -1].real
    return expected_n, pair


if __name__ == "__main__":
    for area_pi, tau in ((1, 0.1), (2, 0.1), (4, 0.1)):
        en, p2 = case(area_pi * math.pi, tau)
        print(f"ideal A={area_pi}pi tau_fwhm={tau}: E[n]={en:.10f} P2={p2:.10f} P1={en - 2 * p2:.10f} g2={2 * p2 / en**2:.10f}")
    g = 1 / 602.0
    en, p2 = case(2 * math.pi, 80.0, gamma=g, gamma_d=1.3e-3, phonon_b=2.0, t_end=6020.0, tau_max=6020.0)
    print(f"experimental A=2pi: E[n]={en:.10f} g2={2 * p2 / en**2:.10f}")
