"""Brute-force verifiers: direct linear solve, RK4 integration, grid search.

Everything here favors obviousness over speed.  The frequency-domain
solve inverts the 2x2 response matrix by hand, the time-domain oracle is
a fixed-step classical Runge-Kutta integration of the driven mode
equations, and the SNR oracle replaces the closed-form time integral with
trapezoid quadrature.  Tests (and the CLI ``--verify`` mode) compare the
analytic modules against these routes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import CavityKind, CavityParams, Drive, QubitShift, normalize, shifted_params
from .dynamics import homodyne_angle, quadrature_expectation, transient_coefficients
from .scattering import contrast

__all__ = [
    "OdeTrajectory",
    "direct_solve",
    "ode_integrate",
    "grid_maximize",
    "snr_quadrature",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OdeTrajectory:
    """Sampled mean-field trajectory of the driven cavity, starting empty."""

    times: np.ndarray
    a_vals: np.ndarray
    b_vals: np.ndarray
    out_vals: np.ndarray


def _response_entries(params: CavityParams, omega: float):
    """Entries of m = -(M + i*omega*I), written out per cavity kind."""
    half = 0.5 if params.kind is CavityKind.ONE_SIDED else 1.0
    m11 = half * params.kappa_a + 1.0j * (params.omega_a - omega)
    m22 = half * params.kappa_b + 1.0j * (params.omega_b - omega)
    m12 = half * math.sqrt(params.kappa_a * params.kappa_b)
    return m11, m12, m12, m22


def direct_solve(params: CavityParams, omega: float) -> tuple[complex, complex, complex]:
    """Stationary cavity amplitudes and scattering coefficient at one frequency.

    Solves m (a, b) = (sqrt(ka), sqrt(kb)) by Cramer's rule, with
    m = -(M + i*omega*I), and combines the amplitudes through the port
    boundary condition.  Returns (a, b, s) normalized to unit input.
    """
    m11, m12, m21, m22 = _response_entries(params, omega)
    det = m11 * m22 - m12 * m21
    if det == 0:
        raise ValueError("singular response matrix: drive sits on a lossless pole")
    sq_a = math.sqrt(params.kappa_a)
    sq_b = math.sqrt(params.kappa_b)
    a = (m22 * sq_a - m12 * sq_b) / det
    b = (-m21 * sq_a + m11 * sq_b) / det
    out = sq_a * a + sq_b * b
    s = out - 1.0 if params.kind is CavityKind.ONE_SIDED else out
    return a, b, s


def _default_steps(params: CavityParams, omega_p: float, t_end: float) -> int:
    half = 0.5 if params.kind is CavityKind.ONE_SIDED else 1.0
    scale = math.sqrt(
        abs(-1.0j * (params.omega_a - omega_p) - half * params.kappa_a) ** 2
        + abs(-1.0j * (params.omega_b - omega_p) - half * params.kappa_b) ** 2
        + 2.0 * (half * half) * params.kappa_a * params.kappa_b
    )
    return max(1000, math.ceil(40.0 * t_end * scale / (2.0 * math.pi)))


def ode_integrate(
    params: CavityParams,
    drive: Drive,
    shift: QubitShift,
    t_end: float,
    steps: int | None = None,
) -> OdeTrajectory:
    """Fixed-step RK4 integration of the driven mode equations.

    d/dt (a, b) = M (a, b) + (sqrt(ka), sqrt(kb)) * alpha_in * e^{-i wp t},
    from an empty cavity.  The output field applies the boundary condition
    of the relevant port: reflection subtracts the input, the transmitted
    side does not.
    """
    if t_end <= 0.0:
        raise ValueError("t_end must be positive")
    if steps is None:
        steps = _default_steps(params, drive.omega_p, t_end)
    if steps < 1000:
        raise ValueError("steps must be at least 1000")

    pulled = shifted_params(params, shift)
    half = 0.5 if params.kind is CavityKind.ONE_SIDED else 1.0
    m11 = -1.0j * pulled.omega_a - half * pulled.kappa_a
    m22 = -1.0j * pulled.omega_b - half * pulled.kappa_b
    m12 = -half * math.sqrt(pulled.kappa_a * pulled.kappa_b)
    sq_a = math.sqrt(params.kappa_a)
    sq_b = math.sqrt(params.kappa_b)
    alpha = complex(drive.alpha_in)
    wp = drive.omega_p

    h = t_end / steps
    a_vals = np.empty(steps + 1, dtype=complex)
    b_vals = np.empty(steps + 1, dtype=complex)
    a = 0.0j
    b = 0.0j
    a_vals[0] = a
    b_vals[0] = b
    for i in range(steps):
        t = i * h
        g0 = alpha * cmath.exp(-1.0j * wp * t)
        gh = alpha * cmath.exp(-1.0j * wp * (t + 0.5 * h))
        g1 = alpha * cmath.exp(-1.0j * wp * (t + h))

        k1a = m11 * a + m12 * b + sq_a * g0
        k1b = m12 * a + m22 * b + sq_b * g0

        a2 = a + 0.5 * h * k1a
        b2 = b + 0.5 * h * k1b
        k2a = m11 * a2 + m12 * b2 + sq_a * gh
        k2b = m12 * a2 + m22 * b2 + sq_b * gh

        a3 = a + 0.5 * h * k2a
        b3 = b + 0.5 * h * k2b
        k3a = m11 * a3 + m12 * b3 + sq_a * gh
        k3b = m12 * a3 + m22 * b3 + sq_b * gh

        a4 = a + h * k3a
        b4 = b + h * k3b
        k4a = m11 * a4 + m12 * b4 + sq_a * g1
        k4b = m12 * a4 + m22 * b4 + sq_b * g1

        a = a + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        b = b + (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        a_vals[i + 1] = a
        b_vals[i + 1] = b

    times = np.linspace(0.0, t_end, steps + 1)
    c_in = alpha * np.exp(-1.0j * wp * times)
    out_vals = sq_a * a_vals + sq_b * b_vals
    if params.kind is CavityKind.ONE_SIDED:
        out_vals = out_vals - c_in
    if not (np.all(np.isfinite(a_vals)) and np.all(np.isfinite(b_vals))):
        raise RuntimeError("integration diverged: non-finite field values")
    return OdeTrajectory(times=times, a_vals=a_vals, b_vals=b_vals, out_vals=out_vals)


def grid_maximize(f, lo: float, hi: float, n: int = 4096) -> tuple[float, float]:
    """Deterministic scan-then-refine maximization of a scalar function.

    Coarse scan over n uniform points, then golden-section refinement of
    the bracket around the best sample down to 1e-10 interval width.
    Returns the best evaluated (argmax, max).
    """
    if n < 1000:
        raise ValueError("n must be at least 1000")
    if not lo < hi:
        raise ValueError("lo must be below hi")
    xs = np.linspace(lo, hi, int(n))
    vals = [f(float(x)) for x in xs]
    i = int(np.argmax(vals))
    best_x, best_f = float(xs[i]), float(vals[i])

    left = float(xs[max(i - 1, 0)])
    right = float(xs[min(i + 1, len(xs) - 1)])
    u = right - _GOLDEN * (right - left)
    v = left + _GOLDEN * (right - left)
    fu, fv = f(u), f(v)
    while right - left > 1e-10:
        if fu > fv:
            right, v, fv = v, u, fu
            u = right - _GOLDEN * (right - left)
            fu = f(u)
            if fu > best_f:
                best_x, best_f = u, fu
        else:
            left, u, fu = u, v, fv
            v = left + _GOLDEN * (right - left)
            fv = f(v)
            if fv > best_f:
                best_x, best_f = v, fv
    return best_x, best_f


def snr_quadrature(
    params: CavityParams,
    drive: Drive,
    chi: float,
    tau: float,
    steps: int | None = None,
) -> float:
    """Trapezoid-quadrature SNR, normalized identically to the closed form.

    Integrates the quadrature-expectation difference between the qubit
    states on a uniform time grid; the step count grows with
    tau * max|lambda| so the quadrature error stays below the comparison
    tolerances used in the tests.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if drive.alpha_in == 0:
        raise ValueError("alpha_in must be nonzero: the SNR is normalized to it")
    point = normalize(params, drive, QubitShift(chi=chi, state=0))
    stationary = contrast(point, params.kind)
    if stationary.magnitude == 0.0:
        return 0.0
    alpha = homodyne_angle(stationary)
    sols = [
        transient_coefficients(params, drive, QubitShift(chi=chi, state=state))
        for state in (0, 1)
    ]
    if steps is None:
        lam_max = max(abs(lam) for sol in sols for lam in sol.eigenvalues)
        steps = max(20_000, math.ceil(25.0 * tau * lam_max))
    if steps < 10_000:
        raise ValueError("steps must be at least 10^4")
    amp = abs(drive.alpha_in)
    h = tau / steps
    # Composite trapezoid accumulated over windows to bound memory.
    integral = 0.0
    start = 0
    while start < steps:
        end = min(start + 1_000_000, steps)
        times = np.linspace(start * h, end * h, end - start + 1)
        diff = quadrature_expectation(sols[0], alpha, times, amp) - quadrature_expectation(
            sols[1], alpha, times, amp
        )
        integral += float(np.trapezoid(diff, dx=h))
        start = end
    return abs(integral) / (2.0 * tau * amp)
