"""Transient cavity dynamics, homodyne quadrature, and finite-duration SNR.

The mean-field Heisenberg equations for the two mode amplitudes are
linear, ``d/dt (a, b) = M (a, b) + (sqrt(ka), sqrt(kb)) <c_in(t)>`` with a
complex-symmetric 2x2 matrix M whose form depends on the cavity kind.
Diagonalizing the traceless part of M in a complex-orthonormal basis
gives the ring-up solution in closed form: every transient observable is
a combination of ``1 - exp(lambda_k t)`` with eigenvalues of negative real
part, and the finite-duration signal-to-noise ratio of the homodyne
readout has an explicit expression that this module evaluates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import CavityKind, CavityParams, Drive, QubitShift, normalize, shifted_params
from .scattering import ContrastResult, contrast

__all__ = [
    "SystemMatrix",
    "EigenSystem",
    "TransientSolution",
    "SnrCurve",
    "system_matrix",
    "eigensystem",
    "transient_coefficients",
    "output_field_ratio",
    "intracavity_fields",
    "homodyne_angle",
    "quadrature_expectation",
    "snr",
    "snr_curve",
]

# Below this squared eigenvalue splitting the mode pair is treated as
# defective (exceptional point) and the eigendecomposition is refused.
DEGENERACY_THRESHOLD = 1e-24


@dataclass(frozen=True)
class SystemMatrix:
    """Drift matrix of the mean-field mode equations."""

    m: np.ndarray
    kind: CavityKind


@dataclass(frozen=True)
class EigenSystem:
    """Complex-orthonormal eigendecomposition of the drift matrix.

    The traceless part of M is [[z, x], [x, -z]]; its eigenvalues are
    lambda_bar = +/- sqrt(x^2 + z^2).  ``eta[k]`` is the eigenvector for
    lambda_bar[k], normalized without conjugation, with the second vector
    phased so that eta[1] = (eta[0][1], -eta[0][0]) exactly.  ``zeta`` is
    the inverse-transformation matrix built from the eta components.
    ``eigenvalues`` are the full eigenvalues of M + i*omega_p*I.
    """

    lambda_bar: tuple[complex, complex]
    eta: np.ndarray
    zeta: np.ndarray
    x: complex
    z: complex
    eigenvalues: tuple[complex, complex]


@dataclass(frozen=True)
class TransientSolution:
    """Ring-up eigenvalues and weights for one qubit state.

    The output field obeys ``<c_out>/<c_in> = sum_k A_k (1 - e^{l_k t})``
    with an extra -1 in reflection; the stationary limit of that sum
    reproduces the scattering coefficient.
    """

    eigenvalues: tuple[complex, complex]
    coeff_a: tuple[complex, complex]
    qubit_state: int
    kind: CavityKind


@dataclass(frozen=True)
class SnrCurve:
    """Normalized SNR versus measurement duration for one scenario."""

    tau: np.ndarray
    value: np.ndarray
    alpha: float
    scenario: str = ""


def system_matrix(params: CavityParams) -> SystemMatrix:
    """Drift matrix of the mode equations for the given cavity kind.

    One-sided: diagonal -i*Omega - kappa/2, off-diagonal
    -sqrt(ka*kb)/2; two-sided: diagonal -i*Omega - kappa, off-diagonal
    -sqrt(ka*kb).  Complex-symmetric in both cases.
    """
    half = 0.5 if params.kind is CavityKind.ONE_SIDED else 1.0
    coupling = -half * math.sqrt(params.kappa_a * params.kappa_b)
    m = np.array(
        [
            [-1.0j * params.omega_a - half * params.kappa_a, coupling],
            [coupling, -1.0j * params.omega_b - half * params.kappa_b],
        ],
        dtype=complex,
    )
    return SystemMatrix(m=m, kind=params.kind)


def eigensystem(matrix: SystemMatrix, omega_p: float) -> EigenSystem:
    """Complex-orthonormal eigendecomposition of M + i*omega_p*I.

    Raises ValueError at an exceptional point (x^2 + z^2 ~ 0), where the
    matrix is defective and no eigenbasis exists.
    """
    m = matrix.m
    x = complex(m[0, 1])
    z = 0.5 * (complex(m[0, 0]) - complex(m[1, 1]))
    disc = x * x + z * z
    if abs(disc) < DEGENERACY_THRESHOLD:
        raise ValueError("degenerate mode pair: eigendecomposition invalid")
    lb1 = cmath.sqrt(disc)
    # lb1 - z via x^2/(lb1 + z) when the direct difference cancels.
    diff = lb1 - z
    summ = lb1 + z
    if abs(summ) > abs(diff):
        diff = x * x / summ
    norm1 = cmath.sqrt(2.0 * lb1 * diff)
    eta1 = (x / norm1, diff / norm1)
    eta2 = (eta1[1], -eta1[0])
    eta = np.array([eta1, eta2], dtype=complex)
    zeta = np.array(
        [[-eta[1, 1], eta[1, 0]], [eta[0, 1], -eta[0, 0]]],
        dtype=complex,
    )
    trace_half = 0.5 * (complex(m[0, 0]) + complex(m[1, 1]))
    shift = trace_half + 1.0j * omega_p
    return EigenSystem(
        lambda_bar=(lb1, -lb1),
        eta=eta,
        zeta=zeta,
        x=x,
        z=z,
        eigenvalues=(lb1 + shift, -lb1 + shift),
    )


def transient_coefficients(
    params: CavityParams, drive: Drive, shift: QubitShift
) -> TransientSolution:
    """Ring-up weights A_k = -(eta_k . s)(zeta_k . s)/lambda_k for one state.

    ``s = (sqrt(kappa_a), sqrt(kappa_b))`` is the drive coupling vector
    and mode a is pulled by the qubit-state-dependent shift.
    """
    pulled = shifted_params(params, shift)
    es = eigensystem(system_matrix(pulled), drive.omega_p)
    s = (math.sqrt(params.kappa_a), math.sqrt(params.kappa_b))
    coeffs = []
    for k in range(2):
        eta_s = es.eta[k, 0] * s[0] + es.eta[k, 1] * s[1]
        zeta_s = es.zeta[k, 0] * s[0] + es.zeta[k, 1] * s[1]
        num = eta_s * zeta_s
        # A decoupled (dark) mode contributes nothing even if its
        # eigenvalue vanishes.
        coeffs.append(0.0j if num == 0 else -num / es.eigenvalues[k])
    return TransientSolution(
        eigenvalues=es.eigenvalues,
        coeff_a=(coeffs[0], coeffs[1]),
        qubit_state=shift.state,
        kind=params.kind,
    )


def output_field_ratio(sol: TransientSolution, t):
    """Output-to-input field ratio at time(s) t >= 0 after switch-on.

    Reflection starts at -1 (prompt reflection off the empty cavity) and
    transmission at 0; both converge to the stationary scattering
    coefficient.  Accepts a scalar or an array of times.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be non-negative")
    total = np.zeros(t_arr.shape, dtype=complex)
    for lam, coeff in zip(sol.eigenvalues, sol.coeff_a):
        total = total + coeff * (1.0 - np.exp(lam * t_arr))
    if sol.kind is CavityKind.ONE_SIDED:
        total = total - 1.0
    return complex(total) if t_arr.ndim == 0 else total


def intracavity_fields(params: CavityParams, drive: Drive, shift: QubitShift, t):
    """Intracavity amplitudes (a, b) normalized to the input field at time t.

    <x(t)>/<c_in(t)> = sum_k eta_k[x] * D_k(t) with
    D_k(t) = (eta_k . s) (e^{lambda_k t} - 1)/lambda_k; both start at zero
    for the initially empty cavity.  Accepts a scalar or an array of times.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be non-negative")
    pulled = shifted_params(params, shift)
    es = eigensystem(system_matrix(pulled), drive.omega_p)
    s = (math.sqrt(params.kappa_a), math.sqrt(params.kappa_b))
    a_val = np.zeros(t_arr.shape, dtype=complex)
    b_val = np.zeros(t_arr.shape, dtype=complex)
    for k in range(2):
        lam = es.eigenvalues[k]
        eta_s = es.eta[k, 0] * s[0] + es.eta[k, 1] * s[1]
        d_k = eta_s * (np.exp(lam * t_arr) - 1.0) / lam
        a_val = a_val + es.eta[k, 0] * d_k
        b_val = b_val + es.eta[k, 1] * d_k
    if t_arr.ndim == 0:
        return complex(a_val), complex(b_val)
    return a_val, b_val


def homodyne_angle(result: ContrastResult) -> float:
    """Quadrature angle that rotates the contrast onto the positive real axis."""
    if result.magnitude == 0.0:
        raise ValueError("no contrast: homodyne angle undefined")
    return -cmath.phase(result.delta_s)


def quadrature_expectation(sol: TransientSolution, alpha: float, t, amp: float = 1.0):
    """Expectation of the measured quadrature at angle alpha and time t.

    2*amp*Re[e^{i*alpha} * (output/input ratio)], with amp = |alpha_in|.
    Accepts a scalar or an array of times.
    """
    rotation = cmath.exp(1.0j * alpha)
    ratio = output_field_ratio(sol, t)
    return 2.0 * amp * np.real(rotation * ratio)


def _ringup_integral_factor(u: complex) -> complex:
    """1 + (1 - e^u)/u with a series guard against cancellation at small |u|."""
    if abs(u) < 1e-6:
        return -u / 2.0 - u * u / 6.0
    return 1.0 + (1.0 - cmath.exp(u)) / u


def snr(params: CavityParams, drive: Drive, chi: float, tau: float) -> float:
    """Normalized signal-to-noise ratio of a measurement of duration tau.

    The quadrature difference between the qubit states is integrated over
    [0, tau] in closed form and normalized to |alpha_in|*sqrt(2*tau), so
    the stationary limit equals the contrast modulus |Delta S|:

        snr = | Re[ e^{i*alpha} * sum_{k,l} (-1)^l A_{k,l}
                    * (1 + (1 - e^{lambda_{k,l} tau})/(lambda_{k,l} tau)) ] |

    with alpha the homodyne angle of the stationary contrast.  Zero shift
    gives zero SNR at every duration.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if drive.alpha_in == 0:
        raise ValueError("alpha_in must be nonzero: the SNR is normalized to it")
    point = normalize(params, drive, QubitShift(chi=chi, state=0))
    stationary = contrast(point, params.kind)
    if stationary.magnitude == 0.0:
        return 0.0
    rotation = cmath.exp(1.0j * homodyne_angle(stationary))
    total = 0.0j
    for state, sign in ((0, 1.0), (1, -1.0)):
        sol = transient_coefficients(params, drive, QubitShift(chi=chi, state=state))
        for lam, coeff in zip(sol.eigenvalues, sol.coeff_a):
            total += sign * coeff * _ringup_integral_factor(lam * tau)
    return abs((rotation * total).real)


def snr_curve(
    params: CavityParams,
    drive: Drive,
    chi: float,
    taus,
    scenario: str = "",
) -> SnrCurve:
    """Evaluate the normalized SNR on a grid of measurement durations."""
    tau_arr = np.asarray(taus, dtype=float)
    values = np.array([snr(params, drive, chi, float(tau)) for tau in tau_arr])
    point = normalize(params, drive, QubitShift(chi=chi, state=0))
    stationary = contrast(point, params.kind)
    alpha = homodyne_angle(stationary) if stationary.magnitude > 0.0 else 0.0
    return SnrCurve(tau=tau_arr, value=values, alpha=alpha, scenario=scenario)
