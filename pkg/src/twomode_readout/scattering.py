"""Stationary scattering of the two-mode cavity and its closed-form optima.

In normalized detunings the reflection of a one-sided cavity and the
transmission of a two-sided cavity are rational functions of
``(delta_a, delta_b)``:

    s11 = (delta_a + delta_b - 2i*delta_a*delta_b)
          / (delta_a + delta_b + 2i*delta_a*delta_b)

    s21 = (delta_a + delta_b) / (delta_a + delta_b + i*delta_a*delta_b)

The qubit readout signal is the contrast between the two qubit states,
``S(delta_a + eps/2) - S(delta_a - eps/2)``, whose modulus is bounded by 2
(reflection) and 1 (transmission).  This module also provides the
closed-form thresholds and optima that locate the maximal contrast, and
the inverse problem: placing the mode splitting and pump frequency for a
given shift ratio epsilon.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .core import CavityKind, NormalizedPoint, shifted_delta_a

__all__ = [
    "Regime",
    "ContrastResult",
    "OptimaReport",
    "s11",
    "s21",
    "s11_single_mode",
    "s21_single_mode",
    "contrast",
    "epsilon_threshold",
    "peak_contrast",
    "primary_detuning",
    "optimal_detunings",
    "delta_b_threshold",
    "optimal_frequencies",
    "theoretical_max",
]


class Regime(Enum):
    """Shape of |contrast| as a function of delta_a at fixed (delta_b, epsilon)."""

    SINGLE_MAXIMUM = "single_maximum"
    DOUBLE_MAXIMUM = "double_maximum"


@dataclass(frozen=True)
class ContrastResult:
    """Complex contrast between the qubit states with modulus and phase."""

    delta_s: complex
    magnitude: float
    arg: float


@dataclass(frozen=True)
class OptimaReport:
    """Location and height of the |contrast| maxima over delta_a."""

    epsilon_th: float
    regime: Regime
    maxima: tuple[float, ...]
    minimum_at: float | None
    peak_value: float


def theoretical_max(kind: CavityKind) -> float:
    """Largest possible contrast modulus: 2 in reflection, 1 in transmission."""
    return 2.0 if kind is CavityKind.ONE_SIDED else 1.0


def s11(delta_a: float, delta_b: float) -> complex:
    """Reflection coefficient of the one-sided two-mode cavity.

    Unit modulus for all real detunings.  The point delta_a = delta_b = 0
    is a removable singularity with limit 1; the line delta_b = -delta_a
    (with nonzero product) evaluates to -1.
    """
    num = (delta_a + delta_b) - 2.0j * delta_a * delta_b
    den = (delta_a + delta_b) + 2.0j * delta_a * delta_b
    if den == 0:
        # Exactly zero denominator happens at the removable origin, or by
        # underflow of the product on the anti-diagonal delta_b = -delta_a.
        return 1.0 + 0.0j if delta_a == 0.0 and delta_b == 0.0 else -1.0 + 0.0j
    return num / den


def s21(delta_a: float, delta_b: float) -> complex:
    """Transmission coefficient of the two-sided two-mode cavity.

    Lies on the circle of radius 1/2 around 1/2 + 0i for all real
    detunings; satisfies s11(da, db) = 2*s21(2*da, 2*db) - 1.
    """
    num = delta_a + delta_b
    den = (delta_a + delta_b) + 1.0j * delta_a * delta_b
    if den == 0:
        return 1.0 + 0.0j if delta_a == 0.0 and delta_b == 0.0 else 0.0 + 0.0j
    return num / den


def s11_single_mode(delta_a: float) -> complex:
    """Reflection of a single-mode one-sided cavity, (1-2i*da)/(1+2i*da)."""
    return (1.0 - 2.0j * delta_a) / (1.0 + 2.0j * delta_a)


def s21_single_mode(delta_a: float) -> complex:
    """Transmission of a single-mode two-sided cavity, 1/(1+i*da)."""
    return 1.0 / (1.0 + 1.0j * delta_a)


def _scatter(kind: CavityKind, delta_a: float, delta_b: float) -> complex:
    return s11(delta_a, delta_b) if kind is CavityKind.ONE_SIDED else s21(delta_a, delta_b)


def contrast(point: NormalizedPoint, kind: CavityKind) -> ContrastResult:
    """Difference of the scattering coefficient between the qubit states.

    delta_s = S(delta_a + eps/2, delta_b) - S(delta_a - eps/2, delta_b),
    with S the reflection or transmission coefficient per ``kind``.
    """
    s0 = _scatter(kind, shifted_delta_a(point, 0), point.delta_b)
    s1 = _scatter(kind, shifted_delta_a(point, 1), point.delta_b)
    ds = s0 - s1
    return ContrastResult(delta_s=ds, magnitude=abs(ds), arg=cmath.phase(ds))


def epsilon_threshold(delta_b: float, kind: CavityKind) -> float:
    """Shift ratio below which |contrast| has a single maximum in delta_a.

    4*db^2/(1+4*db^2) in reflection, 2*db^2/(1+db^2) in transmission.
    """
    if kind is CavityKind.ONE_SIDED:
        q = 4.0 * delta_b * delta_b
        return q / (1.0 + q)
    q = delta_b * delta_b
    return 2.0 * q / (1.0 + q)


def primary_detuning(delta_b: float, kind: CavityKind) -> float:
    """Stationary point of |contrast| over delta_a: the single-regime maximum.

    -db/(1+4*db^2) in reflection, -db/(1+db^2) in transmission.  Above the
    threshold shift this same point becomes the local minimum between the
    two maxima.
    """
    if kind is CavityKind.ONE_SIDED:
        return -delta_b / (1.0 + 4.0 * delta_b * delta_b)
    return -delta_b / (1.0 + delta_b * delta_b)


def peak_contrast(epsilon: float, delta_b: float, kind: CavityKind) -> float:
    """|contrast| at the primary detuning: max * 2*eps*eps_th/(eps^2 + eps_th^2)."""
    eps_th = epsilon_threshold(delta_b, kind)
    if epsilon == 0.0:
        return 0.0
    return theoretical_max(kind) * 2.0 * epsilon * eps_th / (epsilon * epsilon + eps_th * eps_th)


def optimal_detunings(delta_b: float, epsilon: float, kind: CavityKind) -> OptimaReport:
    """Maxima of |contrast| over delta_a at fixed (delta_b, epsilon).

    Below the threshold shift there is one maximum at the primary
    detuning; above it the theoretical maximum is reached at two points
    placed symmetrically, +/- sqrt(eps^2 - eps_th^2)/2, around the primary
    detuning, which turns into a local minimum.  Exact equality
    eps == eps_th is classified as a single maximum (coincident roots).
    """
    if epsilon < 0.0:
        raise ValueError("epsilon must be non-negative")
    eps_th = epsilon_threshold(delta_b, kind)
    da1 = primary_detuning(delta_b, kind)
    if epsilon <= eps_th:
        return OptimaReport(
            epsilon_th=eps_th,
            regime=Regime.SINGLE_MAXIMUM,
            maxima=(da1,),
            minimum_at=None,
            peak_value=peak_contrast(epsilon, delta_b, kind),
        )
    half = 0.5 * math.sqrt(epsilon * epsilon - eps_th * eps_th)
    return OptimaReport(
        epsilon_th=eps_th,
        regime=Regime.DOUBLE_MAXIMUM,
        maxima=(da1 - half, da1 + half),
        minimum_at=da1,
        peak_value=theoretical_max(kind),
    )


def delta_b_threshold(epsilon: float, kind: CavityKind) -> float:
    """Largest |delta_b| at which the theoretical maximum contrast is reachable.

    sqrt(eps/(1-eps))/2 in reflection (0 <= eps < 1) and
    sqrt(eps/(2-eps)) in transmission (0 <= eps < 2).  The negative branch
    -delta_b_threshold is equivalent by the delta_b -> -delta_b
    antisymmetry of the primary detuning.
    """
    cap = 1.0 if kind is CavityKind.ONE_SIDED else 2.0
    if not 0.0 <= epsilon < cap:
        raise ValueError("threshold undefined: shift exceeds single-mode saturation")
    if kind is CavityKind.ONE_SIDED:
        return 0.5 * math.sqrt(epsilon / (1.0 - epsilon))
    return math.sqrt(epsilon / (2.0 - epsilon))


def optimal_frequencies(epsilon: float, kappa_a: float, kappa_b: float) -> tuple[float, float]:
    """Optimal mode splitting and pump placement for a one-sided cavity.

    Returns ``(omega_a - omega_b, omega_p - (omega_a + omega_b)/2)`` such
    that the normalized detunings sit at the threshold optimum
    (delta_b = delta_b_threshold, delta_a = primary detuning):

        splitting = -kappa_a/2 * sqrt(eps*(1-eps)) - kappa_b/2 * sqrt(eps/(1-eps))
        offset    = +kappa_a/4 * sqrt(eps*(1-eps)) - kappa_b/4 * sqrt(eps/(1-eps))

    Defined for 0 < epsilon < 1.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("optimal frequencies require 0 < epsilon < 1")
    if kappa_a <= 0.0 or kappa_b <= 0.0:
        raise ValueError("decay rates must be positive")
    geo = math.sqrt(epsilon * (1.0 - epsilon))
    ratio = math.sqrt(epsilon / (1.0 - epsilon))
    splitting = -0.5 * kappa_a * geo - 0.5 * kappa_b * ratio
    offset = 0.25 * kappa_a * geo - 0.25 * kappa_b * ratio
    return splitting, offset
