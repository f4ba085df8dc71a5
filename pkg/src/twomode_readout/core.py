"""Domain types and unit conventions for two-mode cavity readout.

All frequencies and decay rates are angular quantities in one common unit
system; nothing in this library multiplies by 2*pi.  The working
coordinates are the dimensionless detunings ``delta_x = (Omega_x -
omega_p) / kappa_x`` and the shift-to-linewidth ratio ``epsilon = 2*chi /
kappa_a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

__all__ = [
    "CavityKind",
    "CavityParams",
    "Drive",
    "QubitShift",
    "NormalizedPoint",
    "normalize",
    "shifted_delta_a",
    "shifted_params",
    "from_normalized",
]


class CavityKind(Enum):
    """Port configuration: readout in reflection or in transmission."""

    ONE_SIDED = "one_sided"
    TWO_SIDED = "two_sided"


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class CavityParams:
    """Frequencies and decay rates of the two coupled cavity modes."""

    omega_a: float
    omega_b: float
    kappa_a: float
    kappa_b: float
    kind: CavityKind = CavityKind.ONE_SIDED

    def __post_init__(self) -> None:
        for name in ("omega_a", "omega_b", "kappa_a", "kappa_b"):
            _check_finite(name, getattr(self, name))
        if self.kappa_a <= 0.0 or self.kappa_b <= 0.0:
            raise ValueError("decay rates kappa_a and kappa_b must be positive")


@dataclass(frozen=True)
class Drive:
    """Coherent pump: frequency, input amplitude, and (two-sided) input port."""

    omega_p: float
    alpha_in: complex = 1.0 + 0.0j
    input_side: int = 1

    def __post_init__(self) -> None:
        _check_finite("omega_p", self.omega_p)
        amp = complex(self.alpha_in)
        _check_finite("alpha_in.real", amp.real)
        _check_finite("alpha_in.imag", amp.imag)
        if self.input_side not in (1, 2):
            raise ValueError("input_side must be 1 or 2")


@dataclass(frozen=True)
class QubitShift:
    """Dispersive pull of mode a: +chi for qubit state 0, -chi for state 1."""

    chi: float
    state: int = 0

    def __post_init__(self) -> None:
        _check_finite("chi", self.chi)
        if self.chi < 0.0:
            raise ValueError("chi must be non-negative")
        if self.state not in (0, 1):
            raise ValueError("state must be 0 or 1")

    @property
    def frequency_shift(self) -> float:
        """Signed frequency pull of mode a, equal to (-1)**state * chi."""
        return self.chi if self.state == 0 else -self.chi


@dataclass(frozen=True)
class NormalizedPoint:
    """Dimensionless working coordinates (delta_a, delta_b, epsilon)."""

    delta_a: float
    delta_b: float
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        for name in ("delta_a", "delta_b", "epsilon"):
            _check_finite(name, getattr(self, name))
        if self.epsilon < 0.0:
            raise ValueError("epsilon must be non-negative")


def normalize(params: CavityParams, drive: Drive, shift: QubitShift) -> NormalizedPoint:
    """Map physical parameters onto the dimensionless working coordinates.

    delta_x = (Omega_x - omega_p) / kappa_x for x in {a, b}, and
    epsilon = 2*chi / kappa_a.
    """
    return NormalizedPoint(
        delta_a=(params.omega_a - drive.omega_p) / params.kappa_a,
        delta_b=(params.omega_b - drive.omega_p) / params.kappa_b,
        epsilon=2.0 * shift.chi / params.kappa_a,
    )


def shifted_delta_a(point: NormalizedPoint, state: int) -> float:
    """Mode-a detuning seen for a given qubit state: delta_a +/- epsilon/2."""
    if state not in (0, 1):
        raise ValueError("state must be 0 or 1")
    half = 0.5 * point.epsilon
    return point.delta_a + half if state == 0 else point.delta_a - half


def shifted_params(params: CavityParams, shift: QubitShift) -> CavityParams:
    """Cavity parameters with mode a pulled by the qubit-state shift."""
    return replace(params, omega_a=params.omega_a + shift.frequency_shift)


def from_normalized(
    point: NormalizedPoint,
    kind: CavityKind = CavityKind.ONE_SIDED,
    kappa_a: float = 1.0,
    kappa_b: float = 1.0,
    omega_p: float = 0.0,
    alpha_in: complex = 1.0 + 0.0j,
) -> tuple[CavityParams, Drive, float]:
    """Build a physical realization of a normalized point.

    Returns (params, drive, chi); ``normalize`` applied to the result
    reproduces ``point`` exactly.
    """
    params = CavityParams(
        omega_a=omega_p + point.delta_a * kappa_a,
        omega_b=omega_p + point.delta_b * kappa_b,
        kappa_a=kappa_a,
        kappa_b=kappa_b,
        kind=kind,
    )
    drive = Drive(omega_p=omega_p, alpha_in=alpha_in)
    chi = 0.5 * point.epsilon * kappa_a
    return params, drive, chi
