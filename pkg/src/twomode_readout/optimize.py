"""Derivative-free maximization of the finite-duration readout SNR.

Working in units kappa_a = 1, the constrained search tunes only the
auxiliary-mode decay rate kappa_b while the normalized detunings stay
pinned at the stationary optimum; the unconstrained search additionally
moves both raw detunings.  Both use deterministic coarse scans followed by
golden-section refinement, so identical inputs give identical outputs.

The preset family is not free of exceptional points: for a one-sided
cavity the combination epsilon = 1/2, kappa_b = kappa_a makes the
state-1 drift matrix exactly defective.  The curve evaluators sidestep
such isolated points by scaling kappa_b by (1 + 1e-9), which moves the
SNR by far less than any tolerance used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import CavityKind, CavityParams, Drive, NormalizedPoint
from .dynamics import SnrCurve, homodyne_angle, snr
from .scattering import contrast, delta_b_threshold, primary_detuning

__all__ = [
    "Strategy",
    "Scenario",
    "threshold_preset",
    "single_mode_preset",
    "preset_snr",
    "optimize_kappa_b",
    "optimize_unconstrained",
    "strategy_scenarios",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_EP_NUDGE = 1e-9
SINGLE_MODE_DELTA_B = 1e3


class Strategy(Enum):
    """How kappa_b and the detunings are chosen along a SNR-vs-duration curve."""

    FIXED_KAPPA_EQUAL = "kappa_equal"
    FIXED_KAPPA_TEN = "kappa_ten"
    OPTIMIZED_KAPPA_B = "optimized"
    UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True)
class Scenario:
    """One strategy curve for one shift ratio epsilon."""

    epsilon: float
    tau_grid: np.ndarray
    strategy: Strategy
    result: SnrCurve
    optimal_params: tuple[dict, ...]


def preset_detunings(epsilon: float, kind: CavityKind) -> tuple[float, float]:
    """Normalized (delta_a, delta_b) of the stationary-optimum preset.

    Below the single-mode saturation this is the threshold point
    (primary detuning, delta_b_threshold).  At or above saturation the
    threshold detuning diverges, so the far-detuned single-mode reference
    (delta_b = 1e3) is used instead; the two agree continuously.
    """
    cap = 1.0 if kind is CavityKind.ONE_SIDED else 2.0
    db = delta_b_threshold(epsilon, kind) if epsilon < cap else SINGLE_MODE_DELTA_B
    return primary_detuning(db, kind), db


def threshold_preset(
    epsilon: float,
    kappa_b: float,
    kind: CavityKind = CavityKind.ONE_SIDED,
    kappa_a: float = 1.0,
) -> tuple[CavityParams, Drive, float]:
    """Physical parameters with detunings pinned at the stationary optimum.

    Pump at zero frequency; returns (params, drive, chi).
    """
    da, db = preset_detunings(epsilon, kind)
    params = CavityParams(
        omega_a=da * kappa_a,
        omega_b=db * kappa_b,
        kappa_a=kappa_a,
        kappa_b=kappa_b,
        kind=kind,
    )
    return params, Drive(omega_p=0.0), 0.5 * epsilon * kappa_a


def single_mode_preset(
    epsilon: float,
    kind: CavityKind = CavityKind.ONE_SIDED,
    kappa_a: float = 1.0,
    delta_b: float = SINGLE_MODE_DELTA_B,
) -> tuple[CavityParams, Drive, float]:
    """Far-detuned auxiliary mode at resonant drive: the single-mode reference."""
    params = CavityParams(
        omega_a=0.0,
        omega_b=delta_b * kappa_a,
        kappa_a=kappa_a,
        kappa_b=kappa_a,
        kind=kind,
    )
    return params, Drive(omega_p=0.0), 0.5 * epsilon * kappa_a


def preset_params(
    epsilon: float, kappa_b: float, kind: CavityKind = CavityKind.ONE_SIDED
) -> tuple[CavityParams, Drive, float]:
    """Threshold preset, nudged off an exceptional point when necessary."""
    params, drive, chi = threshold_preset(epsilon, kappa_b, kind)
    try:
        snr(params, drive, chi, 1.0)
    except ValueError:
        params, drive, chi = threshold_preset(epsilon, kappa_b * (1.0 + _EP_NUDGE), kind)
    return params, drive, chi


def preset_snr(
    epsilon: float, tau: float, kappa_b: float, kind: CavityKind = CavityKind.ONE_SIDED
) -> float:
    """SNR of the threshold preset, robust to isolated exceptional points."""
    try:
        params, drive, chi = threshold_preset(epsilon, kappa_b, kind)
        return snr(params, drive, chi, tau)
    except ValueError:
        params, drive, chi = threshold_preset(epsilon, kappa_b * (1.0 + _EP_NUDGE), kind)
        return snr(params, drive, chi, tau)


def _golden_max(f, lo: float, hi: float, best: tuple[float, float], tol: float = 1e-10):
    """Golden-section maximization on [lo, hi], tracking the best evaluation."""
    best_x, best_f = best
    u = hi - _GOLDEN * (hi - lo)
    v = lo + _GOLDEN * (hi - lo)
    fu, fv = f(u), f(v)
    while hi - lo > tol:
        if fu > fv:
            hi, v, fv = v, u, fu
            u = hi - _GOLDEN * (hi - lo)
            fu = f(u)
            if fu > best_f:
                best_x, best_f = u, fu
        else:
            lo, u, fu = u, v, fv
            v = lo + _GOLDEN * (hi - lo)
            fv = f(v)
            if fv > best_f:
                best_x, best_f = v, fv
    return best_x, best_f


def _scan_then_refine(f, grid: np.ndarray) -> tuple[float, float]:
    vals = [f(float(x)) for x in grid]
    i = int(np.argmax(vals))
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, len(grid) - 1)])
    best = (float(grid[i]), float(vals[i]))
    if hi <= lo:
        return best
    return _golden_max(f, lo, hi, best)


def optimize_kappa_b(
    epsilon: float,
    tau: float,
    bounds: tuple[float, float] = (1e-2, 1e4),
    kind: CavityKind = CavityKind.ONE_SIDED,
) -> tuple[float, float]:
    """Best auxiliary-mode decay rate at fixed threshold detunings.

    Log-spaced 200-point scan over ``bounds`` (augmented with the
    kappa_b = kappa_a and kappa_b = 10 kappa_a presets) followed by
    golden-section refinement in log space.  Returns (kappa_b, snr).
    """
    lo, hi = bounds
    if not 0.0 < lo < hi:
        raise ValueError("bounds must satisfy 0 < lo < hi")

    def value_log(lkb: float) -> float:
        return preset_snr(epsilon, tau, 10.0**lkb, kind)

    grid = np.linspace(math.log10(lo), math.log10(hi), 200)
    presets = [math.log10(p) for p in (1.0, 10.0) if lo <= p <= hi]
    grid = np.unique(np.concatenate([grid, presets]))
    best_log, best_val = _scan_then_refine(value_log, grid)
    return 10.0**best_log, best_val


def optimize_unconstrained(
    epsilon: float,
    tau: float,
    kind: CavityKind = CavityKind.ONE_SIDED,
    start: tuple[float, float, float] | None = None,
) -> tuple[dict, float]:
    """Coordinate-descent search over the detunings and log kappa_b.

    Three sweeps of golden-section line searches, seeded at the
    constrained optimum (or at an explicit ``start`` of raw detunings
    (Delta_a, Delta_b) and kappa_b).  kappa_a = 1 fixes the units.  The
    descent runs in (Delta_a, delta_b, log kappa_b): with the raw Delta_b
    as a coordinate the optimum lies on a narrow diagonal ridge
    Delta_b/kappa_b ~ const that coordinate moves cannot follow, while in
    the normalized detuning a kappa_b move keeps the ratio intact.
    Returns a record with the normalized detunings and kappa_b of the
    best point, plus its snr.
    """
    if start is None:
        kb0, _ = optimize_kappa_b(epsilon, tau, kind=kind)
        cap_a, small_db = preset_detunings(epsilon, kind)
    else:
        cap_a, cap_b, kb0 = start
        small_db = cap_b / kb0

    def value(point: list[float]) -> float:
        cap_a_, small_db_, lkb = point
        kb = 10.0**lkb
        params = CavityParams(
            omega_a=cap_a_, omega_b=small_db_ * kb, kappa_a=1.0, kappa_b=kb, kind=kind
        )
        try:
            return snr(params, Drive(omega_p=0.0), 0.5 * epsilon, tau)
        except ValueError:
            # Isolated exceptional point inside a line search: skip it.
            return -math.inf

    current = [cap_a, small_db, math.log10(kb0)]
    best_val = value(current)
    for _ in range(3):
        for idx in range(3):
            if idx == 2:
                lo, hi = -2.0, 4.0
            else:
                lo, hi = current[idx] - 1.5, current[idx] + 1.5

            def line(x: float, idx=idx) -> float:
                trial = list(current)
                trial[idx] = x
                return value(trial)

            grid = np.linspace(lo, hi, 41)
            x_best, v_best = _scan_then_refine(line, grid)
            if v_best >= best_val:
                current[idx] = x_best
                best_val = v_best
    kb = 10.0 ** current[2]
    record = {"delta_a": current[0], "delta_b": current[1], "kappa_b": kb}
    return record, best_val


def _point_alpha(epsilon: float, delta_a: float, delta_b: float, kind: CavityKind) -> float:
    result = contrast(NormalizedPoint(delta_a, delta_b, epsilon), kind)
    return homodyne_angle(result) if result.magnitude > 0.0 else 0.0


def _fixed_curve(epsilon, tau_grid, kappa_b, kind):
    values = np.array([preset_snr(epsilon, float(t), kappa_b, kind) for t in tau_grid])
    da, db = preset_detunings(epsilon, kind)
    record = {"kappa_b": kappa_b, "delta_a": da, "delta_b": db}
    return values, [dict(record) for _ in tau_grid]


def strategy_scenarios(
    epsilon_list,
    tau_grid,
    kind: CavityKind = CavityKind.ONE_SIDED,
) -> list[Scenario]:
    """Evaluate all four kappa_b strategies on a duration grid per epsilon."""
    tau_arr = np.asarray(tau_grid, dtype=float)
    scenarios: list[Scenario] = []
    for epsilon in epsilon_list:
        da, db = preset_detunings(epsilon, kind)
        for strategy in Strategy:
            if strategy is Strategy.FIXED_KAPPA_EQUAL:
                values, records = _fixed_curve(epsilon, tau_arr, 1.0, kind)
            elif strategy is Strategy.FIXED_KAPPA_TEN:
                values, records = _fixed_curve(epsilon, tau_arr, 10.0, kind)
            elif strategy is Strategy.OPTIMIZED_KAPPA_B:
                values = np.empty(tau_arr.shape)
                records = []
                for j, tau in enumerate(tau_arr):
                    kb, val = optimize_kappa_b(epsilon, float(tau), kind=kind)
                    values[j] = val
                    records.append({"kappa_b": kb, "delta_a": da, "delta_b": db})
            else:
                values = np.empty(tau_arr.shape)
                records = []
                for j, tau in enumerate(tau_arr):
                    record, val = optimize_unconstrained(epsilon, float(tau), kind=kind)
                    values[j] = val
                    records.append(record)
            last = records[-1] if records else {"delta_a": da, "delta_b": db}
            curve = SnrCurve(
                tau=tau_arr,
                value=values,
                alpha=_point_alpha(epsilon, last["delta_a"], last["delta_b"], kind),
                scenario=f"epsilon={epsilon:g} {strategy.value}",
            )
            scenarios.append(
                Scenario(
                    epsilon=epsilon,
                    tau_grid=tau_arr,
                    strategy=strategy,
                    result=curve,
                    optimal_params=tuple(records),
                )
            )
    return scenarios
