"""Shared draw helpers for randomized cross-checks.

All randomness is seeded; every test run sees the same scenarios.
"""

from __future__ import annotations

import math

import numpy as np

from twomode_readout.core import CavityKind, CavityParams, Drive, QubitShift
from twomode_readout.dynamics import transient_coefficients


def random_params(rng, kind=None, omega_span=3.0, kappa_lo=0.2, kappa_hi=5.0) -> CavityParams:
    """Moderate-scale random cavity parameters, alternating kind by draw."""
    if kind is None:
        kind = CavityKind.ONE_SIDED if rng.random() < 0.5 else CavityKind.TWO_SIDED
    return CavityParams(
        omega_a=float(rng.uniform(-omega_span, omega_span)),
        omega_b=float(rng.uniform(-omega_span, omega_span)),
        kappa_a=float(rng.uniform(kappa_lo, kappa_hi)),
        kappa_b=float(rng.uniform(kappa_lo, kappa_hi)),
        kind=kind,
    )


def draw_transient_scenario(rng, max_steps=1_500_000, steps_per_efold=20.0):
    """A random driven-cavity scenario with a bounded RK4 step budget.

    Covers both cavity kinds and kappa_b/kappa_a across [0.1, 100]; draws
    whose slow mode would make the fixed-step integration exceed
    ``max_steps`` are redrawn (they correspond to nearly dark modes).
    Returns (params, drive, shift, t_end, steps).
    """
    while True:
        kind = CavityKind.ONE_SIDED if rng.random() < 0.5 else CavityKind.TWO_SIDED
        kappa_b = float(10.0 ** rng.uniform(-1.0, 2.0))
        params = CavityParams(
            omega_a=float(rng.uniform(-2.0, 2.0)),
            omega_b=float(rng.uniform(-2.0, 2.0)),
            kappa_a=1.0,
            kappa_b=kappa_b,
            kind=kind,
        )
        drive = Drive(
            omega_p=float(rng.uniform(-1.0, 1.0)),
            alpha_in=complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5)),
        )
        shift = QubitShift(chi=float(rng.uniform(0.0, 0.3)), state=int(rng.integers(0, 2)))
        try:
            sol = transient_coefficients(params, drive, shift)
        except ValueError:
            continue
        min_re = min(abs(lam.real) for lam in sol.eigenvalues)
        lam_max = max(abs(lam) for lam in sol.eigenvalues)
        if min_re < 1e-4:
            continue
        t_end = 10.0 / min_re
        steps = max(1000, math.ceil(steps_per_efold * t_end * lam_max))
        if steps > max_steps:
            continue
        return params, drive, shift, t_end, steps


def trajectory_rel_err(analytic: np.ndarray, reference: np.ndarray) -> float:
    """Sup-norm error normalized to the trajectory scale."""
    scale = max(float(np.max(np.abs(reference))), 1e-30)
    return float(np.max(np.abs(analytic - reference))) / scale
