"""Two-mode cavity qubit readout: scattering contrast, transient SNR, optima.

A small auxiliary resonator mode, spectrally close to the mode that
carries the dispersive qubit shift, lets the readout reach maximal
contrast at shift-to-linewidth ratios far below one.  This package
evaluates the stationary reflection/transmission coefficients, the
qubit-state contrast and its closed-form optima, the transient field
dynamics and finite-duration homodyne SNR, and numerical optimization of
the auxiliary-mode decay rate, all cross-checkable against built-in
brute-force oracles.
"""

from .core import (
    CavityKind,
    CavityParams,
    Drive,
    NormalizedPoint,
    QubitShift,
    from_normalized,
    normalize,
    shifted_delta_a,
)
from .dynamics import (
    EigenSystem,
    SnrCurve,
    SystemMatrix,
    TransientSolution,
    eigensystem,
    homodyne_angle,
    intracavity_fields,
    output_field_ratio,
    quadrature_expectation,
    snr,
    snr_curve,
    system_matrix,
    transient_coefficients,
)
from .optimize import (
    Scenario,
    Strategy,
    optimize_kappa_b,
    optimize_unconstrained,
    strategy_scenarios,
)
from .oracle import OdeTrajectory, direct_solve, grid_maximize, ode_integrate, snr_quadrature
from .scattering import (
    ContrastResult,
    OptimaReport,
    Regime,
    contrast,
    delta_b_threshold,
    epsilon_threshold,
    optimal_detunings,
    optimal_frequencies,
    s11,
    s21,
)

__version__ = "0.1.0"

__all__ = [
    "CavityKind",
    "CavityParams",
    "Drive",
    "QubitShift",
    "NormalizedPoint",
    "normalize",
    "shifted_delta_a",
    "from_normalized",
    "ContrastResult",
    "OptimaReport",
    "Regime",
    "s11",
    "s21",
    "contrast",
    "epsilon_threshold",
    "optimal_detunings",
    "delta_b_threshold",
    "optimal_frequencies",
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
    "OdeTrajectory",
    "direct_solve",
    "ode_integrate",
    "grid_maximize",
    "snr_quadrature",
    "Strategy",
    "Scenario",
    "optimize_kappa_b",
    "optimize_unconstrained",
    "strategy_scenarios",
    "__version__",
]
