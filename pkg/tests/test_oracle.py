import math

import numpy as np
import pytest

from conftest import random_params
from twomode_readout.core import CavityKind, CavityParams, Drive, QubitShift
from twomode_readout.dynamics import output_field_ratio, transient_coefficients
from twomode_readout.oracle import direct_solve, grid_maximize, ode_integrate, snr_quadrature
from twomode_readout.scattering import (
    contrast,
    delta_b_threshold,
    epsilon_threshold,
    optimal_detunings,
    primary_detuning,
    s11,
    s11_single_mode,
    s21,
)
from twomode_readout.core import NormalizedPoint

ONE = CavityKind.ONE_SIDED
TWO = CavityKind.TWO_SIDED


class TestDirectSolve:
    def test_resonant_drive_full_reflection(self):
        params = CavityParams(1.0, 5.0, 1.0, 2.0, ONE)
        _, _, s = direct_solve(params, 1.0)  # delta_a = 0
        assert s == pytest.approx(1.0 + 0.0j, abs=1e-12)

    def test_matches_formula_on_random_points(self):
        rng = np.random.default_rng(11)
        for _ in range(2000):
            params = random_params(rng, omega_span=5.0, kappa_lo=0.1, kappa_hi=10.0)
            omega = float(rng.uniform(-5, 5))
            _, _, s = direct_solve(params, omega)
            da = (params.omega_a - omega) / params.kappa_a
            db = (params.omega_b - omega) / params.kappa_b
            ref = s11(da, db) if params.kind is ONE else s21(da, db)
            assert abs(s - ref) < 1e-12

    def test_single_mode_limit(self):
        params = CavityParams(0.7, 1e6, 1.0, 1.0, ONE)
        _, _, s = direct_solve(params, 0.0)
        assert abs(s - s11_single_mode(0.7)) < 1e-5


class TestOdeIntegrate:
    def test_zero_drive_gives_zero_trajectory(self):
        params = CavityParams(0.4, -0.3, 1.0, 2.0, ONE)
        traj = ode_integrate(params, Drive(0.2, alpha_in=0.0), QubitShift(0.1), 5.0, 1000)
        assert np.all(traj.a_vals == 0.0)
        assert np.all(traj.b_vals == 0.0)
        assert np.all(traj.out_vals == 0.0)

    def test_trajectory_reaches_stationary_reflection(self):
        params = CavityParams(0.3, -0.4, 1.0, 2.0, ONE)
        drive = Drive(0.2, alpha_in=1.0 + 0.5j)
        shift = QubitShift(0.05, 1)
        sol = transient_coefficients(params, drive, shift)
        t_end = 20.0 / min(abs(lam.real) for lam in sol.eigenvalues)
        steps = max(1000, math.ceil(20.0 * t_end * max(abs(lam) for lam in sol.eigenvalues)))
        traj = ode_integrate(params, drive, shift, t_end, steps)
        c_in = complex(drive.alpha_in) * np.exp(-1.0j * drive.omega_p * traj.times[-1])
        pulled_da = (params.omega_a + shift.frequency_shift - drive.omega_p) / params.kappa_a
        db = (params.omega_b - drive.omega_p) / params.kappa_b
        assert abs(traj.out_vals[-1] / c_in - s11(pulled_da, db)) < 1e-6

    def test_initial_conditions_and_shapes(self):
        params = CavityParams(0.3, -0.4, 1.0, 2.0, TWO)
        traj = ode_integrate(params, Drive(0.0), QubitShift(0.0), 5.0, 1000)
        assert traj.a_vals[0] == 0.0 and traj.b_vals[0] == 0.0
        assert traj.out_vals[0] == 0.0  # two-sided: nothing transmitted yet
        assert traj.times.shape == traj.a_vals.shape == (1001,)
        assert np.all(np.diff(traj.times) > 0)

    def test_validation(self):
        params = CavityParams(0.0, 1.0, 1.0, 1.0, ONE)
        with pytest.raises(ValueError):
            ode_integrate(params, Drive(0.0), QubitShift(0.0), -1.0, 2000)
        with pytest.raises(ValueError):
            ode_integrate(params, Drive(0.0), QubitShift(0.0), 1.0, 999)

    def test_fourth_order_convergence(self):
        params = CavityParams(0.3, -0.5, 1.0, 2.0, ONE)
        drive = Drive(0.4)
        shift = QubitShift(0.1, 0)
        sol = transient_coefficients(params, drive, shift)
        t_end = 5.0
        reference = output_field_ratio(sol, t_end) * complex(drive.alpha_in) * np.exp(
            -1.0j * drive.omega_p * t_end
        )
        errors = []
        for steps in (2000, 4000):
            traj = ode_integrate(params, drive, shift, t_end, steps)
            errors.append(abs(traj.out_vals[-1] - reference))
        assert errors[0] / errors[1] == pytest.approx(16.0, rel=0.2)


class TestGridMaximize:
    def test_quadratic(self):
        arg, val = grid_maximize(lambda x: -((x - 0.3) ** 2), -1.0, 1.0, 2000)
        assert arg == pytest.approx(0.3, abs=1e-9)
        assert val == pytest.approx(0.0, abs=1e-15)

    def test_deterministic_and_rescale_invariant(self):
        f = lambda x: math.exp(-((x - 0.123) ** 2))
        first = grid_maximize(f, -2.0, 2.0, 1500)
        second = grid_maximize(f, -2.0, 2.0, 1500)
        assert first == second
        rescaled, _ = grid_maximize(lambda x: 5.0 * f(x) + 1.0, -2.0, 2.0, 1500)
        assert rescaled == pytest.approx(first[0], abs=1e-9)

    def test_validation(self):
        with pytest.raises(ValueError):
            grid_maximize(lambda x: x, 0.0, 1.0, 999)
        with pytest.raises(ValueError):
            grid_maximize(lambda x: x, 1.0, 0.0, 2000)

    def test_contrast_peak_at_threshold(self):
        eps = 0.01
        db = delta_b_threshold(eps, ONE)
        da1 = primary_detuning(db, ONE)
        f = lambda da: contrast(NormalizedPoint(da, db, eps), ONE).magnitude
        arg, val = grid_maximize(f, -1.0, 1.0, 4001)
        assert arg == pytest.approx(da1, abs=1e-6)
        assert val == pytest.approx(2.0, abs=1e-9)

    def test_double_regime_found_in_half_intervals(self):
        db = 0.4
        eps = 2.0 * epsilon_threshold(db, ONE)
        report = optimal_detunings(db, eps, ONE)
        f = lambda da: contrast(NormalizedPoint(da, db, eps), ONE).magnitude
        center = report.minimum_at
        width = report.maxima[1] - center
        lo_arg, _ = grid_maximize(f, center - 4 * width, center, 2000)
        hi_arg, _ = grid_maximize(f, center, center + 4 * width, 2000)
        assert lo_arg == pytest.approx(report.maxima[0], abs=1e-6)
        assert hi_arg == pytest.approx(report.maxima[1], abs=1e-6)


class TestSnrQuadrature:
    def test_zero_shift(self):
        params = CavityParams(0.1, 0.6, 1.0, 1.0, ONE)
        assert snr_quadrature(params, Drive(0.0), 0.0, 10.0) == 0.0

    def test_steps_validation(self):
        params = CavityParams(0.1, 0.6, 1.0, 1.0, ONE)
        with pytest.raises(ValueError):
            snr_quadrature(params, Drive(0.0), 0.1, 10.0, steps=5000)
        with pytest.raises(ValueError):
            snr_quadrature(params, Drive(0.0), 0.1, -1.0)

    def test_single_mode_strong_shift_asymptote(self):
        # delta_b = 1e3 realized with a narrow auxiliary mode so that
        # max|lambda| stays small and the quadrature grid stays affordable.
        params = CavityParams(0.0, 10.0, 1.0, 0.01, ONE)
        value = snr_quadrature(params, Drive(0.0), 0.5, 20_000.0)
        assert value == pytest.approx(2.0, abs=1e-3)
