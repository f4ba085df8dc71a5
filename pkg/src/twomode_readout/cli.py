"""Command-line front end: sweeps, SNR scans, optimization runs, verification.

Subcommands
-----------
scatter      contrast |Delta S| swept over delta_a for one or more delta_b
thresholds   maximal-contrast boundary delta_b_th(epsilon) for both kinds
snr          normalized SNR versus measurement duration for one strategy
optimize     all four kappa_b strategies per epsilon, with optimal parameters
frequencies  optimal mode splitting and pump offset versus epsilon

All commands share ``--output`` (default stdout), ``--format csv|json``,
``--config`` (JSON file, flags take precedence), ``--verify`` (cross-check
rows against the brute-force oracles; failures exit 3) and ``--plot``
(render a figure of the swept data next to the delimited output).
Frequencies and rates are in units of kappa_a unless stated otherwise.
Exit codes: 0 success, 2 invalid configuration, 3 verification failure.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys

import numpy as np

from . import __version__, plots
from .core import CavityKind, CavityParams, Drive, NormalizedPoint
from .dynamics import snr
from .oracle import direct_solve, grid_maximize, snr_quadrature
from .optimize import (
    Strategy,
    optimize_kappa_b,
    optimize_unconstrained,
    preset_params,
    single_mode_preset,
    strategy_scenarios,
)
from .scattering import (
    contrast,
    delta_b_threshold,
    optimal_frequencies,
    primary_detuning,
    s11,
    s21,
    theoretical_max,
)

KINDS = {kind.value: kind for kind in CavityKind}
STRATEGIES = [s.value for s in Strategy] + ["single_mode"]


class ConfigError(Exception):
    """Invalid command configuration; maps to exit code 2."""


# ---------------------------------------------------------------------------
# configuration plumbing


def _as_float(cfg, key):
    try:
        return float(cfg[key])
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {cfg[key]!r}")


def _as_int(cfg, key):
    value = cfg[key]
    if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {value!r}")


def _as_float_list(cfg, key):
    value = cfg[key]
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"{key} must be a list of numbers")
    try:
        return [float(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a list of numbers")


def _as_kind(cfg):
    value = cfg["kind"]
    if value not in KINDS:
        raise ConfigError(f"kind must be one of {sorted(KINDS)}, got {value!r}")
    return KINDS[value]


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def _merge_config(defaults: dict, args) -> dict:
    """Layer defaults, config-file values, and explicit flags, in that order."""
    cfg = dict(defaults)
    file_cfg = _load_config_file(args.config) if args.config else {}
    unknown = set(file_cfg) - set(defaults) - {"output", "format"}
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    cfg.update(file_cfg)
    for key in defaults:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            cfg[key] = flag_value
    cfg["output"] = args.output or file_cfg.get("output") or "-"
    cfg["format"] = args.format or file_cfg.get("format") or "csv"
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg['format']!r}")
    return cfg


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return f"{float(value):.9g}"


def _write_output(cfg: dict, command: str, header: list[str], rows: list[list]) -> None:
    if cfg["format"] == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        config_echo = {k: v for k, v in cfg.items() if k not in ("output", "format")}
        payload = {
            "meta": {"command": command, "version": __version__, "config": config_echo},
            "rows": [dict(zip(header, row)) for row in rows],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg["output"] == "-":
        sys.stdout.write(text)
    else:
        with open(cfg["output"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _run_verifiers(verifiers) -> int:
    failures = [msg for check in verifiers for msg in [check()] if msg]
    if failures:
        for msg in failures:
            print(f"verify FAIL: {msg}", file=sys.stderr)
        return 3
    print(f"verify OK ({len(verifiers)} checks)", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# scatter


SCATTER_DEFAULTS = {
    "kind": "one_sided",
    "epsilon": 0.1,
    "delta_b": None,
    "delta_b_rel": None,
    "delta_a_min": -1.0,
    "delta_a_max": 1.0,
    "delta_a_points": 801,
}


def _resolve_delta_b(cfg, kind) -> list[float]:
    explicit = cfg["delta_b"]
    relative = cfg["delta_b_rel"]
    if explicit is None and relative is None:
        relative, explicit = [0.5, 1.0, 2.0], [1e3]
    values: list[float] = []
    if relative:
        try:
            db_th = delta_b_threshold(_as_float(cfg, "epsilon"), kind)
        except ValueError as exc:
            raise ConfigError(f"delta_b_rel unusable: {exc}; pass explicit delta_b")
        values.extend(float(m) * db_th for m in relative)
    if explicit:
        values.extend(float(v) for v in explicit)
    return values


def _build_scatter(cfg):
    kind = _as_kind(cfg)
    epsilon = _as_float(cfg, "epsilon")
    if epsilon < 0:
        raise ConfigError("epsilon must be non-negative")
    points = _as_int(cfg, "delta_a_points")
    if points < 0:
        raise ConfigError("delta_a_points must be non-negative")
    lo, hi = _as_float(cfg, "delta_a_min"), _as_float(cfg, "delta_a_max")
    if points >= 2 and hi < lo:
        raise ConfigError("delta_a_max must not be below delta_a_min")
    delta_bs = _resolve_delta_b(cfg, kind)
    scatter_fn = s11 if kind is CavityKind.ONE_SIDED else s21

    header = [
        "delta_a", "delta_b", "epsilon", "kind",
        "abs_delta_s", "arg_delta_s", "re_s0", "im_s0", "re_s1", "im_s1",
    ]
    rows = []
    for db in delta_bs:
        for da in np.linspace(lo, hi, points):
            da = float(da)
            s0 = scatter_fn(da + 0.5 * epsilon, db)
            s1 = scatter_fn(da - 0.5 * epsilon, db)
            ds = s0 - s1
            rows.append(
                [da, db, epsilon, kind.value,
                 abs(ds), cmath.phase(ds), s0.real, s0.imag, s1.real, s1.imag]
            )

    def check_row(row):
        def check():
            da, db = row[0], row[1]
            for state, (re_ref, im_ref) in ((0, row[6:8]), (1, row[8:10])):
                shift = 0.5 * epsilon if state == 0 else -0.5 * epsilon
                params = CavityParams((da + shift), db, 1.0, 1.0, kind)
                _, _, s = direct_solve(params, 0.0)
                if abs(s - complex(re_ref, im_ref)) > 1e-9:
                    return f"scatter row delta_a={da:g} delta_b={db:g} state {state} disagrees with direct solve"
            return None

        return check

    verifiers = [check_row(row) for row in rows]
    return header, rows, verifiers


# ---------------------------------------------------------------------------
# thresholds


THRESHOLDS_DEFAULTS = {"epsilon_min": 0.0, "epsilon_max": 1.2, "epsilon_points": 25}


def _build_thresholds(cfg):
    points = _as_int(cfg, "epsilon_points")
    if points < 0:
        raise ConfigError("epsilon_points must be non-negative")
    lo, hi = _as_float(cfg, "epsilon_min"), _as_float(cfg, "epsilon_max")
    if lo < 0:
        raise ConfigError("epsilon_min must be non-negative")
    header = ["epsilon", "kind", "delta_b_th"]
    rows = []
    verifiers = []
    for eps in np.linspace(lo, hi, points):
        eps = float(eps)
        for kind in CavityKind:
            try:
                th = delta_b_threshold(eps, kind)
            except ValueError:
                rows.append([eps, kind.value, "undefined"])
                continue
            rows.append([eps, kind.value, th])
            if eps > 1e-6:
                verifiers.append(_threshold_check(eps, th, kind))
    return header, rows, verifiers


def _threshold_check(eps, th, kind):
    def check():
        db = th * (1.0 - 1e-6)
        da1 = primary_detuning(db, kind)
        point = lambda da: contrast(NormalizedPoint(da, db, eps), kind).magnitude
        _, peak = grid_maximize(point, da1 - max(eps, 0.05), da1 + max(eps, 0.05), 2001)
        if abs(peak - theoretical_max(kind)) > 1e-4:
            return (
                f"thresholds eps={eps:g} {kind.value}: grid peak {peak:.6f} "
                f"misses the theoretical maximum"
            )
        return None

    return check


# ---------------------------------------------------------------------------
# snr


SNR_DEFAULTS = {
    "kind": "one_sided",
    "epsilon": 0.1,
    "strategy": "kappa_equal",
    "tau_min": 1.0,
    "tau_max": 1e3,
    "tau_points": 13,
}


def _snr_row_params(strategy, epsilon, tau, kind):
    """Scenario parameters for one (strategy, tau) row: (params, drive, chi)."""
    if strategy == "single_mode":
        return single_mode_preset(epsilon, kind)
    if strategy == Strategy.FIXED_KAPPA_EQUAL.value:
        return preset_params(epsilon, 1.0, kind)
    if strategy == Strategy.FIXED_KAPPA_TEN.value:
        return preset_params(epsilon, 10.0, kind)
    if strategy == Strategy.OPTIMIZED_KAPPA_B.value:
        kb, _ = optimize_kappa_b(epsilon, tau, kind=kind)
        return preset_params(epsilon, kb, kind)
    record, _ = optimize_unconstrained(epsilon, tau, kind=kind)
    kb = record["kappa_b"]
    params = CavityParams(record["delta_a"], record["delta_b"] * kb, 1.0, kb, kind)
    return params, Drive(omega_p=0.0), 0.5 * epsilon


def _build_snr(cfg):
    kind = _as_kind(cfg)
    epsilon = _as_float(cfg, "epsilon")
    if epsilon < 0:
        raise ConfigError("epsilon must be non-negative")
    strategy = cfg["strategy"]
    if strategy not in STRATEGIES:
        raise ConfigError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    points = _as_int(cfg, "tau_points")
    if points < 0:
        raise ConfigError("tau_points must be non-negative")
    lo, hi = _as_float(cfg, "tau_min"), _as_float(cfg, "tau_max")
    if lo <= 0 or hi < lo:
        raise ConfigError("tau grid requires 0 < tau_min <= tau_max")

    header = ["tau_kappa_a", "strategy", "snr_normalized", "kappa_b_used"]
    rows = []
    verifiers = []
    for tau in np.geomspace(lo, hi, points):
        tau = float(tau)
        params, drive, chi = _snr_row_params(strategy, epsilon, tau, kind)
        value = snr(params, drive, chi, tau)
        rows.append([tau, strategy, value, params.kappa_b])
        verifiers.append(_snr_check(params, drive, chi, tau, value))
    return header, rows, verifiers


def _snr_check(params, drive, chi, tau, value):
    def check():
        reference = snr_quadrature(params, drive, chi, tau)
        if abs(reference - value) > 1e-5:
            return (
                f"snr row tau={tau:g}: closed form {value:.8f} vs "
                f"quadrature {reference:.8f}"
            )
        return None

    return check


# ---------------------------------------------------------------------------
# optimize


OPTIMIZE_DEFAULTS = {
    "kind": "one_sided",
    "epsilon": [0.01, 0.1, 0.5, 1.0],
    "tau_min": 1.0,
    "tau_max": 1e4,
    "tau_points": 9,
}


def _build_optimize(cfg):
    kind = _as_kind(cfg)
    eps_list = _as_float_list(cfg, "epsilon")
    if any(e <= 0 for e in eps_list):
        raise ConfigError("epsilon values must be positive")
    points = _as_int(cfg, "tau_points")
    if points < 0:
        raise ConfigError("tau_points must be non-negative")
    lo, hi = _as_float(cfg, "tau_min"), _as_float(cfg, "tau_max")
    if lo <= 0 or hi < lo:
        raise ConfigError("tau grid requires 0 < tau_min <= tau_max")

    taus = np.geomspace(lo, hi, points)
    scenarios = strategy_scenarios(eps_list, taus, kind)
    header = ["epsilon", "tau_kappa_a", "strategy", "snr_normalized", "kappa_b", "delta_a", "delta_b"]
    rows = []
    values = {}
    for sc in scenarios:
        for tau, value, record in zip(sc.tau_grid, sc.result.value, sc.optimal_params):
            rows.append(
                [sc.epsilon, float(tau), sc.strategy.value, float(value),
                 record["kappa_b"], record["delta_a"], record["delta_b"]]
            )
            values[(sc.epsilon, float(tau), sc.strategy)] = float(value)

    def dominance_check(eps, tau):
        def check():
            equal = values[(eps, tau, Strategy.FIXED_KAPPA_EQUAL)]
            optimized = values[(eps, tau, Strategy.OPTIMIZED_KAPPA_B)]
            unconstrained = values[(eps, tau, Strategy.UNCONSTRAINED)]
            if optimized < equal - 1e-6:
                return f"optimize eps={eps:g} tau={tau:g}: optimized kappa_b below the kappa_equal preset"
            if unconstrained < optimized - 1e-6:
                return f"optimize eps={eps:g} tau={tau:g}: unconstrained search below the constrained one"
            return None

        return check

    verifiers = [dominance_check(eps, float(tau)) for eps in eps_list for tau in taus]
    return header, rows, verifiers


# ---------------------------------------------------------------------------
# frequencies


FREQUENCIES_DEFAULTS = {
    "epsilon_min": 0.02,
    "epsilon_max": 0.98,
    "epsilon_points": 25,
    "kappa_a": 1.0,
    "kappa_b": 1.0,
}


def _build_frequencies(cfg):
    points = _as_int(cfg, "epsilon_points")
    if points < 0:
        raise ConfigError("epsilon_points must be non-negative")
    lo, hi = _as_float(cfg, "epsilon_min"), _as_float(cfg, "epsilon_max")
    kappa_a, kappa_b = _as_float(cfg, "kappa_a"), _as_float(cfg, "kappa_b")
    if kappa_a <= 0 or kappa_b <= 0:
        raise ConfigError("kappa_a and kappa_b must be positive")

    header = ["epsilon", "mode_splitting", "pump_offset"]
    rows = []
    verifiers = []
    for eps in np.linspace(lo, hi, points):
        eps = float(eps)
        try:
            splitting, offset = optimal_frequencies(eps, kappa_a, kappa_b)
        except ValueError:
            rows.append([eps, "undefined", "undefined"])
            continue
        rows.append([eps, splitting, offset])
        verifiers.append(_frequencies_check(eps, splitting, offset, kappa_a, kappa_b))
    return header, rows, verifiers


def _frequencies_check(eps, splitting, offset, kappa_a, kappa_b):
    def check():
        omega_a = 0.0
        omega_b = omega_a - splitting
        omega_p = 0.5 * (omega_a + omega_b) + offset
        delta_a = (omega_a - omega_p) / kappa_a
        delta_b = (omega_b - omega_p) / kappa_b
        db_th = delta_b_threshold(eps, CavityKind.ONE_SIDED)
        da1 = primary_detuning(db_th, CavityKind.ONE_SIDED)
        if abs(delta_a - da1) > 1e-12 or abs(delta_b - db_th) > 1e-12:
            return f"frequencies eps={eps:g}: round trip misses the threshold detunings"
        return None

    return check


# ---------------------------------------------------------------------------
# entry point


_BUILDERS = {
    "scatter": (_build_scatter, SCATTER_DEFAULTS),
    "thresholds": (_build_thresholds, THRESHOLDS_DEFAULTS),
    "snr": (_build_snr, SNR_DEFAULTS),
    "optimize": (_build_optimize, OPTIMIZE_DEFAULTS),
    "frequencies": (_build_frequencies, FREQUENCIES_DEFAULTS),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="output path, '-' for stdout (default)")
    common.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    common.add_argument("--config", help="JSON config file; flags take precedence")
    common.add_argument("--verify", action="store_true", help="cross-check rows against the oracles")
    common.add_argument("--plot", help="render a figure of the swept data to this path")

    parser = argparse.ArgumentParser(
        prog="twomode-readout",
        description="Two-mode cavity readout: contrast sweeps, SNR curves, optimization.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scatter", parents=[common], help="contrast versus delta_a")
    p.add_argument("--kind", choices=sorted(KINDS), help="cavity kind (default one_sided)")
    p.add_argument("--epsilon", type=float, help="shift-to-linewidth ratio (default 0.1)")
    p.add_argument(
        "--delta-b", dest="delta_b", type=float, nargs="+",
        help="auxiliary detunings (default: 0.5,1,2 x threshold plus 1e3)",
    )
    p.add_argument(
        "--delta-b-rel", dest="delta_b_rel", type=float, nargs="+",
        help="delta_b as multiples of the threshold detuning",
    )
    p.add_argument("--delta-a-min", dest="delta_a_min", type=float, help="sweep start (default -1)")
    p.add_argument("--delta-a-max", dest="delta_a_max", type=float, help="sweep end (default 1)")
    p.add_argument("--delta-a-points", dest="delta_a_points", type=int, help="grid size (default 801)")

    p = sub.add_parser("thresholds", parents=[common], help="maximal-contrast boundary")
    p.add_argument("--epsilon-min", dest="epsilon_min", type=float, help="grid start (default 0)")
    p.add_argument("--epsilon-max", dest="epsilon_max", type=float, help="grid end (default 1.2)")
    p.add_argument("--epsilon-points", dest="epsilon_points", type=int, help="grid size (default 25)")

    p = sub.add_parser("snr", parents=[common], help="SNR versus measurement duration")
    p.add_argument("--kind", choices=sorted(KINDS), help="cavity kind (default one_sided)")
    p.add_argument("--epsilon", type=float, help="shift-to-linewidth ratio (default 0.1)")
    p.add_argument("--strategy", choices=STRATEGIES, help="kappa_b strategy (default kappa_equal)")
    p.add_argument("--tau-min", dest="tau_min", type=float, help="shortest duration (default 1)")
    p.add_argument("--tau-max", dest="tau_max", type=float, help="longest duration (default 1e3)")
    p.add_argument("--tau-points", dest="tau_points", type=int, help="log-grid size (default 13)")

    p = sub.add_parser("optimize", parents=[common], help="strategy comparison per epsilon")
    p.add_argument("--kind", choices=sorted(KINDS), help="cavity kind (default one_sided)")
    p.add_argument(
        "--epsilon", type=float, nargs="+",
        help="shift ratios (default 0.01 0.1 0.5 1.0)",
    )
    p.add_argument("--tau-min", dest="tau_min", type=float, help="shortest duration (default 1)")
    p.add_argument("--tau-max", dest="tau_max", type=float, help="longest duration (default 1e4)")
    p.add_argument("--tau-points", dest="tau_points", type=int, help="log-grid size (default 9)")

    p = sub.add_parser("frequencies", parents=[common], help="optimal frequency placement")
    p.add_argument("--epsilon-min", dest="epsilon_min", type=float, help="grid start (default 0.02)")
    p.add_argument("--epsilon-max", dest="epsilon_max", type=float, help="grid end (default 0.98)")
    p.add_argument("--epsilon-points", dest="epsilon_points", type=int, help="grid size (default 25)")
    p.add_argument("--kappa-a", dest="kappa_a", type=float, help="mode-a decay rate (default 1)")
    p.add_argument("--kappa-b", dest="kappa_b", type=float, help="mode-b decay rate (default 1)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    builder, defaults = _BUILDERS[args.command]
    try:
        cfg = _merge_config(defaults, args)
        header, rows, verifiers = builder(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_output(cfg, args.command, header, rows)
    if args.plot:
        plots.render(args.command, [dict(zip(header, row)) for row in rows], args.plot)
    if args.verify:
        return _run_verifiers(verifiers)
    return 0
