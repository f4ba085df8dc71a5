import csv
import json

import pytest

from twomode_readout import __version__
from twomode_readout.cli import _run_verifiers, main
from twomode_readout.scattering import (
    delta_b_threshold,
    primary_detuning,
    s11_single_mode,
)


def run_cli(args):
    return main(list(args))


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


class TestScatter:
    def test_header_and_determinism(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["scatter", "--epsilon", "0.1", "--delta-b", "0.5", "1000",
                "--delta-a-points", "101"]
        assert run_cli(args + ["--output", str(out1)]) == 0
        assert run_cli(args + ["--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        first_line = out1.read_text().splitlines()[0]
        assert first_line == (
            "delta_a,delta_b,epsilon,kind,abs_delta_s,arg_delta_s,"
            "re_s0,im_s0,re_s1,im_s1"
        )

    def test_peak_reaches_maximum_at_threshold(self, tmp_path):
        eps = 0.01
        da1 = primary_detuning(delta_b_threshold(eps, __import__("twomode_readout").CavityKind.ONE_SIDED),
                               __import__("twomode_readout").CavityKind.ONE_SIDED)
        out = tmp_path / "peak.csv"
        assert run_cli([
            "scatter", "--epsilon", str(eps), "--delta-b-rel", "1.0",
            "--delta-a-min", str(da1 - 0.02), "--delta-a-max", str(da1 + 0.02),
            "--delta-a-points", "101", "--output", str(out),
        ]) == 0
        peak = max(float(row["abs_delta_s"]) for row in read_csv(out))
        assert abs(peak - 2.0) < 1e-6

    def test_far_detuned_matches_single_mode(self, tmp_path):
        # The residual two-mode correction scales like 1/delta_b, so the
        # 1e-5 match needs delta_b = 1e6 (at 1e3 it is ~5e-5).
        eps = 0.9
        out = tmp_path / "sm.csv"
        assert run_cli([
            "scatter", "--epsilon", str(eps), "--delta-b", "1e6",
            "--delta-a-min", "-2", "--delta-a-max", "2",
            "--delta-a-points", "201", "--output", str(out),
        ]) == 0
        for row in read_csv(out):
            da = float(row["delta_a"])
            expected = abs(s11_single_mode(da + eps / 2) - s11_single_mode(da - eps / 2))
            assert abs(float(row["abs_delta_s"]) - expected) < 1e-5

    def test_empty_sweep(self, capsys):
        assert run_cli(["scatter", "--delta-a-points", "0", "--delta-b", "1"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 1 and lines[0].startswith("delta_a,")

    def test_verify_passes(self, tmp_path):
        out = tmp_path / "v.csv"
        assert run_cli([
            "scatter", "--delta-b", "0.5", "--delta-a-points", "25",
            "--output", str(out), "--verify",
        ]) == 0

    def test_plot_written(self, tmp_path):
        out, fig = tmp_path / "p.csv", tmp_path / "p.png"
        assert run_cli([
            "scatter", "--delta-b", "0.5", "--delta-a-points", "25",
            "--output", str(out), "--plot", str(fig),
        ]) == 0
        assert fig.stat().st_size > 0

    def test_rel_delta_b_outside_domain_is_config_error(self):
        assert run_cli(["scatter", "--epsilon", "1.5"]) == 2


class TestConfigHandling:
    def test_config_file_and_flag_precedence(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"epsilon": 0.2, "delta_a_points": 11, "delta_b": [0.3]}))
        out = tmp_path / "out.csv"
        assert run_cli([
            "scatter", "--config", str(cfg), "--epsilon", "0.4",
            "--output", str(out),
        ]) == 0
        rows = read_csv(out)
        assert len(rows) == 11  # from config
        assert float(rows[0]["epsilon"]) == 0.4  # flag wins

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"delta_a_pointz": 5}))
        assert run_cli(["scatter", "--config", str(cfg)]) == 2

    def test_bad_json_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json")
        assert run_cli(["scatter", "--config", str(cfg)]) == 2

    def test_config_output_and_format(self, tmp_path):
        out = tmp_path / "rows.json"
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"output": str(out), "format": "json",
                                   "delta_b": [0.4], "delta_a_points": 5}))
        assert run_cli(["scatter", "--config", str(cfg)]) == 0
        payload = json.loads(out.read_text())
        assert payload["meta"]["command"] == "scatter"
        assert payload["meta"]["version"] == __version__
        assert payload["meta"]["config"]["delta_a_points"] == 5
        assert len(payload["rows"]) == 5
        assert set(payload["rows"][0]) == {
            "delta_a", "delta_b", "epsilon", "kind", "abs_delta_s",
            "arg_delta_s", "re_s0", "im_s0", "re_s1", "im_s1",
        }

    def test_verifier_failure_exit_code(self, capsys):
        assert _run_verifiers([lambda: None, lambda: "synthetic failure"]) == 3
        assert "synthetic failure" in capsys.readouterr().err


class TestThresholds:
    def test_rows_and_undefined_marking(self, tmp_path):
        out = tmp_path / "th.csv"
        assert run_cli([
            "thresholds", "--epsilon-min", "0.5", "--epsilon-max", "1.5",
            "--epsilon-points", "3", "--output", str(out),
        ]) == 0
        rows = read_csv(out)
        assert len(rows) == 6  # 3 epsilons x 2 kinds
        one_sided = {float(r["epsilon"]): r["delta_b_th"] for r in rows if r["kind"] == "one_sided"}
        two_sided = {float(r["epsilon"]): r["delta_b_th"] for r in rows if r["kind"] == "two_sided"}
        assert one_sided[1.0] == "undefined"
        assert one_sided[1.5] == "undefined"
        assert float(one_sided[0.5]) == pytest.approx(0.5)
        assert float(two_sided[1.0]) == pytest.approx(1.0)

    def test_verify(self, tmp_path):
        out = tmp_path / "th.csv"
        assert run_cli([
            "thresholds", "--epsilon-points", "5", "--output", str(out), "--verify",
        ]) == 0


class TestSnrCommand:
    def test_rows_and_determinism(self, tmp_path):
        out1, out2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
        args = ["snr", "--epsilon", "0.1", "--tau-points", "5", "--tau-max", "100"]
        assert run_cli(args + ["--output", str(out1)]) == 0
        assert run_cli(args + ["--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        rows = read_csv(out1)
        assert [r["strategy"] for r in rows] == ["kappa_equal"] * 5
        assert all(float(r["kappa_b_used"]) == 1.0 for r in rows)

    def test_single_mode_asymptote(self, tmp_path):
        out = tmp_path / "sm.csv"
        assert run_cli([
            "snr", "--strategy", "single_mode", "--epsilon", "1.0",
            "--tau-min", "1000", "--tau-max", "1000", "--tau-points", "1",
            "--output", str(out),
        ]) == 0
        value = float(read_csv(out)[0]["snr_normalized"])
        assert value == pytest.approx(2.0, abs=1e-2)

    def test_zero_shift_zero_snr(self, tmp_path):
        out = tmp_path / "z.csv"
        assert run_cli([
            "snr", "--epsilon", "0", "--tau-points", "1",
            "--tau-min", "10", "--tau-max", "10", "--output", str(out),
        ]) == 0
        assert float(read_csv(out)[0]["snr_normalized"]) == 0.0

    def test_verify(self, tmp_path):
        out = tmp_path / "sv.csv"
        assert run_cli([
            "snr", "--epsilon", "0.1", "--tau-points", "3", "--tau-max", "100",
            "--output", str(out), "--verify",
        ]) == 0

    def test_bad_strategy_exit_2(self):
        # argparse rejects unknown choices with SystemExit(2)
        with pytest.raises(SystemExit) as err:
            run_cli(["snr", "--strategy", "bogus"])
        assert err.value.code == 2


class TestOptimizeCommand:
    def test_strategy_curves_and_dominance(self, tmp_path):
        out = tmp_path / "opt.csv"
        assert run_cli([
            "optimize", "--epsilon", "0.1", "--tau-points", "3",
            "--tau-max", "300", "--output", str(out), "--verify",
        ]) == 0
        rows = read_csv(out)
        strategies = {r["strategy"] for r in rows}
        assert strategies == {"kappa_equal", "kappa_ten", "optimized", "unconstrained"}
        assert len(rows) == 12

    def test_exceptional_point_epsilon_half_runs(self, tmp_path):
        out = tmp_path / "ep.csv"
        assert run_cli([
            "optimize", "--epsilon", "0.5", "--tau-points", "2",
            "--tau-max", "50", "--output", str(out),
        ]) == 0
        rows = read_csv(out)
        assert all(float(r["snr_normalized"]) > 0 for r in rows)


class TestFrequenciesCommand:
    def test_values_and_verify(self, tmp_path):
        out = tmp_path / "fr.csv"
        assert run_cli([
            "frequencies", "--epsilon-min", "0.5", "--epsilon-max", "0.5",
            "--epsilon-points", "1", "--output", str(out), "--verify",
        ]) == 0
        row = read_csv(out)[0]
        assert float(row["mode_splitting"]) == pytest.approx(-0.75)
        assert float(row["pump_offset"]) == pytest.approx(0.125 - 0.25)

    def test_out_of_domain_marked(self, tmp_path):
        out = tmp_path / "fr.csv"
        assert run_cli([
            "frequencies", "--epsilon-min", "0", "--epsilon-max", "1",
            "--epsilon-points", "3", "--output", str(out),
        ]) == 0
        rows = read_csv(out)
        assert rows[0]["mode_splitting"] == "undefined"
        assert rows[-1]["mode_splitting"] == "undefined"
        assert rows[1]["mode_splitting"] != "undefined"

    def test_small_shift_degenerate(self, tmp_path):
        out = tmp_path / "fr.csv"
        assert run_cli([
            "frequencies", "--epsilon-min", "1e-8", "--epsilon-max", "1e-8",
            "--epsilon-points", "1", "--output", str(out),
        ]) == 0
        row = read_csv(out)[0]
        assert abs(float(row["mode_splitting"])) < 1e-3
        assert abs(float(row["pump_offset"])) < 1e-3
