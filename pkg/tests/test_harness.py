import json
import os

import numpy as np
import pytest

from nandwalk import cli_main, eval_nand, parse_input, sweep
from nandwalk.harness import ExperimentConfig


def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_prints_value(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--input", "0110")
        assert code == 0
        assert out.strip() == "0"

    def test_json_with_randomized_trace(self, capsys):
        code, out, _ = run_cli(capsys, "eval", "--input", "0110",
                               "--seed", "7", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["value"] == 0
        assert obj["randomized_value"] == 0
        assert 1 <= obj["queries"] <= 4

    def test_bad_input_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--input", "011")
        assert code == 2
        assert "power of two" in err


class TestScatter:
    def test_all_rows_pass(self, capsys):
        code, out, _ = run_cli(capsys, "scatter", "--input", "11",
                               "--emax", "auto", "--points", "16")
        assert code == 0
        lines = out.strip().split("\n")
        header = [ln for ln in lines if ln.startswith("#")]
        assert any("config_hash" in ln for ln in header)
        assert any("schema" in ln for ln in header)
        assert any("version" in ln for ln in header)
        data = [ln for ln in lines if not ln.startswith("#")]
        assert data[0].startswith("N,instance_id,E")
        assert len(data) == 17
        assert all(ln.endswith(",true") for ln in data[1:])

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "scatter.csv"
        code, _, _ = run_cli(capsys, "scatter", "--input", "0110",
                             "--points", "8", "--out", str(path))
        assert code == 0
        assert path.read_text().count("\n") >= 9

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "scatter", "--input", "11",
                               "--points", "4", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert len(obj["rows"]) == 4
        assert all(r["passed"] for r in obj["rows"])
        assert obj["schema"][0] == "N"


class TestRun:
    def test_decision_matches_classical(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--input", "0110", "--gamma", "16")
        assert code == 0
        obj = json.loads(out)
        assert obj["decision"] == eval_nand(parse_input("0110")) == 0
        assert obj["analytic_T0_sq"] == 0.0
        assert "config_hash" in obj and "version" in obj

    def test_cheb_alias(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--input", "01",
                               "--gamma", "8", "--propagator", "cheb")
        assert code == 0
        assert json.loads(out)["config"]["propagator"] == "chebyshev"


class TestSweep:
    def test_rows_and_summary(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--n", "4", "--gamma", "4", "16",
            "--instances", "3", "--seed", "1",
        )
        assert code == 0
        lines = out.strip().split("\n")
        data = [ln for ln in lines if not ln.startswith("#")]
        assert data[0] == "N,instance_id,gamma,L,M,t_run,p_right,T0_sq,decision,nand,correct"
        assert len(data) == 1 + 3 * 2
        # decisions are reliable at gamma = 16; gamma = 4 may misclassify
        gamma16 = [ln for ln in data[1:] if ln.split(",")[2] == "16"]
        assert gamma16 and all(ln.split(",")[-1] == "1" for ln in gamma16)
        summaries = [ln for ln in lines if ln.startswith("# summary")]
        assert len(summaries) >= 2

    def test_byte_identical_reproducibility(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            code = cli_main(["sweep", "--n", "4", "--gamma", "8",
                             "--instances", "2", "--seed", "5", "--out", str(path)])
            assert code == 0
        strip = lambda p: [ln for ln in p.read_text().splitlines()
                           if not ln.startswith("# generated_at")]
        assert strip(a) == strip(b)

    def test_empty_grid_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "--n", "4", "--gamma", "8",
                               "--instances", "0")
        assert code == 2
        assert "empty" in err

    def test_parallel_matches_serial(self):
        rows_serial, _ = sweep(4, [8.0], instances=3, seed=9)
        try:
            os.environ["NANDWALK_WORKERS"] = "2"
            rows_par, _ = sweep(4, [8.0], instances=3, seed=9)
        finally:
            del os.environ["NANDWALK_WORKERS"]
        assert rows_serial == rows_par

    def test_summary_error_rate_shrinks(self):
        _, summary = sweep(4, [4.0, 16.0], instances=4, seed=3)
        assert summary[16.0]["mean_abs_err"] < summary[4.0]["mean_abs_err"]

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n", "4", "--gamma", "8", "16",
                               "--instances", "2", "--seed", "5", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert len(obj["rows"]) == 4
        assert set(obj["summary"]) == {"8", "16", "fit_exponent"}

    def test_error_rate_nonincreasing_in_gamma(self):
        # 16 random instances at N=16 across a 16x gamma span
        _, summary = sweep(16, [4.0, 16.0, 64.0], instances=16, seed=11,
                           propagator="chebyshev")
        rates = [summary[g]["error_rate"] for g in (4.0, 16.0, 64.0)]
        assert rates[0] >= rates[1] >= rates[2]
        assert rates[2] == 0.0
        errs = [summary[g]["mean_abs_err"] for g in (4.0, 16.0, 64.0)]
        assert errs[0] > errs[1] > errs[2]
        # measured decay on these graphs; faster than the conservative -1/2
        assert -1.1 <= summary["fit_exponent"] <= -0.7


class TestEmbedParityCommand:
    def test_verifies(self, capsys):
        code, out, _ = run_cli(capsys, "embed-parity", "--k", "4")
        assert code == 0
        obj = json.loads(out)
        assert obj["verified"] is True
        assert obj["n_leaves"] == 16
        assert len(obj["blocks"]) == 4

    def test_instance_emission(self, capsys):
        code, out, _ = run_cli(capsys, "embed-parity", "--k", "2", "--bits", "10")
        assert code == 0
        obj = json.loads(out)
        assert obj["instance_value"] == 0  # (1 + 1 + 0) mod 2


class TestDiagnose:
    def test_default_checks_pass(self, capsys):
        code, out, _ = run_cli(capsys, "diagnose", "--L", "16", "64", "--eps", "0.1", "0.3")
        assert code == 0
        lines = [ln for ln in out.strip().split("\n") if not ln.startswith("#")]
        assert lines[0] == "L,eps,quantity,value,bound,pass"
        assert all(ln.endswith(",true") for ln in lines[1:])
        quantities = {ln.split(",")[2] for ln in lines[1:]}
        assert quantities == {"band_total", "tail_mass", "alt_peak", "cubic_dispersion"}

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "diagnose", "--L", "16", "--eps", "0.1",
                               "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert all(r["pass"] for r in obj["rows"])


class TestFormatErrors:
    def test_run_rejects_csv(self, capsys):
        code, _, err = run_cli(capsys, "run", "--input", "01",
                               "--gamma", "8", "--format", "csv")
        assert code == 2
        assert "json" in err


class TestUsage:
    def test_no_command(self, capsys):
        assert cli_main([]) == 2

    def test_unknown_command(self, capsys):
        assert cli_main(["frobnicate"]) == 2

    def test_help_exits_zero(self, capsys):
        assert cli_main(["--help"]) == 0


class TestExperimentConfig:
    def test_hash_stable_and_canonical(self):
        a = ExperimentConfig("run", {"x": 1, "y": [2, 3]})
        b = ExperimentConfig("run", {"y": [2, 3], "x": 1})
        assert a.digest == b.digest
        assert len(a.digest) == 16

    def test_hash_differs_with_params(self):
        a = ExperimentConfig("run", {"x": 1})
        b = ExperimentConfig("run", {"x": 2})
        assert a.digest != b.digest
