import json
import math
import os
import subprocess
import sys

import pytest

from hepp_expand.cli import main

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def base_scenario(**overrides):
    data = {
        "schema_version": 1,
        "dim": 1,
        "epsilon": 0.5,
        "t_end": 0.5,
        "dt": 1e-3,
        "alpha": {"kind": "zero"},
        "beta": {"kind": "constant", "data": {"re": [[1.0]], "im": [[0.0]]}},
        "observable": {"preset": "n-squared"},
        "fock": {"n_max": 20},
        "quad": {"nodes": 10},
        "seed": 77,
    }
    data.update(overrides)
    return data


def write_scenario(tmp_path, data, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run_main(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestFlowCommand:
    def test_worked_example_scenario(self, capsys):
        path = os.path.join(REPO, "demos", "scenarios", "example-im-z2.json")
        code, report = run_main(["flow", path], capsys)
        assert code == 0
        last = report["phi_samples"][-1]
        assert last["t"] == 1.0
        assert abs(last["linear"]["re"][0][0] - math.cosh(1.0)) < 1e-8
        assert abs(last["antilinear"]["re"][0][0] - math.sinh(1.0)) < 1e-8
        assert report["schema_version"] == 1

    def test_zero_hamiltonian_identity_path(self, tmp_path, capsys):
        data = base_scenario(beta={"kind": "zero"}, t_end=1.0)
        code, report = run_main(["flow", write_scenario(tmp_path, data)], capsys)
        assert code == 0
        for sample in report["phi_samples"]:
            assert sample["linear"]["re"][0][0] == 1.0
            assert sample["antilinear"]["re"][0][0] == 0.0

    def test_malformed_json_exit_two(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 1,')
        assert main(["flow", str(path)]) == 2

    def test_missing_file_exit_two(self):
        assert main(["flow", "/nonexistent/scenario.json"]) == 2

    def test_inconsistent_dimensions_exit_two(self, tmp_path):
        data = base_scenario(dim=2)  # beta stays 1x1
        assert main(["flow", write_scenario(tmp_path, data)]) == 2

    def test_sampled_beta_kind(self, tmp_path, capsys):
        times = [0.0, 0.25, 0.5]
        values = [{"re": [[1.0]], "im": [[0.0]]},
                  {"re": [[1.2]], "im": [[0.1]]},
                  {"re": [[0.9]], "im": [[0.0]]}]
        data = base_scenario(beta={"kind": "sampled", "times": times, "values": values})
        code, report = run_main(["flow", write_scenario(tmp_path, data)], capsys)
        assert code == 0
        assert report["pass"] is True


class TestExpandCommand:
    def test_both_engines_agree(self, tmp_path, capsys):
        data = base_scenario()
        code, report = run_main(
            ["expand", write_scenario(tmp_path, data), "--method", "both"], capsys)
        assert code == 0
        assert report["pass"] is True
        assert all(row["distance"] <= 1e-8 for row in report["per_order_distance"])
        assert [row["k"] for row in report["dyson"]["terms"]] == [0, 1, 2]

    def test_constant_observable_single_order(self, tmp_path, capsys):
        const = {"dim": 1, "terms": [{"p": 0, "q": 0, "entries": [[[], [], 2.0, 0.0]]}]}
        data = base_scenario(observable=const)
        code, report = run_main(
            ["expand", write_scenario(tmp_path, data), "--method", "exp"], capsys)
        assert code == 0
        assert [row["k"] for row in report["exponential"]["terms"]] == [0]

    def test_odd_degree_orders(self, tmp_path, capsys):
        cubic = {"dim": 1, "terms": [
            {"p": 2, "q": 1, "entries": [[[1], [1, 1], 1.0, 0.0]]}]}
        data = base_scenario(observable=cubic)
        code, report = run_main(
            ["expand", write_scenario(tmp_path, data), "--method", "both"], capsys)
        assert code == 0
        ks = [row["k"] for row in report["exponential"]["terms"]]
        assert ks == [0, 1]
        # the order-1 term has total degree 1
        sym = report["exponential"]["terms"][1]["symbol"]
        assert all(t["p"] + t["q"] <= 1 for t in sym["terms"])

    def test_quartic_cross_preset_d2(self, tmp_path, capsys):
        data = base_scenario(
            dim=2, t_end=0.3,
            beta={"kind": "constant",
                  "data": {"re": [[0.4, 0.1], [0.1, -0.2]], "im": [[0.0, 0.3], [0.3, 0.1]]}},
            observable={"preset": "quartic-cross"},
            quad={"nodes": 8})
        code, report = run_main(
            ["expand", write_scenario(tmp_path, data), "--method", "both"], capsys)
        assert code == 0
        assert report["pass"] is True


class TestOracleCommand:
    def test_time_zero_error_vanishes(self, tmp_path, capsys):
        data = base_scenario(t_end=0.0, fock={"n_max": 16})
        code, report = run_main(["oracle", write_scenario(tmp_path, data)], capsys)
        assert code == 0
        assert max(report["max_matrix_element_error"].values()) < 1e-12

    def test_short_time_scenario_passes(self, capsys):
        path = os.path.join(REPO, "demos", "scenarios", "oracle-im-z2.json")
        code, report = run_main(["oracle", path], capsys)
        assert code == 0
        assert report["pass"] is True
        assert max(report["max_matrix_element_error"].values()) <= 1e-5
        assert report["trusted_block"] == 16

    def test_tolerance_fail_exit_one(self, tmp_path, capsys):
        data = base_scenario(t_end=0.05, dt=5e-4, fock={"n_max": 24},
                             tolerances={"oracle": 1e-12, "leakage": 1e-2})
        code, report = run_main(["oracle", write_scenario(tmp_path, data)], capsys)
        assert code == 1
        assert report["pass"] is False

    def test_leakage_abort_exit_three(self, tmp_path, capsys):
        data = base_scenario(t_end=0.3, fock={"n_max": 8},
                             tolerances={"leakage": 1e-6})
        code, report = run_main(["oracle", write_scenario(tmp_path, data)], capsys)
        assert code == 3
        assert "leakage" in report["error"]
        assert report["diagnostics"]["n_max"] == 8


class TestEstimatesCommand:
    def test_rows_pass(self, tmp_path, capsys):
        data = base_scenario(t_end=0.3, fock={"n_max": 14})
        code, report = run_main(
            ["estimates", write_scenario(tmp_path, data), "--samples", "40"], capsys)
        assert code == 0
        names = {row["name"] for row in report["rows"]}
        assert {"generator_bound", "commutator_bound_k1", "commutator_bound_k2",
                "compose_estimate", "second_order_bound_m2", "second_order_bound",
                "exp_assembly_bound", "growth_bound_k1", "growth_bound_k2"} <= names
        assert report["pass"] is True

    def test_zero_beta_vacuous(self, tmp_path, capsys):
        data = base_scenario(beta={"kind": "zero"}, t_end=0.3, fock={"n_max": 10})
        code, report = run_main(
            ["estimates", write_scenario(tmp_path, data), "--samples", "10"], capsys)
        assert code == 0
        rows = {row["name"]: row for row in report["rows"]}
        assert rows["generator_bound"]["vacuous"] is True
        assert rows["growth_bound"]["vacuous"] is True

    def test_deterministic_given_seed(self, tmp_path):
        data = base_scenario(t_end=0.3, fock={"n_max": 12})
        path = write_scenario(tmp_path, data)
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        assert main(["estimates", path, "--samples", "15", "--out", str(out1)]) == 0
        assert main(["estimates", path, "--samples", "15", "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_seed_override_changes_report(self, tmp_path):
        data = base_scenario(t_end=0.3, fock={"n_max": 12})
        path = write_scenario(tmp_path, data)
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        assert main(["estimates", path, "--samples", "15", "--out", str(out1)]) == 0
        assert main(["estimates", path, "--samples", "15", "--seed", "9",
                     "--out", str(out2)]) == 0
        assert out1.read_bytes() != out2.read_bytes()


def test_console_entry_point_runs(tmp_path):
    data = base_scenario(t_end=0.2)
    path = write_scenario(tmp_path, data)
    proc = subprocess.run(
        [sys.executable, "-m", "hepp_expand.cli", "flow", path],
        capture_output=True, text=True)
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["command"] == "flow"


def test_out_file_written(tmp_path):
    data = base_scenario(t_end=0.2)
    path = write_scenario(tmp_path, data)
    out = tmp_path / "report.json"
    assert main(["flow", path, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["schema_version"] == 1
