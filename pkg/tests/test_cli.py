"""CLI plumbing: catalog listing, exit codes, reports, determinism."""

import json

import pytest

from kaehlerlab import cli


def run_cli(argv):
    return cli.main(argv)


class TestList:
    def test_catalog_listing(self, capsys):
        assert run_cli(["list"]) == 0
        out = capsys.readouterr().out
        for name in ["linear_c2", "graph_z2_c2", "graph_z3_c2", "graph_c3",
                     "veronese_cp2"]:
            assert name in out
        assert "fubini_study" in out
        assert "c=4" in out


class TestConfig:
    def test_unknown_case_rejected(self, capsys):
        assert run_cli(["run", "--case", "foo"]) == cli.EXIT_CONFIG_ERROR

    def test_unknown_tolerance_id_rejected(self):
        assert run_cli(
            ["run", "--case", "linear_c2", "--tol", "bogus=1"]
        ) == cli.EXIT_CONFIG_ERROR

    def test_malformed_tolerance(self):
        assert run_cli(
            ["run", "--case", "linear_c2", "--tol", "eq_2_14"]
        ) == cli.EXIT_CONFIG_ERROR

    def test_bad_points(self):
        assert run_cli(
            ["run", "--case", "linear_c2", "--points", "0"]
        ) == cli.EXIT_CONFIG_ERROR

    def test_env_seed(self, monkeypatch, capsys):
        monkeypatch.setenv("KAEHLERLAB_SEED", "7")
        assert run_cli(
            ["run", "--case", "linear_c2", "--points", "2"]
        ) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["seed"] == 7

    def test_bad_env_seed(self, monkeypatch):
        monkeypatch.setenv("KAEHLERLAB_SEED", "not-a-number")
        assert run_cli(
            ["run", "--case", "linear_c2", "--points", "1"]
        ) == cli.EXIT_CONFIG_ERROR

    def test_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(
            {"cases": ["linear_c2"], "points": 2, "seed": 9}
        ))
        assert run_cli(["run", "--config", str(cfg)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["seed"] == 9
        assert [c["name"] for c in report["cases"]] == ["linear_c2"]

    def test_flags_override_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"cases": ["linear_c2"], "seed": 9}))
        assert run_cli(
            ["run", "--config", str(cfg), "--seed", "12", "--points", "1"]
        ) == 0
        assert json.loads(capsys.readouterr().out)["seed"] == 12


class TestRun:
    def test_report_schema(self, capsys):
        code = run_cli(
            ["run", "--case", "graph_z2_c2", "--points", "2"]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["schema"] == 1
        case = report["cases"][0]
        assert case["ambient"] == {"kind": "flat", "c": 0.0, "m": 1, "l": 1}
        point = case["points"][0]
        assert set(point) == {"u", "checks", "recurrence"}
        for chk in point["checks"]:
            assert set(chk) == {"id", "residual", "tolerance", "passed"}
        agg = case["aggregates"]
        assert agg["all_classifications_matched"] is True
        assert agg["max_residual"] <= 1e-8

    def test_tight_tolerance_exits_one(self):
        code = run_cli([
            "run", "--case", "veronese_cp2", "--points", "10",
            "--tol", "eq_2_14=1e-15",
        ])
        assert code == cli.EXIT_CHECK_FAILURE

    def test_text_format(self, capsys):
        code = run_cli([
            "run", "--case", "linear_c2", "--points", "2",
            "--format", "text",
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "linear_c2" in out
        assert "max residual" in out

    def test_output_file(self, tmp_path):
        out = tmp_path / "report.json"
        code = run_cli([
            "run", "--case", "linear_c2", "--points", "2",
            "--out", str(out),
        ])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["cases"][0]["name"] == "linear_c2"

    def test_unwritable_output_path(self, tmp_path):
        code = run_cli([
            "run", "--case", "linear_c2", "--points", "1",
            "--out", str(tmp_path / "missing" / "report.json"),
        ])
        assert code == cli.EXIT_CONFIG_ERROR

    def test_byte_identical_reports(self, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            code = run_cli([
                "run", "--case", "graph_z3_c2", "--case", "veronese_cp2",
                "--points", "4", "--seed", "42", "--out", str(path),
            ])
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_classification_recorded(self, capsys):
        assert run_cli(
            ["run", "--case", "veronese_cp2", "--points", "3"]
        ) == 0
        report = json.loads(capsys.readouterr().out)
        for point in report["cases"][0]["points"]:
            recurrence = point["recurrence"]
            assert recurrence["classification"] == "Parallel"
            assert recurrence["theorems"]["passed"] is True
