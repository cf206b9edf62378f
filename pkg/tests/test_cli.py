"""CLI, config parsing, and report artifact tests."""

import json
import math

import pytest

from lhvlab.cli import (
    ConfigError,
    bundled_config_path,
    load_report,
    main,
    parse_config,
    report_csv_bytes,
    report_json_bytes,
    run_experiment,
    summarize_report,
)

FIG1 = bundled_config_path("paper-figure1")
BELL = bundled_config_path("bell-assumptions")


def write_config(tmp_path, body, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(body, encoding="utf-8")
    return path


SMALL_QM = """
[model]
name = qm

[angles]
a = 0
b = 60
c = 120

[scenarios]
1 = a, b
2 = a, c
3 = b, c

[run]
trials = 20000
master_seed = 77
"""


class TestConfigParsing:
    def test_bundled_configs_parse(self):
        for path in (FIG1, BELL):
            config = parse_config(path)
            assert config.trials == 1_000_000
            assert sorted(s[0] for s in config.scenarios) == [1, 2, 3]

    def test_unknown_label_rejected(self, tmp_path):
        bad = SMALL_QM.replace("3 = b, c", "3 = b, d")
        with pytest.raises(ConfigError):
            parse_config(write_config(tmp_path, bad))

    def test_zero_trials_rejected(self, tmp_path):
        bad = SMALL_QM.replace("trials = 20000", "trials = 0")
        with pytest.raises(ConfigError):
            parse_config(write_config(tmp_path, bad))

    def test_unknown_model_rejected(self, tmp_path):
        bad = SMALL_QM.replace("name = qm", "name = nonlocal")
        with pytest.raises(ConfigError):
            parse_config(write_config(tmp_path, bad))

    def test_vector_angles_accepted(self, tmp_path):
        body = SMALL_QM.replace("a = 0", "a = 1, 0, 0")
        config = parse_config(write_config(tmp_path, body))
        assert config.angles["a"].x == pytest.approx(1.0)

    def test_garbage_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            parse_config(write_config(tmp_path, "not a config at all\n===\n"))
        with pytest.raises(ConfigError):
            parse_config(tmp_path / "missing.cfg")


class TestRunExperiment:
    def test_figure1_inequality_verdicts(self, tmp_path):
        config = parse_config(write_config(tmp_path, SMALL_QM))
        report = run_experiment(config)
        exact = report["inequalities"]["exact"]
        assert exact["bell_original"]["satisfied"] is False
        assert exact["bell_original"]["margin"] == pytest.approx(-0.5, abs=1e-12)
        assert exact["bell_like"]["satisfied"] is True
        assert exact["bell_like"]["margin"] == pytest.approx(0.25, abs=1e-12)
        assert report["clean"] is True

    def test_bell_assumptions_scenario_three(self, tmp_path):
        body = SMALL_QM.replace("name = qm", "name = bell-constrained")
        config = parse_config(write_config(tmp_path, body))
        report = run_experiment(config)
        row = next(r for r in report["scenarios"] if r["scenario_id"] == 3)
        assert row["e_exact"] == pytest.approx(0.25, abs=1e-12)
        exact = report["inequalities"]["exact"]
        assert exact["bell_original"]["satisfied"] is True
        assert exact["bell_original"]["rhs"] == pytest.approx(1.25, abs=1e-12)

    def test_report_numbers_are_12_digit(self, tmp_path):
        config = parse_config(write_config(tmp_path, SMALL_QM))
        report = run_experiment(config)
        for row in report["scenarios"]:
            assert row["e_mc"] == float(f"{row['e_mc']:.12g}")

    def test_csv_and_json_numeric_agreement(self, tmp_path):
        config = parse_config(write_config(tmp_path, SMALL_QM))
        report = run_experiment(config)
        csv_lines = report_csv_bytes(report).decode().strip().splitlines()
        header = csv_lines[0].split(",")
        for line, row in zip(csv_lines[1:], report["scenarios"]):
            values = dict(zip(header, line.split(",")))
            assert float(values["e_mc"]) == row["e_mc"]
            assert float(values["e_stderr"]) == row["e_stderr"]
            assert float(values["e_exact"]) == row["e_exact"]
            assert int(values["n"]) == row["n"]

    def test_round_trip_identical(self, tmp_path):
        config = parse_config(write_config(tmp_path, SMALL_QM))
        report = run_experiment(config)
        path = tmp_path / "report.json"
        path.write_bytes(report_json_bytes(report))
        loaded = load_report(path)
        assert report_json_bytes(loaded) == path.read_bytes()
        assert summarize_report(loaded) == summarize_report(report)


class TestMainEntry:
    def test_run_exit_zero_and_artifacts(self, tmp_path, capsys):
        json_path = tmp_path / "out.json"
        csv_path = tmp_path / "out.csv"
        code = main(
            [
                "--trials",
                "20000",
                "--json",
                str(json_path),
                "--csv",
                str(csv_path),
                "run",
                str(FIG1),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "VIOLATED" in out  # the original inequality, on singlet numbers
        assert "clean" in out
        assert json_path.exists() and csv_path.exists()
        report = json.loads(json_path.read_text())
        assert report["trials"] == 20000

    def test_invalid_config_exits_one(self, tmp_path, capsys):
        bad = write_config(tmp_path, SMALL_QM.replace("trials = 20000", "trials = 0"))
        assert main(["run", str(bad)]) == 1

    def test_consistency_failure_exits_two(self, tmp_path, monkeypatch):
        import lhvlab.cli as cli_mod

        config = parse_config(write_config(tmp_path, SMALL_QM))
        report = run_experiment(config)
        report["checks"][0]["passed"] = False
        report["clean"] = False
        monkeypatch.setattr(cli_mod, "run_experiment", lambda cfg, workers=1: report)
        assert main(["run", str(write_config(tmp_path, SMALL_QM))]) == 2

    def test_usage_error_exits_one(self):
        with pytest.raises(SystemExit) as err:
            main(["run"])  # missing config argument
        assert err.value.code == 1

    def test_byte_identical_reruns_and_workers(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)  # keep the config's relative CSV in tmp
        outputs = []
        for tag, workers in (("one", 1), ("two", 1), ("four", 4)):
            path = tmp_path / f"{tag}.json"
            args = ["--workers", str(workers), "--trials", "150000"]
            args += ["--json", str(path), "run", str(BELL)]
            assert main(args) == 0
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]

    def test_verify_bound_subcommand(self, capsys):
        assert main(["verify", "appendix-d", "--grid", "64", "--random", "5000"]) == 0
        out = capsys.readouterr().out
        assert "0 violations" in out
        assert "worst margin 0.000000" in out

    def test_verify_derivation_constrained(self, capsys):
        assert main(["verify", "derivation", "--model", "bell-constrained", "-n", "5000"]) == 0
        out = capsys.readouterr().out
        assert "all three identifications hold" in out

    def test_verify_derivation_cell_five_flags_first(self, capsys):
        code = main(
            ["verify", "derivation", "--model", "eight-partition", "--cell", "5", "-n", "5000"]
        )
        assert code == 0  # internally consistent; the flag is the finding
        out = capsys.readouterr().out
        assert "first failing assumption: a1 = a2" in out

    def test_verify_invariants(self, capsys):
        assert main(["verify", "invariants"]) == 0
        assert "all ok" in capsys.readouterr().out

    def test_sweep_two_column_quantity(self, tmp_path):
        out_csv = tmp_path / "sweep.csv"
        code = main(
            [
                "sweep",
                "--model",
                "qm",
                "--theta-ab-range",
                "0:180:30deg",
                "--quantity",
                "e_ab",
                "--out",
                str(out_csv),
            ]
        )
        assert code == 0
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0] == "theta_ab_deg,e_ab"
        assert len(lines) == 8  # header + 7 angles
        for line in lines[1:]:
            deg, e = line.split(",")
            assert float(e) == pytest.approx(-math.cos(math.radians(float(deg))), abs=1e-11)

    def test_sweep_lockstep_ranges(self, tmp_path):
        out_csv = tmp_path / "sweep.csv"
        code = main(
            [
                "sweep",
                "--model",
                "bell-constrained",
                "--theta-ab-range",
                "0:90:45",
                "--theta-ac-range",
                "90",
                "--out",
                str(out_csv),
            ]
        )
        assert code == 0
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0] == "theta_ab_deg,theta_ac_deg,e_ab,e_ac,e_bc"
        last = lines[-1].split(",")
        assert float(last[4]) == pytest.approx(0.0, abs=1e-11)  # cos(90 deg) factor
