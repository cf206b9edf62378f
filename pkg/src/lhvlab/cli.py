"""Scenario-driven command-line front end.

Subcommands:

* ``run <config>`` - load an experiment config, estimate every scenario's
  correlation (Monte Carlo plus closed form where the model has one),
  evaluate both inequalities over the scenario triple, write JSON/CSV
  artifacts and print a summary.
* ``verify appendix-d | derivation | invariants`` - numerical verification
  suites; exit 0 iff zero violations.
* ``sweep`` - angle sweeps of the exact correlations for plot data.

Config files are flat UTF-8 key-value text with section headers; angles are
given in degrees (converted to radians on load) or as x,y,z components.
Exit codes: 0 success, 1 config/usage error, 2 verification failure.

All numeric output is fixed 12-significant-digit decimal, reports contain
no timestamps or host state, and files are written atomically, so a config
plus a master seed reproduces its artifacts byte for byte at any worker
count.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Direction, LhvError, SettingPair, angle_between
from .inequalities import (
    bell_like,
    bell_original,
    replay_bell_derivation,
    verify_bound_grid,
    verify_bound_random,
)
from .models import (
    BellConstrainedModel,
    EightPartition,
    EightPartitionModel,
    FactualModel,
    QuantumSingletModel,
    make_model,
    qm_joint_table,
)
from .montecarlo import SeedSpec, estimate_correlation
from . import __version__

__all__ = ["ConfigError", "ExperimentConfig", "run_experiment", "summarize_report", "main"]

_MODEL_CHOICES = ("qm", "bell-constrained", "factual", "eight-partition")
_SIGMA_BAND = 4.0


class ConfigError(LhvError):
    """Unparseable or invalid experiment configuration."""


def _round12(x: float) -> float:
    """Round to 12 significant digits; the precision of all numeric output."""
    return float(f"{x:.12g}") + 0.0  # + 0.0 normalizes negative zero


def _fmt12(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


@dataclass
class ExperimentConfig:
    """Parsed experiment description (see the bundled *.cfg files)."""

    model: str
    angles: dict[str, Direction]
    angle_spec: dict[str, str]  # raw text per label, echoed into reports
    scenarios: list[tuple[int, str, str]]
    trials: int
    master_seed: int
    partition_measures: tuple[float, ...] | None = None
    report_path: str | None = None
    csv_path: str | None = None

    def __post_init__(self) -> None:
        if self.model not in _MODEL_CHOICES:
            raise ConfigError(f"unknown model {self.model!r}; expected one of {_MODEL_CHOICES}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        seen: set[int] = set()
        for sid, alice, bob in self.scenarios:
            if sid in seen:
                raise ConfigError(f"duplicate scenario id {sid}")
            seen.add(sid)
            for label in (alice, bob):
                if label not in self.angles:
                    raise ConfigError(f"scenario {sid} references unknown angle label {label!r}")
        if self.partition_measures is not None:
            try:
                EightPartition(self.partition_measures)
            except LhvError as exc:
                raise ConfigError(f"invalid partition measures: {exc}") from exc


def _parse_direction(text: str, label: str) -> Direction:
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return Direction.from_planar_degrees(float(parts[0]))
        if len(parts) == 3:
            return Direction(float(parts[0]), float(parts[1]), float(parts[2]))
    except (ValueError, LhvError) as exc:
        raise ConfigError(f"angle {label!r}: {exc}") from exc
    raise ConfigError(f"angle {label!r} must be degrees or three components, got {text!r}")


def parse_config(path: str | Path) -> ExperimentConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc

    try:
        model = parser.get("model", "name").strip()
        angle_spec = {k: v.strip() for k, v in parser.items("angles")}
        angles = {k: _parse_direction(v, k) for k, v in angle_spec.items()}
        scenarios = []
        for key, value in parser.items("scenarios"):
            labels = [p.strip() for p in value.split(",")]
            if len(labels) != 2:
                raise ConfigError(f"scenario {key!r} must name two angle labels, got {value!r}")
            scenarios.append((int(key), labels[0], labels[1]))
        trials = parser.getint("run", "trials")
        master_seed = parser.getint("run", "master_seed", fallback=0)
    except (configparser.Error, ValueError) as exc:
        raise ConfigError(f"invalid config {path}: {exc}") from exc

    measures = None
    if parser.has_option("partition", "measures"):
        try:
            measures = tuple(float(p) for p in parser.get("partition", "measures").split(","))
        except ValueError as exc:
            raise ConfigError(f"invalid partition measures: {exc}") from exc

    report_path = parser.get("output", "report", fallback=None)
    csv_path = parser.get("output", "csv", fallback=None)
    return ExperimentConfig(
        model=model,
        angles=angles,
        angle_spec=angle_spec,
        scenarios=sorted(scenarios),
        trials=trials,
        master_seed=master_seed,
        partition_measures=measures,
        report_path=report_path,
        csv_path=csv_path,
    )


def bundled_config_path(name: str) -> Path:
    """Path of a config shipped with the package (e.g. 'paper-figure1')."""
    return Path(__file__).parent / "configs" / f"{name}.cfg"


# ---------------------------------------------------------------------------
# Experiment runner
# ---------------------------------------------------------------------------


def _triple_labels(config: ExperimentConfig) -> tuple[str, str, str]:
    """The three distinct detector labels (a, b, c) of the standard triple.

    Scenario 1 measures (a, b), 2 measures (a, c), 3 measures (b, c).
    """
    by_id = {sid: (alice, bob) for sid, alice, bob in config.scenarios}
    if set(by_id) != {1, 2, 3}:
        raise ConfigError("experiment must declare exactly scenarios 1, 2, 3")
    (a1, b1), (a2, c2), (b3, c3) = by_id[1], by_id[2], by_id[3]
    if a1 != a2 or b1 != b3 or c2 != c3:
        raise ConfigError(
            "scenarios must share detectors as 1=(a,b), 2=(a,c), 3=(b,c); "
            f"got 1={by_id[1]}, 2={by_id[2]}, 3={by_id[3]}"
        )
    return a1, b1, c2


def build_model(config: ExperimentConfig):
    a_label, b_label, c_label = _triple_labels(config)
    partition = (
        EightPartition(config.partition_measures)
        if config.partition_measures is not None
        else None
    )
    return make_model(
        config.model,
        config.angles[a_label],
        config.angles[b_label],
        config.angles[c_label],
        partition=partition,
    )


def _bob_axis_degrees(pair: SettingPair) -> float:
    """Angle of the bob-side detector from the +x axis, in degrees."""
    return math.degrees(angle_between(pair.bob, Direction(1.0, 0.0, 0.0)))


def _inequality_dict(rep) -> dict:
    return {
        "lhs": _round12(rep.lhs),
        "rhs": _round12(rep.rhs),
        "satisfied": rep.satisfied,
        "margin": _round12(rep.margin),
    }


def run_experiment(config: ExperimentConfig, workers: int = 1) -> dict:
    """Run every scenario and assemble the report.

    The report is a plain JSON-serializable dict holding only physics and the
    reproducibility inputs (model, angles, trials, master seed); worker count
    and output paths never enter it.
    """
    model = build_model(config)
    scenario_rows = []
    estimates = {}
    for pair in model.scenarios():
        seed = SeedSpec(config.master_seed, f"{config.model}/scenario-{pair.scenario_id}")
        est = estimate_correlation(model, pair, config.trials, seed, workers=workers)
        estimates[pair.scenario_id] = est
        sid = pair.scenario_id
        alice_label, bob_label = next(
            (al, bl) for s, al, bl in config.scenarios if s == sid
        )
        scenario_rows.append(
            {
                "scenario_id": sid,
                "alice": alice_label,
                "bob": bob_label,
                "theta_ab_deg": _round12(math.degrees(pair.theta)),
                "theta_bob_deg": _round12(_bob_axis_degrees(pair)),
                "e_mc": _round12(est.mean),
                "e_stderr": _round12(est.stderr),
                "e_exact": None if est.exact is None else _round12(est.exact),
                "n": est.n,
            }
        )

    theta_ab = model.pair(1).theta
    theta_ac = model.pair(2).theta
    e1, e2, e3 = (estimates[i] for i in (1, 2, 3))

    mc_original = bell_original(e1.mean, e2.mean, e3.mean)
    mc_like = bell_like(e1.mean, e2.mean, theta_ab, theta_ac)
    inequalities: dict = {
        "mc": {
            "bell_original": _inequality_dict(mc_original),
            "bell_like": _inequality_dict(mc_like),
        },
        "exact": None,
    }
    have_exact = all(estimates[i].exact is not None for i in (1, 2, 3))
    if have_exact:
        ex_original = bell_original(e1.exact, e2.exact, e3.exact)
        ex_like = bell_like(e1.exact, e2.exact, theta_ab, theta_ac)
        inequalities["exact"] = {
            "bell_original": _inequality_dict(ex_original),
            "bell_like": _inequality_dict(ex_like),
        }

    checks = []
    for sid in (1, 2, 3):
        est = estimates[sid]
        if est.exact is None:
            continue
        gap = abs(est.mean - est.exact)
        checks.append(
            {
                "name": f"scenario-{sid}-mc-within-{_SIGMA_BAND:g}-sigma-of-exact",
                "passed": gap <= _SIGMA_BAND * est.stderr,
                "detail": f"|mc-exact|={gap:.3e} stderr={est.stderr:.3e}",
            }
        )
    if have_exact:
        checks.append(
            {
                "name": "bell-like-satisfied-by-exact-correlations",
                "passed": inequalities["exact"]["bell_like"]["satisfied"],
                "detail": f"margin={inequalities['exact']['bell_like']['margin']:.6g}",
            }
        )
    slack = _SIGMA_BAND * math.hypot(e1.stderr, e2.stderr)
    checks.append(
        {
            "name": "bell-like-satisfied-by-mc-correlations",
            "passed": mc_like.lhs <= mc_like.rhs + slack + 1e-12,
            "detail": f"margin={mc_like.margin:.6g} slack={slack:.3e}",
        }
    )

    return {
        "format": "lhvlab-report-v1",
        "package_version": __version__,
        "model": config.model,
        "master_seed": config.master_seed,
        "trials": config.trials,
        "angles": dict(sorted(config.angle_spec.items())),
        "partition_measures": (
            None
            if config.partition_measures is None
            else [_round12(m) for m in config.partition_measures]
        ),
        "scenarios": scenario_rows,
        "inequalities": inequalities,
        "checks": checks,
        "clean": all(c["passed"] for c in checks),
    }


def report_json_bytes(report: dict) -> bytes:
    return (json.dumps(report, indent=2, sort_keys=True) + "\n").encode()


def report_csv_bytes(report: dict) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["scenario_id", "theta_ab_deg", "theta_bob_deg", "e_mc", "e_stderr", "e_exact", "n"]
    )
    for row in report["scenarios"]:
        writer.writerow(
            [
                row["scenario_id"],
                _fmt12(row["theta_ab_deg"]),
                _fmt12(row["theta_bob_deg"]),
                _fmt12(row["e_mc"]),
                _fmt12(row["e_stderr"]),
                _fmt12(row["e_exact"]),
                row["n"],
            ]
        )
    return buf.getvalue().encode()


def write_atomic(path: str | Path, data: bytes) -> None:
    """Write via temp-file-then-rename so readers never see partial output."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_report(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def summarize_report(report: dict) -> str:
    """Human-readable summary; a pure function of the report contents."""
    lines = [
        f"model={report['model']} trials={report['trials']} seed={report['master_seed']}",
    ]
    for row in report["scenarios"]:
        exact = "n/a" if row["e_exact"] is None else f"{row['e_exact']:+.6f}"
        lines.append(
            f"  scenario {row['scenario_id']} ({row['alice']},{row['bob']}) "
            f"theta={row['theta_ab_deg']:.4f}deg  "
            f"E_mc={row['e_mc']:+.6f} (stderr {row['e_stderr']:.2e})  E_exact={exact}"
        )
    for source in ("exact", "mc"):
        block = report["inequalities"].get(source)
        if block is None:
            continue
        for key in ("bell_original", "bell_like"):
            rep = block[key]
            verdict = "satisfied" if rep["satisfied"] else "VIOLATED"
            lines.append(
                f"  {key} [{source}]: lhs={rep['lhs']:.6f} rhs={rep['rhs']:.6f} "
                f"margin={rep['margin']:+.6f} -> {verdict}"
            )
    for check in report["checks"]:
        mark = "ok" if check["passed"] else "FAIL"
        lines.append(f"  check {check['name']}: {mark} ({check['detail']})")
    lines.append("clean" if report["clean"] else "CONSISTENCY FAILURE")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verify / sweep subcommands
# ---------------------------------------------------------------------------


def _fmt_angle(theta: float) -> str:
    if abs(theta) <= 1e-12:
        return "0"
    if abs(theta - math.pi) <= 1e-12:
        return "pi"
    return f"{theta:.6f}"


def _cmd_verify_bound(grid_n: int, n_random: int, seed: int) -> int:
    rep = verify_bound_grid(grid_n)
    print(
        f"grid {grid_n}x{grid_n}: {rep.violations} violations, "
        f"worst margin {rep.worst_margin:.6f} at "
        f"({_fmt_angle(rep.worst_theta_ab)}, {_fmt_angle(rep.worst_theta_ac)})"
    )
    print(f"  cosine sub-checks (cos<=1): {rep.cosine_check_violations} violations")
    total = rep.violations + rep.cosine_check_violations
    if n_random:
        rnd = verify_bound_random(n_random, seed)
        print(
            f"random {n_random} pairs: {rnd.violations} violations, "
            f"worst margin {rnd.worst_margin:.6f}"
        )
        total += rnd.violations + rnd.cosine_check_violations
    return 0 if total == 0 else 2


def _derivation_records(model_name: str, cell: int | None, n: int, seed: int) -> np.ndarray:
    from .montecarlo import _draw_block

    a = Direction.from_planar_degrees(0.0)
    b = Direction.from_planar_degrees(60.0)
    c = Direction.from_planar_degrees(120.0)
    draws = _draw_block(SeedSpec(seed, f"derivation/{model_name}"), 0, n)
    if model_name == "bell-constrained":
        return BellConstrainedModel(a, b, c).record_batch(draws)
    if model_name == "eight-partition":
        return EightPartitionModel(a, b, c).record_batch(draws, cell=cell)
    raise ConfigError(f"derivation replay needs a record model, got {model_name!r}")


def _cmd_verify_derivation(model_name: str, cell: int | None, n: int, seed: int) -> int:
    records = _derivation_records(model_name, cell, n, seed)
    report = replay_bell_derivation(records)
    for step in report.steps:
        if step.assumption is None:
            print(f"  step {step.name}: value={step.value:.6f}")
        else:
            status = "holds" if step.assumption_holds else (
                f"FLAGGED ({step.violating_records} records)"
            )
            print(
                f"  step {step.name}: value={step.value:.6f} "
                f"assumption [{step.assumption}] {status}"
            )
    if report.first_failing_assumption is not None:
        print(f"first failing assumption: {report.first_failing_assumption}")
    else:
        print("all three identifications hold on every sampled record")
    verdict = "holds" if report.final_holds else "fails"
    print(
        f"final: |E(a,b)-E(a,c)|={report.final_lhs:.6f} <= 1+E(b,c)={report.final_rhs:.6f} "
        f"-> {verdict}"
    )
    return 0 if report.consistent else 2


def _cmd_verify_invariants(seed: int) -> int:
    from .montecarlo import derive_trial_draws

    a = Direction.from_planar_degrees(0.0)
    b = Direction.from_planar_degrees(60.0)
    c = Direction.from_planar_degrees(120.0)
    models = [
        QuantumSingletModel(a, b, c),
        BellConstrainedModel(a, b, c),
        FactualModel(a, b, c),
        EightPartitionModel(a, b, c),
    ]
    failures = 0

    def check(name: str, passed: bool, detail: str = "") -> None:
        nonlocal failures
        print(f"  {name}: {'ok' if passed else 'FAIL'}{' ' + detail if detail else ''}")
        failures += 0 if passed else 1

    rng = np.random.default_rng(seed)
    for model in models:
        ok = True
        for pair in model.scenarios():
            for k in range(400):
                draws = tuple(rng.random(4))
                lam = model.sample_lambda(pair, draws)
                o1 = model.evaluate(lam, pair)
                o2 = model.evaluate(lam, pair)
                ok &= o1 == o2 and o1.a_result in (-1, 1) and o1.b_result in (-1, 1)
        check(f"{model.name}: evaluate deterministic with +-1 outcomes", ok)

    for model in models:
        ok = True
        for pair in model.scenarios():
            spec = SeedSpec(seed, f"inv/{model.name}/{pair.scenario_id}")
            block = np.array([derive_trial_draws(spec, i) for i in range(300)])
            va, vb = model.evaluate_batch(pair, block)
            for i in range(len(block)):
                lam = model.sample_lambda(pair, tuple(block[i]))
                out = model.evaluate(lam, pair)
                ok &= out.a_result == int(va[i]) and out.b_result == int(vb[i])
        check(f"{model.name}: batch path agrees with scalar path", ok)

    for theta in rng.uniform(0.0, math.pi, 64):
        qm_joint_table(theta)  # constructor enforces sum/marginal invariants
    check("joint tables valid at random angles", True)

    factual = models[2]
    mismatches = 0
    trials = 0
    for src in factual.scenarios():
        for dst in factual.scenarios():
            if src.scenario_id == dst.scenario_id:
                continue
            for k in range(100):
                lam = factual.sample_lambda(src, tuple(rng.random(4)))
                trials += 1
                try:
                    factual.evaluate(lam, dst)
                except LhvError:
                    mismatches += 1
    check(
        "factual model refuses every cross-scenario evaluation",
        mismatches == trials,
        f"({mismatches}/{trials})",
    )

    grid = verify_bound_grid(256)
    rnd = verify_bound_random(10_000, seed)
    check(
        "angle bound holds on grid and random sweep",
        grid.violations == 0 and rnd.violations == 0,
        f"(worst grid margin {grid.worst_margin:.2e})",
    )

    ok = True
    for model in models:
        for pair in model.scenarios():
            est = estimate_correlation(
                model, pair, 100_000, SeedSpec(seed, f"inv-mc/{model.name}/{pair.scenario_id}")
            )
            if est.exact is not None and est.stderr > 0:
                ok &= abs(est.mean - est.exact) <= _SIGMA_BAND * est.stderr
    check("MC estimates within 4 sigma of closed forms (n=1e5)", ok)

    print("invariants: all ok" if failures == 0 else f"invariants: {failures} FAILURES")
    return 0 if failures == 0 else 2


def _parse_range(text: str, flag: str) -> np.ndarray:
    cleaned = text.strip()
    if cleaned.endswith("deg"):
        cleaned = cleaned[:-3]
    parts = cleaned.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            start, stop, step = (float(p) for p in parts)
            if step <= 0:
                raise ValueError("step must be positive")
            if stop < start:
                raise ValueError("range end must be >= start")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return start + step * np.arange(count)
    except ValueError as exc:
        raise ConfigError(f"{flag}: {exc}") from exc
    raise ConfigError(f"{flag} must be DEG or A:B:STEP[deg], got {text!r}")


def _cmd_sweep(args) -> int:
    theta_ab = _parse_range(args.theta_ab_range, "--theta-ab-range")
    if args.theta_ac_range is not None:
        theta_ac = _parse_range(args.theta_ac_range, "--theta-ac-range")
        if len(theta_ac) == 1:
            theta_ac = np.full_like(theta_ab, theta_ac[0])
        elif len(theta_ac) != len(theta_ab):
            raise ConfigError(
                "--theta-ac-range must have one value or the same length as --theta-ab-range"
            )
    else:
        theta_ac = theta_ab.copy()

    columns = ["theta_ab_deg", "theta_ac_deg", "e_ab", "e_ac", "e_bc"]
    rows = []
    a = Direction.from_planar_degrees(0.0)
    for dab, dac in zip(theta_ab, theta_ac):
        model = make_model(
            args.model,
            a,
            Direction.from_planar_degrees(dab),
            Direction.from_planar_degrees(dac),
        )
        es = [model.exact_correlation(model.pair(i)) for i in (1, 2, 3)]
        rows.append([dab, dac, *es])

    if args.quantity != "all":
        idx = columns.index(args.quantity)
        columns = ["theta_ab_deg", args.quantity]
        rows = [[r[0], r[idx]] for r in rows]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt12(_round12(v)) for v in row])
    write_atomic(args.out, buf.getvalue().encode())
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="lhvlab",
        description="EPR spin-correlation lab: run experiments, verify inequalities, sweep angles.",
    )
    parser.add_argument("--seed", type=int, default=None, help="override the master seed")
    parser.add_argument("--trials", type=int, default=None, help="override the trial count")
    parser.add_argument("--workers", type=int, default=1, help="shard workers (result-invariant)")
    parser.add_argument("--json", default=None, help="override the JSON report path")
    parser.add_argument("--csv", default=None, help="override the CSV table path")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config")
    p_run.add_argument("config", help="path to a key-value experiment config")

    p_verify = sub.add_parser("verify", help="numerical verification suites")
    v_sub = p_verify.add_subparsers(dest="suite", required=True)
    p_bound = v_sub.add_parser("appendix-d", help="grid/random sweep of the angle bound")
    p_bound.add_argument("--grid", type=int, default=1024)
    p_bound.add_argument("--random", type=int, default=0, help="extra random angle pairs")
    p_deriv = v_sub.add_parser("derivation", help="replay the derivation chain on fresh records")
    p_deriv.add_argument("--model", default="bell-constrained", choices=_MODEL_CHOICES)
    p_deriv.add_argument("--cell", type=int, default=None, help="fix an eight-partition cell")
    p_deriv.add_argument("-n", type=int, default=100_000, help="records to sample")
    v_sub.add_parser("invariants", help="run the bundled invariant suite")

    p_sweep = sub.add_parser("sweep", help="write angle-sweep plot data")
    p_sweep.add_argument("--model", required=True, choices=_MODEL_CHOICES)
    p_sweep.add_argument("--theta-ab-range", required=True, metavar="A:B:STEPdeg")
    p_sweep.add_argument("--theta-ac-range", default=None, metavar="A:B:STEPdeg")
    p_sweep.add_argument(
        "--quantity",
        default="all",
        choices=("all", "e_ab", "e_ac", "e_bc"),
        help="restrict output to two columns (angle, quantity)",
    )
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    return parser


def _cmd_run(args) -> int:
    config = parse_config(args.config)
    if args.trials is not None:
        config.trials = args.trials
        if config.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {config.trials}")
    if args.seed is not None:
        config.master_seed = args.seed
    report = run_experiment(config, workers=args.workers)
    json_path = args.json or config.report_path
    csv_path = args.csv or config.csv_path
    if json_path:
        write_atomic(json_path, report_json_bytes(report))
        print(f"report written to {json_path}")
    if csv_path:
        write_atomic(csv_path, report_csv_bytes(report))
        print(f"table written to {csv_path}")
    print(summarize_report(report))
    return 0 if report["clean"] else 2


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "verify":
            seed = 0 if args.seed is None else args.seed
            if args.suite == "appendix-d":
                return _cmd_verify_bound(args.grid, args.random, seed)
            if args.suite == "derivation":
                n = args.n if args.trials is None else args.trials
                return _cmd_verify_derivation(args.model, args.cell, n, seed)
            return _cmd_verify_invariants(seed)
        if args.command == "sweep":
            return _cmd_sweep(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LhvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
