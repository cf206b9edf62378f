"""Inequality evaluators, the exhaustive bound sweep, and the derivation replayer.

Two inequalities over a triple of correlations E(a,b), E(a,c), E(b,c):

* original:   |E(a,b) - E(a,c)| <= 1 + E(b,c)
* angle-bound: |E(a,b) - E(a,c)| <= 1 - cos(theta_ab)*cos(theta_ac)

The right side of the second is a plain quantity fixed by the two detector
separations, not an expectation value of any scenario.  Substituting the
singlet correlations E = -cos(theta) turns it into

    |-cos(theta_ab) + cos(theta_ac)| <= 1 - cos(theta_ab)*cos(theta_ac)

which is an unconditional trigonometric identity (it factors into
cos(theta_ab) <= 1 and cos(theta_ac) <= 1); ``verify_bound_grid`` and
``verify_bound_random`` check it numerically over [0, pi]^2.

``replay_bell_derivation`` walks the classic chain from |E(a,b) - E(a,c)|
to 1 + E(b,c) on a weighted sample of six-function records, checking at each
step that the algebraic rewrite is valid exactly when the sample satisfies
the pointwise identification the step relies on (a1 = a2, then b1 = -a3,
then b2 = b3).

Satisfaction uses a +1e-12 tolerance on the right-hand side: the
inequalities are non-strict and exact-boundary cases (e.g. lhs = rhs = 2 at
angles (0, pi)) must not flip on rounding.  All functions here are pure;
grid sweeps may be partitioned arbitrarily since counts and minima are
associative reductions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DomainError, RangeError, check_angle, check_correlation
from .models import SixFunctionRecord

__all__ = [
    "SATISFACTION_TOL",
    "InequalityReport",
    "bell_original",
    "bell_like",
    "bound_margin",
    "BoundSweepReport",
    "verify_bound_grid",
    "verify_bound_random",
    "DerivationStep",
    "DerivationReport",
    "replay_bell_derivation",
]

SATISFACTION_TOL = 1e-12
_STEP_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class InequalityReport:
    """One evaluated inequality: lhs <= rhs, margin = rhs - lhs."""

    lhs: float
    rhs: float
    satisfied: bool
    margin: float

    def __post_init__(self) -> None:
        if self.satisfied != (self.lhs <= self.rhs + SATISFACTION_TOL):
            raise DomainError("satisfied flag inconsistent with lhs/rhs")
        if abs(self.margin - (self.rhs - self.lhs)) > 1e-9:
            raise DomainError("margin inconsistent with lhs/rhs")

    @classmethod
    def from_bounds(cls, lhs: float, rhs: float) -> "InequalityReport":
        return cls(lhs=lhs, rhs=rhs, satisfied=lhs <= rhs + SATISFACTION_TOL, margin=rhs - lhs)


def bell_original(e_ab: float, e_ac: float, e_bc: float) -> InequalityReport:
    """|E(a,b) - E(a,c)| <= 1 + E(b,c) for a triple of correlations."""
    e_ab = check_correlation(e_ab, "e_ab")
    e_ac = check_correlation(e_ac, "e_ac")
    e_bc = check_correlation(e_bc, "e_bc")
    return InequalityReport.from_bounds(abs(e_ab - e_ac), 1.0 + e_bc)


def bell_like(e_ab: float, e_ac: float, theta_ab: float, theta_ac: float) -> InequalityReport:
    """|E(a,b) - E(a,c)| <= 1 - cos(theta_ab)*cos(theta_ac).

    The bound depends only on the two separation angles, so it applies to
    any pair of correlations measured at those settings.
    """
    e_ab = check_correlation(e_ab, "e_ab")
    e_ac = check_correlation(e_ac, "e_ac")
    theta_ab = check_angle(theta_ab, "theta_ab")
    theta_ac = check_angle(theta_ac, "theta_ac")
    rhs = 1.0 - math.cos(theta_ab) * math.cos(theta_ac)
    return InequalityReport.from_bounds(abs(e_ab - e_ac), rhs)


def bound_margin(theta_ab: float, theta_ac: float) -> float:
    """Margin of the singlet-substituted bound at one angle pair.

    (1 - cos(theta_ab)*cos(theta_ac)) - |-cos(theta_ab) + cos(theta_ac)|;
    nonnegative everywhere on [0, pi]^2, zero exactly on the boundary edges.
    """
    theta_ab = check_angle(theta_ab, "theta_ab")
    theta_ac = check_angle(theta_ac, "theta_ac")
    ca, cc = math.cos(theta_ab), math.cos(theta_ac)
    return (1.0 - ca * cc) - abs(cc - ca)


@dataclass(frozen=True, slots=True)
class BoundSweepReport:
    """Result of sweeping the singlet-substituted bound over angle pairs."""

    nodes: int
    violations: int
    worst_margin: float
    worst_theta_ab: float
    worst_theta_ac: float
    #: nodes where cos(theta_ab) <= 1 or cos(theta_ac) <= 1 failed (the two
    #: factors the algebraic proof reduces to); expected 0.
    cosine_check_violations: int


def _sweep(theta_ab: np.ndarray, theta_ac: np.ndarray) -> BoundSweepReport:
    ca = np.cos(theta_ab)
    cc = np.cos(theta_ac)
    margin = (1.0 - ca * cc) - np.abs(cc - ca)
    worst = int(np.argmin(margin))
    cos_bad = int(np.sum(ca > 1.0 + SATISFACTION_TOL) + np.sum(cc > 1.0 + SATISFACTION_TOL))
    return BoundSweepReport(
        nodes=margin.size,
        violations=int(np.sum(margin < -SATISFACTION_TOL)),
        worst_margin=float(margin[worst]),
        worst_theta_ab=float(theta_ab[worst]),
        worst_theta_ac=float(theta_ac[worst]),
        cosine_check_violations=cos_bad,
    )


def verify_bound_grid(grid_n: int) -> BoundSweepReport:
    """Evaluate the bound on a grid_n x grid_n uniform grid of [0, pi]^2.

    The grid includes both endpoints, so grid_n = 2 checks exactly the four
    corners.  Expected outcome for any grid: zero violations, worst margin 0
    attained on the boundary (the bound is an identity there).
    """
    if grid_n < 2:
        raise DomainError(f"grid_n must be >= 2, got {grid_n}")
    axis = np.linspace(0.0, math.pi, grid_n)
    tab, tac = np.meshgrid(axis, axis, indexing="ij")
    return _sweep(tab.ravel(), tac.ravel())


def verify_bound_random(n_pairs: int, seed: int = 0) -> BoundSweepReport:
    """Evaluate the bound on uniformly random angle pairs in [0, pi]^2."""
    if n_pairs < 1:
        raise DomainError(f"n_pairs must be >= 1, got {n_pairs}")
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, math.pi, size=(2, n_pairs))
    return _sweep(angles[0], angles[1])


# ---------------------------------------------------------------------------
# Derivation replay
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class DerivationStep:
    """One step of the derivation chain evaluated on the sample.

    ``assumption`` names the pointwise identification the step substitutes
    (None for unconditional steps); ``values_agree`` records whether the
    rewritten quantity matched the previous step's value; ``consistent`` is
    False only when the assumption holds on the sample but the rewrite failed
    numerically (which would indicate a broken replay, not a broken sample).
    """

    name: str
    value: float
    assumption: str | None
    assumption_holds: bool
    violating_records: int
    values_agree: bool | None
    consistent: bool


@dataclass(frozen=True, slots=True)
class DerivationReport:
    steps: tuple[DerivationStep, ...]
    e_ab: float
    e_ac: float
    e_bc: float
    final_lhs: float
    final_rhs: float
    final_holds: bool
    first_failing_assumption: str | None

    @property
    def consistent(self) -> bool:
        return all(step.consistent for step in self.steps)

    @property
    def all_assumptions_hold(self) -> bool:
        return self.first_failing_assumption is None


def _coerce_records(records: Sequence[SixFunctionRecord] | np.ndarray) -> np.ndarray:
    if isinstance(records, np.ndarray):
        arr = np.asarray(records, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 6:
            raise DomainError(f"record array must have shape (m, 6), got {arr.shape}")
    else:
        arr = np.array([r.as_tuple() for r in records], dtype=np.int64).reshape(-1, 6)
    if arr.size and not np.all(np.abs(arr) == 1):
        raise DomainError("record entries must be +1 or -1")
    return arr


def replay_bell_derivation(
    records: Sequence[SixFunctionRecord] | np.ndarray,
    weights: Sequence[float] | np.ndarray | None = None,
) -> DerivationReport:
    """Replay the derivation chain |E(a,b) - E(a,c)| -> ... -> 1 + E(b,c).

    Each intermediate integral is computed as a weighted sum over the sample,
    and each substitution step is checked against the sample's pointwise
    relations: the rewrite must hold when and only when its identification
    (a1 = a2, b1 = -a3, b2 = b3) holds on every positive-weight record.  An
    identification that fails is reported as the step's violation (not raised);
    ``first_failing_assumption`` names the earliest one.

    Weights must be nonnegative and sum to 1 (uniform by default); the empty
    sample passes vacuously with all integrals zero.
    """
    arr = _coerce_records(records)
    m = len(arr)
    if weights is None:
        w = np.full(m, 1.0 / m) if m else np.zeros(0)
    else:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (m,):
            raise RangeError(f"weights must have shape ({m},), got {w.shape}")
        if m and (np.any(w < -1e-15) or abs(float(w.sum()) - 1.0) > 1e-9):
            raise RangeError("weights must be nonnegative and sum to 1")
    a1, b1, a2, b2, a3, b3 = (arr[:, i] for i in range(6))
    active = w > 0.0

    total_w = float(w.sum())
    e_ab = float(np.dot(w, a1 * b1))
    e_ac = float(np.dot(w, a2 * b2))
    e_bc = float(np.dot(w, a3 * b3))

    def relation_holds(lhs: np.ndarray, rhs: np.ndarray) -> tuple[bool, int]:
        bad = int(np.sum(active & (lhs != rhs)))
        return bad == 0, bad

    steps: list[DerivationStep] = []

    v0 = abs(float(np.dot(w, a1 * b1 - a2 * b2)))
    steps.append(
        DerivationStep(
            name="correlation-difference",
            value=v0,
            assumption=None,
            assumption_holds=True,
            violating_records=0,
            values_agree=None,
            consistent=True,
        )
    )

    # substitute a2 -> a1 inside the difference: valid iff a1 == a2 pointwise
    v1 = abs(float(np.dot(w, a1 * b1 * (1 - b1 * b2))))
    holds1, bad1 = relation_holds(a1, a2)
    agree1 = abs(v1 - v0) <= _STEP_TOL
    steps.append(
        DerivationStep(
            name="substitute-first-identification",
            value=v1,
            assumption="a1 = a2",
            assumption_holds=holds1,
            violating_records=bad1,
            values_agree=agree1,
            consistent=(not holds1) or agree1,
        )
    )

    # move the absolute value inside; the integrand 1 - b1*b2 is already >= 0
    integrand = 1.0 - (b1 * b2).astype(np.float64)
    v2 = float(np.dot(w, np.abs(integrand)))
    nonneg = bool(np.all(integrand >= 0.0))
    steps.append(
        DerivationStep(
            name="triangle-bound",
            value=v2,
            assumption=None,
            assumption_holds=True,
            violating_records=0,
            values_agree=None,
            consistent=nonneg and v2 >= v1 - _STEP_TOL,
        )
    )

    # substitute b1 -> -a3: valid iff b1 == -a3 pointwise
    v3 = float(np.dot(w, 1.0 + (a3 * b2).astype(np.float64)))
    holds3, bad3 = relation_holds(b1, -a3)
    agree3 = abs(v3 - v2) <= _STEP_TOL
    steps.append(
        DerivationStep(
            name="substitute-second-identification",
            value=v3,
            assumption="b1 = -a3",
            assumption_holds=holds3,
            violating_records=bad3,
            values_agree=agree3,
            consistent=(not holds3) or agree3,
        )
    )

    # substitute b2 -> b3: valid iff b2 == b3 pointwise; lands on 1 + E(b,c)
    v4 = float(np.dot(w, 1.0 + (a3 * b3).astype(np.float64)))
    holds4, bad4 = relation_holds(b2, b3)
    agree4 = abs(v4 - v3) <= _STEP_TOL
    steps.append(
        DerivationStep(
            name="substitute-third-identification",
            value=v4,
            assumption="b2 = b3",
            assumption_holds=holds4,
            violating_records=bad4,
            values_agree=agree4,
            consistent=(not holds4) or agree4,
        )
    )

    final_rhs = total_w + e_bc  # equals 1 + E(b,c) for normalized weights
    steps.append(
        DerivationStep(
            name="final-bound",
            value=final_rhs,
            assumption=None,
            assumption_holds=True,
            violating_records=0,
            values_agree=abs(final_rhs - v4) <= _STEP_TOL,
            consistent=abs(final_rhs - v4) <= _STEP_TOL,
        )
    )

    first_failing = next(
        (s.assumption for s in steps if s.assumption is not None and not s.assumption_holds),
        None,
    )
    return DerivationReport(
        steps=tuple(steps),
        e_ab=e_ab,
        e_ac=e_ac,
        e_bc=e_bc,
        final_lhs=v0,
        final_rhs=final_rhs,
        final_holds=v0 <= final_rhs + SATISFACTION_TOL,
        first_failing_assumption=first_failing,
    )
