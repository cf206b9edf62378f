"""Concrete LHV model families and the quantum-mechanical oracle.

Four families, all built on (s, u1, u2) lambdas from :mod:`lhvlab.core`:

``QuantumSingletModel``
    Inverse-CDF sampler of singlet-state spin statistics: equal signs occur
    with probability sin^2(theta/2), so E(theta) = -cos(theta).

``BellConstrainedModel``
    Deterministic six-function construction obeying the three pointwise
    identifications a1 = a2, b1 = -a3, b2 = b3 across the three measurement
    scenarios.  Under these constraints the third scenario's correlation is
    forced to a product of cosines:

        E(a, b) = -cos(theta_ab)
        E(a, c) = -cos(theta_ac)
        E(b, c) = -cos(theta_ab) * cos(theta_ac)

``FactualModel``
    Each setting pair owns a disjoint slice of the lambda space; evaluating a
    lambda against any other scenario raises ``SettingMismatch``.  Within its
    own scenario every pair reproduces the singlet statistics.

``EightPartitionModel``
    The lambda space split into eight cells by which sign relations hold
    among the six outcome functions (a1 = +-a2, b1 = -+a3, b2 = +-b3).  The
    observed scenarios keep their physical joint tables in every cell; the
    relations then fix the derived (a3, b3) statistics cell by cell, giving
    E[a3*b3 | cell] = -(alpha*beta*gamma) * cos(theta_ab) * cos(theta_ac).

Two equivalent readings of the scenario index: the three scenarios may be
taken as three different outcome functions evaluated at one measurement
time, or as one outcome function evaluated at three different measurement
times.  Either way the object of study is the resulting set of six +-1
functions and the relations among them, so a single scenario selector
serves both framings and no explicit time parameter is introduced.

Threshold convention: a uniform draw u selects the first branch when
u < p and the second branch otherwise, so a tie (u == p exactly) lands in
the second branch; ties are measure-zero and the boundary cases p = 0 and
p = 1 come out exact because u lies in [0, 1).

The lambda measure is the product measure: uniform sign, independent uniform
u1, u2, and the stated cell weights.  Models are immutable value objects and
all sampling takes caller-supplied draws, so the module is stateless and
concurrent-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    Direction,
    DomainError,
    HiddenVariable,
    LhvModel,
    OutcomePair,
    SettingMismatch,
    SettingPair,
    UnknownScenario,
    angle_between,
    check_angle,
)

__all__ = [
    "JointTable",
    "EightPartition",
    "SixFunctionRecord",
    "qm_conditional_same",
    "qm_joint_table",
    "qm_expectation",
    "qm_oracle_sample",
    "bell_constrained_record",
    "bell_constrained_exact",
    "factual_model_sample",
    "eight_partition_record",
    "eight_partition_aggregate",
    "CELL_RELATIONS",
    "QuantumSingletModel",
    "BellConstrainedModel",
    "FactualModel",
    "EightPartitionModel",
    "make_model",
]

_TABLE_TOL = 1e-12


def _clamp01(p: float) -> float:
    return min(max(p, 0.0), 1.0)


def _half_angle_cos_sq(theta: float) -> float:
    return _clamp01(math.cos(0.5 * theta) ** 2)


def _half_angle_sin_sq(theta: float) -> float:
    return _clamp01(math.sin(0.5 * theta) ** 2)


def _sign_from(draw: float) -> int:
    return 1 if draw < 0.5 else -1


# ---------------------------------------------------------------------------
# Joint probability tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class JointTable:
    """2x2 joint probability table over (+,+), (+,-), (-,+), (-,-).

    Entries sum to 1 and both marginals are unbiased (each row and column
    sums to 1/2); every table produced by the model families has this form.
    """

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def __post_init__(self) -> None:
        entries = (self.p_pp, self.p_pm, self.p_mp, self.p_mm)
        for e in entries:
            if not (isinstance(e, (int, float)) and -_TABLE_TOL <= e <= 1.0 + _TABLE_TOL):
                raise DomainError(f"table entry outside [0, 1]: {e!r}")
        if abs(sum(entries) - 1.0) > _TABLE_TOL:
            raise DomainError(f"table entries must sum to 1, got {sum(entries)!r}")
        for marginal in (
            self.p_pp + self.p_pm,
            self.p_mp + self.p_mm,
            self.p_pp + self.p_mp,
            self.p_pm + self.p_mm,
        ):
            if abs(marginal - 0.5) > _TABLE_TOL:
                raise DomainError(f"marginals must equal 1/2, got {marginal!r}")

    def expectation(self) -> float:
        """E[XY] = P(same signs) - P(opposite signs)."""
        return (self.p_pp + self.p_mm) - (self.p_pm + self.p_mp)

    def as_array(self) -> np.ndarray:
        return np.array([[self.p_pp, self.p_pm], [self.p_mp, self.p_mm]])


def qm_conditional_same(theta: float) -> float:
    """Probability the second particle gives the SAME sign as the first.

    For singlet-state spin measurements separated by ``theta`` this is
    sin^2(theta/2): zero at parallel detectors (strict anticorrelation),
    one at antiparallel detectors.
    """
    theta = check_angle(theta)
    return _half_angle_sin_sq(theta)


def qm_joint_table(theta: float) -> JointTable:
    """Singlet joint table: p_pp = p_mm = sin^2(theta/2)/2, p_pm = p_mp = cos^2(theta/2)/2."""
    theta = check_angle(theta)
    same = 0.5 * _half_angle_sin_sq(theta)
    diff = 0.5 * _half_angle_cos_sq(theta)
    return JointTable(p_pp=same, p_pm=diff, p_mp=diff, p_mm=same)


def qm_expectation(theta: float) -> float:
    """Singlet correlation E(theta) = -cos(theta), read off the joint table."""
    return qm_joint_table(theta).expectation()


def qm_oracle_sample(theta: float, draws: Sequence[float]) -> OutcomePair:
    """Inverse-CDF sample of the singlet table from two unit uniforms.

    First sign is +1 iff draws[0] < 1/2; the second sign equals the first
    iff draws[1] < sin^2(theta/2), else it is flipped.
    """
    theta = check_angle(theta)
    first = _sign_from(draws[0])
    second = first if draws[1] < _half_angle_sin_sq(theta) else -first
    return OutcomePair(first, second)


# ---------------------------------------------------------------------------
# Six-function records
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SixFunctionRecord:
    """Values of the six outcome functions at one lambda.

    (a1, b1) belong to the first scenario, (a2, b2) to the second and
    (a3, b3) to the third; all entries are +-1.
    """

    a1: int
    b1: int
    a2: int
    b2: int
    a3: int
    b3: int

    def __post_init__(self) -> None:
        for name in ("a1", "b1", "a2", "b2", "a3", "b3"):
            if getattr(self, name) not in (-1, 1):
                raise DomainError(f"{name} must be +1 or -1, got {getattr(self, name)!r}")

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.a1, self.b1, self.a2, self.b2, self.a3, self.b3)


def bell_constrained_record(
    lam: HiddenVariable, theta_ab: float, theta_ac: float
) -> SixFunctionRecord:
    """Six-function record obeying a1 = a2, b1 = -a3, b2 = b3 at every lambda.

    With s = lam.s:

        a1 = a2 = s
        a3 = s   if u1 < cos^2(theta_ab/2) else -s
        b1 = -a3
        b3 = -s  if u2 < cos^2(theta_ac/2) else  s
        b2 = b3

    a3 and b3 are conditionally independent given s, which is exactly the
    structure that makes E[a3*b3] factor into -cos(theta_ab)*cos(theta_ac)
    while E[a1*b1] = -cos(theta_ab) and E[a2*b2] = -cos(theta_ac).
    """
    theta_ab = check_angle(theta_ab, "theta_ab")
    theta_ac = check_angle(theta_ac, "theta_ac")
    s = lam.s
    a3 = s if lam.u1 < _half_angle_cos_sq(theta_ab) else -s
    b3 = -s if lam.u2 < _half_angle_cos_sq(theta_ac) else s
    return SixFunctionRecord(a1=s, b1=-a3, a2=s, b2=b3, a3=a3, b3=b3)


def bell_constrained_exact(theta_ab: float, theta_ac: float) -> tuple[float, float, float]:
    """Closed-form (E_ab, E_ac, E_bc) for the three-assumption construction."""
    theta_ab = check_angle(theta_ab, "theta_ab")
    theta_ac = check_angle(theta_ac, "theta_ac")
    return (
        -math.cos(theta_ab),
        -math.cos(theta_ac),
        -math.cos(theta_ab) * math.cos(theta_ac),
    )


# ---------------------------------------------------------------------------
# Eight-cell partition
# ---------------------------------------------------------------------------

#: Cell -> (alpha, beta, gamma) sign relations: a1 = alpha*a2, b1 = beta*(-a3),
#: b2 = gamma*b3.  Cell 1 is the three-assumption case (all +1).
CELL_RELATIONS: dict[int, tuple[int, int, int]] = {
    1: (+1, +1, +1),
    2: (+1, +1, -1),
    3: (+1, -1, +1),
    4: (+1, -1, -1),
    5: (-1, +1, +1),
    6: (-1, +1, -1),
    7: (-1, -1, +1),
    8: (-1, -1, -1),
}


@dataclass(frozen=True, slots=True)
class EightPartition:
    """Measures Z_1..Z_8 of the eight relation cells; they sum to 1."""

    measures: tuple[float, ...]

    def __post_init__(self) -> None:
        ms = tuple(float(m) for m in self.measures)
        if len(ms) != 8:
            raise DomainError(f"exactly eight measures required, got {len(ms)}")
        if any(not math.isfinite(m) or m < -_TABLE_TOL for m in ms):
            raise DomainError(f"measures must be nonnegative, got {ms}")
        if abs(sum(ms) - 1.0) > _TABLE_TOL:
            raise DomainError(f"measures must sum to 1, got {sum(ms)!r}")
        object.__setattr__(self, "measures", tuple(max(m, 0.0) for m in ms))

    @classmethod
    def uniform(cls) -> "EightPartition":
        return cls(measures=(0.125,) * 8)


def eight_partition_record(
    cell: int, lam: HiddenVariable, theta_ab: float, theta_ac: float
) -> SixFunctionRecord:
    """Six-function record obeying exactly cell ``cell``'s three sign relations.

    The first two scenarios keep their physical joint tables in every cell
    (E[a1*b1] = -cos(theta_ab), E[a2*b2] = -cos(theta_ac)); the relations then
    determine a3 = -beta*b1 and b3 = gamma*b2.  With x, y the same u1/u2
    thresholds as :func:`bell_constrained_record`:

        a2 = s,  a1 = alpha*s,  b1 = -alpha*s*x,  a3 = alpha*beta*s*x,
        b2 = -s*y,  b3 = -gamma*s*y

    Cell 1 reproduces :func:`bell_constrained_record` exactly.  Each cell's
    third-scenario correlation is E[a3*b3] = -(alpha*beta*gamma)
    * cos(theta_ab) * cos(theta_ac), so the pointwise bound
    |E_cell[a1*b1 - a2*b2]| <= 1 - cos(theta_ab)*cos(theta_ac) holds in all
    eight cells.
    """
    if cell not in CELL_RELATIONS:
        raise DomainError(f"cell must be in 1..8, got {cell!r}")
    theta_ab = check_angle(theta_ab, "theta_ab")
    theta_ac = check_angle(theta_ac, "theta_ac")
    alpha, beta, gamma = CELL_RELATIONS[cell]
    s = lam.s
    x = 1 if lam.u1 < _half_angle_cos_sq(theta_ab) else -1
    y = 1 if lam.u2 < _half_angle_cos_sq(theta_ac) else -1
    return SixFunctionRecord(
        a1=alpha * s,
        b1=-alpha * s * x,
        a2=s,
        b2=-s * y,
        a3=alpha * beta * s * x,
        b3=-gamma * s * y,
    )


def eight_partition_aggregate(
    partition: EightPartition, theta_ab: float, theta_ac: float
) -> float:
    """Sum of the per-cell bounds Z_i * (1 - cos(theta_ab)*cos(theta_ac)).

    Because the measures sum to 1 this equals 1 - cos(theta_ab)*cos(theta_ac)
    for every valid partition: the right-hand side of the Bell-like
    inequality is measure-independent.
    """
    theta_ab = check_angle(theta_ab, "theta_ab")
    theta_ac = check_angle(theta_ac, "theta_ac")
    bound = 1.0 - math.cos(theta_ab) * math.cos(theta_ac)
    return float(sum(z * bound for z in partition.measures))


# ---------------------------------------------------------------------------
# Model families
# ---------------------------------------------------------------------------


class ThreeScenarioModel(LhvModel):
    """Shared geometry for the standard experiment: three detector directions
    a, b, c measured pairwise as scenarios 1=(a,b), 2=(a,c), 3=(b,c)."""

    def __init__(self, a: Direction, b: Direction, c: Direction) -> None:
        self._pairs = (
            SettingPair(alice=a, bob=b, scenario_id=1),
            SettingPair(alice=a, bob=c, scenario_id=2),
            SettingPair(alice=b, bob=c, scenario_id=3),
        )
        self.theta_ab = angle_between(a, b)
        self.theta_ac = angle_between(a, c)
        self.theta_bc = angle_between(b, c)

    def scenarios(self) -> tuple[SettingPair, ...]:
        return self._pairs

    def _require_known(self, pair: SettingPair) -> SettingPair:
        if not 1 <= pair.scenario_id <= 3:
            raise UnknownScenario(
                f"model {self.name!r} declares scenarios 1..3, got {pair.scenario_id}"
            )
        return pair


class QuantumSingletModel(ThreeScenarioModel):
    """Singlet-statistics oracle: every scenario is an independent inverse-CDF
    draw from the joint table at that scenario's separation angle.

    Not constrained across scenarios; serves as the quantum reference the
    LHV families are compared against.
    """

    name = "qm"

    def sample_lambda(self, scenario: SettingPair, draws: Sequence[float]) -> HiddenVariable:
        self._require_known(scenario)
        return HiddenVariable(
            scenario_tag=scenario.scenario_id,
            s=_sign_from(draws[1]),
            u1=float(draws[2]),
            u2=float(draws[3]),
        )

    def evaluate(self, lam: HiddenVariable, pair: SettingPair) -> OutcomePair:
        self._require_known(pair)
        a = lam.s
        b = a if lam.u1 < _half_angle_sin_sq(pair.theta) else -a
        return OutcomePair(a, b)

    def exact_correlation(self, pair: SettingPair) -> float:
        return -math.cos(self._require_known(pair).theta)

    def evaluate_batch(self, pair: SettingPair, draws: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        self._require_known(pair)
        p_same = _half_angle_sin_sq(pair.theta)
        a = np.where(draws[:, 1] < 0.5, 1, -1).astype(np.int8)
        b = np.where(draws[:, 2] < p_same, a, -a).astype(np.int8)
        return a, b


def factual_model_sample(
    scenario: SettingPair, draws: Sequence[float]
) -> tuple[HiddenVariable, OutcomePair]:
    """One factual trial from three unit uniforms: (sign draw, u1, u2).

    The lambda is tagged with the scenario's own domain slice and the
    outcome pair follows the singlet joint table at the scenario's angle.
    Evaluating the returned lambda against any other scenario raises
    ``SettingMismatch``.
    """
    lam = HiddenVariable(
        scenario_tag=scenario.scenario_id,
        s=_sign_from(draws[0]),
        u1=float(draws[1]),
        u2=float(draws[2]),
    )
    a = lam.s
    b = a if lam.u1 < _half_angle_sin_sq(scenario.theta) else -a
    return lam, OutcomePair(a, b)


class FactualModel(ThreeScenarioModel):
    """Disjoint-domain family: each scenario owns its own slice of lambdas.

    Outcome functions for a setting pair are only defined on that pair's
    slice, so the model refuses cross-scenario evaluation outright; within a
    scenario it reproduces singlet statistics.  Slice weights are configurable
    and default to 1/3 each (they do not affect per-scenario correlations).
    """

    name = "factual"

    def __init__(
        self,
        a: Direction,
        b: Direction,
        c: Direction,
        measures: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3),
    ) -> None:
        super().__init__(a, b, c)
        ms = tuple(float(m) for m in measures)
        if len(ms) != 3 or any(m < 0 for m in ms) or abs(sum(ms) - 1.0) > _TABLE_TOL:
            raise DomainError(f"scenario measures must be nonnegative and sum to 1, got {ms}")
        self.measures = ms

    def sample_lambda(self, scenario: SettingPair, draws: Sequence[float]) -> HiddenVariable:
        self._require_known(scenario)
        lam, _ = factual_model_sample(scenario, draws[1:4])
        return lam

    def evaluate(self, lam: HiddenVariable, pair: SettingPair) -> OutcomePair:
        self._require_known(pair)
        if lam.scenario_tag != pair.scenario_id:
            raise SettingMismatch(
                f"lambda belongs to scenario {lam.scenario_tag}, "
                f"cannot evaluate settings of scenario {pair.scenario_id}"
            )
        a = lam.s
        b = a if lam.u1 < _half_angle_sin_sq(pair.theta) else -a
        return OutcomePair(a, b)

    def exact_correlation(self, pair: SettingPair) -> float:
        return -math.cos(self._require_known(pair).theta)

    def evaluate_batch(self, pair: SettingPair, draws: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        self._require_known(pair)
        p_same = _half_angle_sin_sq(pair.theta)
        a = np.where(draws[:, 1] < 0.5, 1, -1).astype(np.int8)
        b = np.where(draws[:, 2] < p_same, a, -a).astype(np.int8)
        return a, b


class _RecordModel(ThreeScenarioModel):
    """Base for families whose scenarios read off a six-function record."""

    def record(self, lam: HiddenVariable) -> SixFunctionRecord:
        raise NotImplementedError

    def record_batch(self, draws: np.ndarray) -> np.ndarray:
        """Vectorized records: (m, 4) uniforms -> (m, 6) int8 columns
        (a1, b1, a2, b2, a3, b3)."""
        raise NotImplementedError

    def _from_record(self, rec: SixFunctionRecord, scenario_id: int) -> OutcomePair:
        if scenario_id == 1:
            return OutcomePair(rec.a1, rec.b1)
        if scenario_id == 2:
            return OutcomePair(rec.a2, rec.b2)
        return OutcomePair(rec.a3, rec.b3)

    def evaluate(self, lam: HiddenVariable, pair: SettingPair) -> OutcomePair:
        self._require_known(pair)
        return self._from_record(self.record(lam), pair.scenario_id)

    def evaluate_batch(self, pair: SettingPair, draws: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        self._require_known(pair)
        cols = self.record_batch(draws)
        i = 2 * (pair.scenario_id - 1)
        return cols[:, i], cols[:, i + 1]


class BellConstrainedModel(_RecordModel):
    """Three-assumption family: one shared lambda domain, records from
    :func:`bell_constrained_record`.

    Exact correlations: scenario 1 -> -cos(theta_ab), scenario 2 ->
    -cos(theta_ac), scenario 3 -> -cos(theta_ab)*cos(theta_ac).
    """

    name = "bell-constrained"

    def sample_lambda(self, scenario: SettingPair, draws: Sequence[float]) -> HiddenVariable:
        self._require_known(scenario)
        return HiddenVariable(
            scenario_tag=0,
            s=_sign_from(draws[1]),
            u1=float(draws[2]),
            u2=float(draws[3]),
        )

    def record(self, lam: HiddenVariable) -> SixFunctionRecord:
        return bell_constrained_record(lam, self.theta_ab, self.theta_ac)

    def record_batch(self, draws: np.ndarray) -> np.ndarray:
        s = np.where(draws[:, 1] < 0.5, 1, -1).astype(np.int8)
        x = np.where(draws[:, 2] < _half_angle_cos_sq(self.theta_ab), 1, -1).astype(np.int8)
        y = np.where(draws[:, 3] < _half_angle_cos_sq(self.theta_ac), 1, -1).astype(np.int8)
        a3 = s * x
        b3 = -s * y
        return np.column_stack((s, -a3, s, b3, a3, b3))

    def exact_correlation(self, pair: SettingPair) -> float:
        self._require_known(pair)
        e_ab, e_ac, e_bc = bell_constrained_exact(self.theta_ab, self.theta_ac)
        return (e_ab, e_ac, e_bc)[pair.scenario_id - 1]


class EightPartitionModel(_RecordModel):
    """Partition family: lambdas carry a cell tag 1..8 drawn from the cell
    measures, records from :func:`eight_partition_record`.

    The first two scenarios give -cos(theta_ab) and -cos(theta_ac) in every
    cell; the third averages the per-cell values to
    -(sum_i Z_i*alpha_i*beta_i*gamma_i) * cos(theta_ab)*cos(theta_ac).
    """

    name = "eight-partition"

    def __init__(
        self,
        a: Direction,
        b: Direction,
        c: Direction,
        partition: EightPartition | None = None,
    ) -> None:
        super().__init__(a, b, c)
        self.partition = partition if partition is not None else EightPartition.uniform()
        cum = np.cumsum(self.partition.measures)
        cum[-1] = 1.0  # guard the last boundary against rounding
        self._cum = cum
        rel = np.array([CELL_RELATIONS[i] for i in range(1, 9)], dtype=np.int8)
        self._alpha, self._beta, self._gamma = rel[:, 0], rel[:, 1], rel[:, 2]

    def cell_from_draw(self, draw: float) -> int:
        return int(np.searchsorted(self._cum, draw, side="right")) + 1

    def sample_lambda(self, scenario: SettingPair, draws: Sequence[float]) -> HiddenVariable:
        self._require_known(scenario)
        return HiddenVariable(
            scenario_tag=self.cell_from_draw(draws[0]),
            s=_sign_from(draws[1]),
            u1=float(draws[2]),
            u2=float(draws[3]),
        )

    def record(self, lam: HiddenVariable) -> SixFunctionRecord:
        return eight_partition_record(lam.scenario_tag, lam, self.theta_ab, self.theta_ac)

    def record_batch(self, draws: np.ndarray, cell: int | None = None) -> np.ndarray:
        if cell is None:
            idx = np.minimum(
                np.searchsorted(self._cum, draws[:, 0], side="right"), 7
            )
        else:
            if cell not in CELL_RELATIONS:
                raise DomainError(f"cell must be in 1..8, got {cell!r}")
            idx = np.full(len(draws), cell - 1)
        alpha = self._alpha[idx]
        beta = self._beta[idx]
        gamma = self._gamma[idx]
        s = np.where(draws[:, 1] < 0.5, 1, -1).astype(np.int8)
        x = np.where(draws[:, 2] < _half_angle_cos_sq(self.theta_ab), 1, -1).astype(np.int8)
        y = np.where(draws[:, 3] < _half_angle_cos_sq(self.theta_ac), 1, -1).astype(np.int8)
        b2 = -s * y
        return np.column_stack(
            (alpha * s, -alpha * s * x, s, b2, alpha * beta * s * x, -gamma * s * y)
        )

    def exact_correlation(self, pair: SettingPair) -> float:
        self._require_known(pair)
        if pair.scenario_id == 1:
            return -math.cos(self.theta_ab)
        if pair.scenario_id == 2:
            return -math.cos(self.theta_ac)
        signed = sum(
            z * a * b * g
            for z, (a, b, g) in zip(self.partition.measures, CELL_RELATIONS.values())
        )
        return -signed * math.cos(self.theta_ab) * math.cos(self.theta_ac)


_MODEL_NAMES = ("qm", "bell-constrained", "factual", "eight-partition")


def make_model(
    name: str,
    a: Direction,
    b: Direction,
    c: Direction,
    partition: EightPartition | None = None,
) -> LhvModel:
    """Construct a model family by its registry name."""
    if name == "qm":
        return QuantumSingletModel(a, b, c)
    if name == "bell-constrained":
        return BellConstrainedModel(a, b, c)
    if name == "factual":
        return FactualModel(a, b, c)
    if name == "eight-partition":
        return EightPartitionModel(a, b, c, partition=partition)
    raise DomainError(f"unknown model {name!r}; expected one of {_MODEL_NAMES}")
