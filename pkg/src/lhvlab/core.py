"""Detector geometry, hidden-variable space, and the deterministic-model interface.

A local hidden-variable (LHV) model assigns each two-particle trial a shared
variable lambda and maps (lambda, detector settings) to a pair of +-1 spin
outcomes through a pure function.  Everything downstream (model families,
Monte Carlo estimation, inequality checks) is built on the types here.

Lambda is realized as (scenario_tag, s, u1, u2): a discrete sign plus two
unit uniforms.  That is the minimal parameterization sufficient to reproduce
every conditional outcome table used by the model families in
:mod:`lhvlab.models`; richer spaces would add nothing.

All types are immutable after construction and ``evaluate`` is pure, so the
module is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "LhvError",
    "DomainError",
    "RangeError",
    "SettingMismatch",
    "UnknownScenario",
    "Direction",
    "SettingPair",
    "HiddenVariable",
    "OutcomePair",
    "LhvModel",
    "angle_between",
    "evaluate_model",
]

#: Number of unit uniforms every trial consumes (superset across model
#: families; families ignore the draws they do not need).
DRAWS_PER_TRIAL = 4

_UNIT_TOL = 1e-12
_ANGLE_SLACK = 1e-9


class LhvError(Exception):
    """Base error for this package."""


class DomainError(LhvError, ValueError):
    """Input outside its mathematical domain (angle, probability, cell index)."""


class RangeError(LhvError, ValueError):
    """Correlation or weight outside its admissible range."""


class SettingMismatch(LhvError):
    """Lambda belongs to a different measurement scenario than the one requested.

    Raised by models that bind each lambda to the setting pair it was created
    for: outcome functions for scenario i are only defined on that scenario's
    own slice of the hidden-variable space.
    """


class UnknownScenario(LhvError, ValueError):
    """Scenario id not declared by the experiment."""


def check_angle(theta: float, name: str = "theta") -> float:
    """Validate an angle in [0, pi] (1e-9 slack absorbed by clamping)."""
    t = float(theta)
    if not math.isfinite(t) or t < -_ANGLE_SLACK or t > math.pi + _ANGLE_SLACK:
        raise DomainError(f"{name} must lie in [0, pi], got {theta!r}")
    return min(max(t, 0.0), math.pi)


def check_correlation(e: float, name: str = "correlation") -> float:
    """Validate a correlation in [-1, 1] (1e-9 slack absorbed by clamping)."""
    x = float(e)
    if not math.isfinite(x) or abs(x) > 1.0 + _ANGLE_SLACK:
        raise RangeError(f"{name} must lie in [-1, 1], got {e!r}")
    return min(max(x, -1.0), 1.0)


@dataclass(frozen=True, slots=True)
class Direction:
    """Unit 3-vector detector orientation.  The constructor normalizes."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if not math.isfinite(norm) or norm < _UNIT_TOL:
            raise DomainError(f"direction must be nonzero, got {(self.x, self.y, self.z)}")
        object.__setattr__(self, "x", self.x / norm)
        object.__setattr__(self, "y", self.y / norm)
        object.__setattr__(self, "z", self.z / norm)

    @classmethod
    def from_planar_degrees(cls, degrees: float) -> "Direction":
        """Direction in the x-y plane at the given angle from +x (human convention)."""
        rad = math.radians(float(degrees))
        return cls(math.cos(rad), math.sin(rad), 0.0)

    def dot(self, other: "Direction") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def negated(self) -> "Direction":
        return Direction(-self.x, -self.y, -self.z)


def angle_between(d1: Direction, d2: Direction) -> float:
    """Angle in [0, pi] between two unit directions.

    Equivalent to arccos of the clamped dot product but computed as
    atan2(|d1 x d2|, d1 . d2), which stays exact at the parallel and
    antiparallel degeneracies where arccos loses half the mantissa.
    """
    cx = d1.y * d2.z - d1.z * d2.y
    cy = d1.z * d2.x - d1.x * d2.z
    cz = d1.x * d2.y - d1.y * d2.x
    return math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), d1.dot(d2))


@dataclass(frozen=True, slots=True)
class SettingPair:
    """One measurement scenario: Alice's and Bob's detector orientations.

    ``scenario_id`` uniquely identifies the (alice, bob) pair within a single
    experiment description (ids 1..3 for the standard three-scenario setup).
    """

    alice: Direction
    bob: Direction
    scenario_id: int

    def __post_init__(self) -> None:
        if int(self.scenario_id) != self.scenario_id or self.scenario_id < 1:
            raise DomainError(f"scenario_id must be a positive integer, got {self.scenario_id!r}")
        object.__setattr__(self, "scenario_id", int(self.scenario_id))

    @property
    def theta(self) -> float:
        """Separation angle between the two detectors."""
        return angle_between(self.alice, self.bob)


@dataclass(frozen=True, slots=True)
class HiddenVariable:
    """A realized lambda: partition tag, discrete sign, and two unit uniforms.

    ``scenario_tag`` names the partition cell of the owning model that the
    value belongs to (a setting-scenario index for factual models, a relation
    cell for partition models, 0 for models with a single shared domain).
    """

    scenario_tag: int
    s: int
    u1: float
    u2: float

    def __post_init__(self) -> None:
        if self.s not in (-1, 1):
            raise DomainError(f"s must be +1 or -1, got {self.s!r}")
        for name in ("u1", "u2"):
            u = getattr(self, name)
            if not (isinstance(u, (int, float)) and 0.0 <= u < 1.0):
                raise DomainError(f"{name} must lie in [0, 1), got {u!r}")


@dataclass(frozen=True, slots=True)
class OutcomePair:
    """The two +-1 spin results of one trial."""

    a_result: int
    b_result: int

    def __post_init__(self) -> None:
        if self.a_result not in (-1, 1) or self.b_result not in (-1, 1):
            raise DomainError(
                f"outcomes must be +1 or -1, got {(self.a_result, self.b_result)}"
            )

    @property
    def product(self) -> int:
        return self.a_result * self.b_result


class LhvModel(ABC):
    """Deterministic outcome map (lambda, settings) -> (+-1, +-1).

    Contract:

    * ``evaluate`` is a pure function: identical (lambda, settings) always
      yield an identical :class:`OutcomePair`.
    * models that bind lambdas to a scenario raise :class:`SettingMismatch`
      from ``evaluate`` when ``domain_tag(lam)`` does not match the requested
      pair; models with a shared domain never do.
    * ``sample_lambda`` consumes caller-supplied draws (a tuple of at least
      :data:`DRAWS_PER_TRIAL` unit uniforms), so models hold no RNG state.

    ``evaluate_batch`` is the vectorized fast path used by the Monte Carlo
    estimator; the default implementation loops the scalar contract and
    concrete models override it with numpy.  Both paths must agree bit-exactly
    (property-tested).
    """

    name: str = "lhv"

    @abstractmethod
    def scenarios(self) -> tuple[SettingPair, ...]:
        """The setting pairs this model's experiment declares."""

    @abstractmethod
    def sample_lambda(self, scenario: SettingPair, draws: Sequence[float]) -> HiddenVariable:
        """Realize a lambda for one trial of the given scenario from unit uniforms."""

    @abstractmethod
    def evaluate(self, lam: HiddenVariable, pair: SettingPair) -> OutcomePair:
        """Deterministic outcome of measuring ``pair`` on a system with ``lam``."""

    def domain_tag(self, lam: HiddenVariable) -> int:
        """Partition cell the lambda belongs to."""
        return lam.scenario_tag

    def exact_correlation(self, pair: SettingPair) -> float | None:
        """Closed-form E(pair) when the family has one, else None."""
        return None

    def pair(self, scenario_id: int) -> SettingPair:
        for p in self.scenarios():
            if p.scenario_id == scenario_id:
                return p
        raise UnknownScenario(f"scenario {scenario_id} not declared by model {self.name!r}")

    def evaluate_batch(self, pair: SettingPair, draws: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized trials: (m, DRAWS_PER_TRIAL) uniforms -> two int8 arrays of +-1."""
        m = len(draws)
        a = np.empty(m, dtype=np.int8)
        b = np.empty(m, dtype=np.int8)
        for i in range(m):
            lam = self.sample_lambda(pair, tuple(draws[i]))
            out = self.evaluate(lam, pair)
            a[i] = out.a_result
            b[i] = out.b_result
        return a, b


def evaluate_model(model: LhvModel, lam: HiddenVariable, pair: SettingPair) -> OutcomePair:
    """Evaluate one trial; repeated calls with the same inputs are identical.

    Propagates :class:`SettingMismatch` for models that enforce disjoint
    per-scenario lambda domains.
    """
    return model.evaluate(lam, pair)
