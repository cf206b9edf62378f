"""Geometry, hidden-variable, and model-interface contract tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhvlab import (
    BellConstrainedModel,
    Direction,
    DomainError,
    EightPartitionModel,
    FactualModel,
    HiddenVariable,
    OutcomePair,
    QuantumSingletModel,
    SettingMismatch,
    SettingPair,
    angle_between,
    evaluate_model,
)

X = Direction(1.0, 0.0, 0.0)
Y = Direction(0.0, 1.0, 0.0)


def standard_trio():
    return (
        Direction.from_planar_degrees(0.0),
        Direction.from_planar_degrees(60.0),
        Direction.from_planar_degrees(120.0),
    )


def all_models():
    a, b, c = standard_trio()
    return [
        QuantumSingletModel(a, b, c),
        BellConstrainedModel(a, b, c),
        FactualModel(a, b, c),
        EightPartitionModel(a, b, c),
    ]


unit_vectors = st.tuples(
    st.floats(-1.0, 1.0, allow_nan=False),
    st.floats(-1.0, 1.0, allow_nan=False),
    st.floats(-1.0, 1.0, allow_nan=False),
).filter(lambda v: math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2) > 1e-6)


class TestDirection:
    def test_constructor_normalizes(self):
        d = Direction(3.0, 4.0, 0.0)
        assert abs(d.x**2 + d.y**2 + d.z**2 - 1.0) < 1e-12
        assert d.x == pytest.approx(0.6)

    def test_zero_vector_rejected(self):
        with pytest.raises(DomainError):
            Direction(0.0, 0.0, 0.0)

    def test_planar_degrees(self):
        d = Direction.from_planar_degrees(90.0)
        assert abs(d.x) < 1e-12 and d.y == pytest.approx(1.0)

    @given(unit_vectors)
    @settings(max_examples=200, deadline=None)
    def test_random_directions_unit_norm(self, v):
        d = Direction(*v)
        assert abs(d.x**2 + d.y**2 + d.z**2 - 1.0) < 1e-12


class TestAngleBetween:
    def test_identical_directions(self):
        assert angle_between(X, X) == 0.0

    def test_antipodal_directions(self):
        assert angle_between(X, X.negated()) == pytest.approx(math.pi, abs=1e-12)

    def test_orthogonal_directions(self):
        assert angle_between(X, Y) == pytest.approx(math.pi / 2, abs=1e-12)

    @given(unit_vectors, unit_vectors)
    @settings(max_examples=200, deadline=None)
    def test_symmetry_exact(self, v1, v2):
        d1, d2 = Direction(*v1), Direction(*v2)
        assert angle_between(d1, d2) == angle_between(d2, d1)

    @given(unit_vectors)
    @settings(max_examples=200, deadline=None)
    def test_self_and_negation(self, v):
        d = Direction(*v)
        assert angle_between(d, d) <= 1e-12
        assert abs(angle_between(d, d.negated()) - math.pi) <= 1e-12


class TestHiddenVariableAndOutcome:
    def test_sign_validation(self):
        with pytest.raises(DomainError):
            HiddenVariable(scenario_tag=1, s=0, u1=0.5, u2=0.5)

    def test_uniform_range_validation(self):
        with pytest.raises(DomainError):
            HiddenVariable(scenario_tag=1, s=1, u1=1.0, u2=0.5)
        with pytest.raises(DomainError):
            HiddenVariable(scenario_tag=1, s=1, u1=0.5, u2=-0.1)

    def test_outcome_validation(self):
        with pytest.raises(DomainError):
            OutcomePair(2, 1)
        assert OutcomePair(1, -1).product == -1

    def test_setting_pair_scenario_id(self):
        with pytest.raises(DomainError):
            SettingPair(alice=X, bob=Y, scenario_id=0)


class TestModelInterface:
    def test_determinism_bit_exact(self):
        # 10^4 random (lambda, pair) inputs across the families
        rng = np.random.default_rng(7)
        models = all_models()
        per_model = 10_000 // len(models)
        for model in models:
            pairs = model.scenarios()
            for _ in range(per_model):
                pair = pairs[rng.integers(len(pairs))]
                lam = model.sample_lambda(pair, tuple(rng.random(4)))
                first = model.evaluate(lam, pair)
                second = model.evaluate(lam, pair)
                assert first == second
                assert first.a_result in (-1, 1) and first.b_result in (-1, 1)

    def test_factual_lambda_from_scenario_one_on_scenario_two(self):
        a, b, c = standard_trio()
        model = FactualModel(a, b, c)
        lam = model.sample_lambda(model.pair(1), (0.1, 0.2, 0.3, 0.4))
        assert model.domain_tag(lam) == 1
        with pytest.raises(SettingMismatch):
            evaluate_model(model, lam, model.pair(2))

    def test_factual_same_scenario_is_deterministic(self):
        a, b, c = standard_trio()
        model = FactualModel(a, b, c)
        lam = model.sample_lambda(model.pair(1), (0.9, 0.2, 0.3, 0.4))
        out = evaluate_model(model, lam, model.pair(1))
        assert out == evaluate_model(model, lam, model.pair(1))

    def test_bell_constrained_hand_traced_threshold(self):
        # u1 = u2 = 0 falls below both thresholds whenever cos^2(theta/2) > 0:
        # a3 = s so the first scenario yields (s, -s) = (+1, -1)
        a, b, c = X, Y, Direction(0.0, 0.0, 1.0)  # theta_ab = theta_ac = pi/2
        model = BellConstrainedModel(a, b, c)
        lam = HiddenVariable(scenario_tag=0, s=1, u1=0.0, u2=0.0)
        out = evaluate_model(model, lam, model.pair(1))
        assert (out.a_result, out.b_result) == (1, -1)

    def test_unknown_scenario_rejected(self):
        a, b, c = standard_trio()
        model = QuantumSingletModel(a, b, c)
        from lhvlab import UnknownScenario

        with pytest.raises(UnknownScenario):
            model.pair(4)
