"""Counter-based draw derivation and the correlation estimator."""

import math

import numpy as np
import pytest

from lhvlab import (
    BellConstrainedModel,
    CorrelationEstimate,
    Direction,
    DomainError,
    LhvModel,
    QuantumSingletModel,
    SeedSpec,
    SettingMismatch,
    SettingPair,
    derive_trial_draws,
    estimate_correlation,
    estimate_marginals,
)
from lhvlab.montecarlo import _draw_block


def standard_trio():
    return (
        Direction.from_planar_degrees(0.0),
        Direction.from_planar_degrees(60.0),
        Direction.from_planar_degrees(120.0),
    )


class TestDeriveTrialDraws:
    def test_pure_function_of_inputs(self):
        seed = SeedSpec(123456789, "model/scenario-1")
        assert derive_trial_draws(seed, 42) == derive_trial_draws(seed, 42)

    def test_draws_in_unit_interval(self):
        seed = SeedSpec(7, "range")
        for i in range(200):
            for u in derive_trial_draws(seed, i):
                assert 0.0 <= u < 1.0

    def test_distinct_indices_distinct_tuples(self):
        # full-tuple collision scan over 1e5 trial indices
        block = _draw_block(SeedSpec(99, "collisions"), 0, 100_000)
        assert len(np.unique(block, axis=0)) == 100_000

    def test_streams_differ_by_label_and_seed(self):
        base = derive_trial_draws(SeedSpec(1, "a"), 0)
        assert derive_trial_draws(SeedSpec(1, "b"), 0) != base
        assert derive_trial_draws(SeedSpec(2, "a"), 0) != base

    def test_batch_block_matches_scalar_derivation(self):
        # pins the counter layout: trial i is exactly Philox block i
        seed = SeedSpec(31337, "layout")
        block = _draw_block(seed, 10, 50)
        for offset in (0, 1, 17, 39):
            assert tuple(block[offset]) == derive_trial_draws(seed, 10 + offset)

    def test_negative_index_rejected(self):
        with pytest.raises(DomainError):
            derive_trial_draws(SeedSpec(1, "x"), -1)


class TestEstimateCorrelation:
    def test_parallel_detectors_deterministic(self):
        a, b, c = standard_trio()
        model = QuantumSingletModel(a, a, c)  # scenario 1 at zero separation
        for n in (1, 10, 1000):
            est = estimate_correlation(model, model.pair(1), n, SeedSpec(5, "par"))
            assert est.mean == -1.0
            assert est.stderr == 0.0
            assert est.exact == pytest.approx(-1.0)

    def test_sixty_degrees_within_band(self):
        a, b, c = standard_trio()
        model = QuantumSingletModel(a, b, c)
        est = estimate_correlation(model, model.pair(1), 1_000_000, SeedSpec(11, "sixty"))
        assert est.exact == pytest.approx(-0.5, abs=1e-12)
        assert est.within(4.0)

    def test_constrained_third_scenario_product_of_cosines(self):
        a = Direction.from_planar_degrees(0.0)
        b = Direction.from_planar_degrees(60.0)
        c = Direction.from_planar_degrees(-60.0)  # theta_ab = theta_ac = 60 deg
        model = BellConstrainedModel(a, b, c)
        est = estimate_correlation(model, model.pair(3), 1_000_000, SeedSpec(13, "third"))
        assert est.exact == pytest.approx(-0.25, abs=1e-12)
        assert est.within(4.0)

    def test_stderr_identity(self):
        a, b, c = standard_trio()
        model = QuantumSingletModel(a, b, c)
        est = estimate_correlation(model, model.pair(2), 40_000, SeedSpec(17, "id"))
        assert est.stderr == pytest.approx(
            math.sqrt((1.0 - est.mean**2) / est.n), abs=1e-9
        )
        assert abs(est.mean) <= 1.0

    def test_reproducible_and_worker_invariant(self):
        a, b, c = standard_trio()
        model = BellConstrainedModel(a, b, c)
        seed = SeedSpec(2024, "bell-constrained/scenario-1")
        n = 300_000  # spans several shards
        serial = estimate_correlation(model, model.pair(1), n, seed, workers=1)
        again = estimate_correlation(model, model.pair(1), n, seed, workers=1)
        sharded = estimate_correlation(model, model.pair(1), n, seed, workers=4)
        assert serial.mean == again.mean == sharded.mean
        assert serial.stderr == sharded.stderr

    def test_invalid_trial_count(self):
        a, b, c = standard_trio()
        model = QuantumSingletModel(a, b, c)
        with pytest.raises(DomainError):
            estimate_correlation(model, model.pair(1), 0, SeedSpec(1, "bad"))

    def test_setting_mismatch_propagates(self):
        class MisboundModel(LhvModel):
            name = "misbound"

            def scenarios(self):
                a, b, _ = standard_trio()
                return (SettingPair(alice=a, bob=b, scenario_id=1),)

            def sample_lambda(self, scenario, draws):
                raise AssertionError("unused")

            def evaluate(self, lam, pair):
                raise AssertionError("unused")

            def evaluate_batch(self, pair, draws):
                raise SettingMismatch("lambda bound elsewhere")

        model = MisboundModel()
        with pytest.raises(SettingMismatch):
            estimate_correlation(model, model.scenarios()[0], 10, SeedSpec(1, "mm"))

    def test_estimate_validation(self):
        with pytest.raises(DomainError):
            CorrelationEstimate(mean=1.5, stderr=0.0, n=10)
        with pytest.raises(DomainError):
            CorrelationEstimate(mean=0.0, stderr=-0.1, n=10)
        with pytest.raises(DomainError):
            CorrelationEstimate(mean=0.0, stderr=0.0, n=0)


class TestMarginals:
    @pytest.mark.parametrize("family", ["qm", "bell-constrained", "factual", "eight-partition"])
    def test_unbiased_marginals(self, family):
        from lhvlab import make_model

        a, b, c = standard_trio()
        model = make_model(family, a, b, c)
        n = 1_000_000
        band = 4.0 / math.sqrt(n)
        for pair in model.scenarios():
            ma, mb = estimate_marginals(
                model, pair, n, SeedSpec(23, f"marg/{family}/{pair.scenario_id}")
            )
            assert abs(ma) <= band
            assert abs(mb) <= band


class TestExactVersusMc:
    def test_four_sigma_coverage_over_seeds(self):
        # |mean - exact| <= 4*stderr should hold for ~all of 100 independent
        # seeds (P(|Z|>4) ~ 6e-5); require at least 99
        a, b, c = standard_trio()
        model = QuantumSingletModel(a, b, c)
        pair = model.pair(1)
        hits = sum(
            estimate_correlation(model, pair, 10_000, SeedSpec(seed, "coverage")).within(4.0)
            for seed in range(100)
        )
        assert hits >= 99
