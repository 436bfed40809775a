"""Tests for annealing and Adam."""

import math

import numpy as np
import pytest

from topojscc.errors import DomainError, GradientError
from topojscc.training import AdamState, adam_step, anneal


class TestAnneal:
    def test_starts_at_zero(self):
        assert anneal(1e-4, 0, 10) == 0.0

    def test_one_time_constant(self):
        assert anneal(2.0, 10, 10) == pytest.approx(2.0 * (1 - math.exp(-1)))
        assert anneal(1.0, 10, 10) == pytest.approx(0.6321, abs=1e-4)

    def test_asymptote(self):
        assert abs(anneal(1.0, 140, 10) - 1.0) < 1e-6

    def test_monotone(self):
        values = [anneal(1.0, t, 5) for t in range(20)]
        assert values == sorted(values)

    @pytest.mark.parametrize("T", [0.0, -1.0])
    def test_non_positive_time_constant(self, T):
        with pytest.raises(DomainError):
            anneal(1.0, 1, T)

    def test_negative_epoch(self):
        with pytest.raises(DomainError):
            anneal(1.0, -1, 10)


class TestAdam:
    def test_first_step_moves_by_learning_rate(self):
        params, state = adam_step({"w": np.zeros(1)}, {"w": np.ones(1)}, AdamState(), lr=1e-3)
        assert params["w"][0] == pytest.approx(-1e-3, rel=1e-6)
        assert state.step == 1

    def test_zero_gradient_keeps_parameters(self):
        params, state = {"w": np.array([0.5, -2.0])}, AdamState()
        for _ in range(5):
            params, state = adam_step(params, {"w": np.zeros(2)}, state, lr=0.1)
        assert np.array_equal(params["w"], [0.5, -2.0])

    def test_missing_gradient_treated_as_zero(self):
        params, _ = adam_step({"w": np.ones(2), "b": np.ones(1)}, {"w": np.ones(2)}, AdamState(), lr=0.1)
        assert np.array_equal(params["b"], [1.0])

    def test_identical_runs_identical_trajectories(self, rng):
        grads = [{"w": rng.normal(size=3)} for _ in range(4)]

        def run():
            params, state = {"w": np.zeros(3)}, AdamState()
            for g in grads:
                params, state = adam_step(params, g, state, lr=0.01)
            return params["w"]

        assert np.array_equal(run(), run())

    def test_nan_gradient_aborts(self):
        params = {"encoder.0.weight": np.zeros(3)}
        state = AdamState()
        with pytest.raises(GradientError, match="encoder.0.weight"):
            adam_step(params, {"encoder.0.weight": np.array([0.0, np.nan, 1.0])}, state, lr=0.1)
        assert state.step == 0

    def test_does_not_mutate_inputs(self):
        w = np.zeros(2)
        adam_step({"w": w}, {"w": np.ones(2)}, AdamState(), lr=0.1)
        assert not w.any()
