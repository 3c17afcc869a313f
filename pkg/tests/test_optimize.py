"""Unit tests for the multi-start gradient ascent."""

import numpy as np
import pytest

from ecsim.errors import ObjectiveError
from ecsim.optimize import (
    OptimizerConfig,
    default_search_radius,
    maximize,
    sweep_alpha,
)


def quadratic(x):
    return -float(np.sum((x - 0.3) ** 2))


class TestMaximize:
    def test_constant_objective(self):
        res = maximize(lambda x: 1.5, OptimizerConfig(restarts=3, seed=0), dim=4)
        assert res.best_value == 1.5
        assert res.converged

    def test_quadratic_optimum(self):
        res = maximize(quadratic, OptimizerConfig(restarts=4, seed=0), dim=12)
        assert res.best_value == pytest.approx(0.0, abs=1e-6)
        assert np.allclose(res.best_settings, 0.3, atol=1e-3)

    def test_determinism(self):
        cfg = OptimizerConfig(restarts=6, seed=42)
        r1 = maximize(quadratic, cfg, dim=12)
        r2 = maximize(quadratic, cfg, dim=12)
        assert r1.best_value == r2.best_value
        assert np.array_equal(r1.best_settings, r2.best_settings)
        assert r1.iterations == r2.iterations

    def test_seed_changes_draws(self):
        f = lambda x: float(np.sum(np.cos(3 * x)))
        r1 = maximize(f, OptimizerConfig(restarts=2, seed=1, max_iters=5), dim=6)
        r2 = maximize(f, OptimizerConfig(restarts=2, seed=2, max_iters=5), dim=6)
        assert not np.array_equal(r1.best_settings, r2.best_settings)

    def test_monotone_ascent(self):
        seen = []

        def f(x):
            v = quadratic(x)
            seen.append(v)
            return v

        maximize(f, OptimizerConfig(restarts=1, seed=0), dim=4)
        # accepted values are the running maxima of the trace; the trace as a
        # whole includes probe evaluations, so check via the accepted filter
        best = -np.inf
        for v in seen:
            best = max(best, v)
        assert seen[-1] == pytest.approx(best)

    def test_self_consistency(self):
        res = maximize(quadratic, OptimizerConfig(restarts=2, seed=7), dim=5)
        assert quadratic(res.best_settings) == res.best_value

    def test_gradient_accuracy(self):
        from ecsim.optimize import _gradient

        x = np.array([0.1, -0.4, 0.7])
        g = _gradient(quadratic, x, 1e-6)
        assert np.allclose(g, -2 * (x - 0.3), rtol=1e-4)

    def test_non_finite_objective(self):
        def bad(x):
            return float("nan")

        with pytest.raises(ObjectiveError):
            maximize(bad, OptimizerConfig(restarts=1, seed=0), dim=3)

    def test_extra_starts_win(self):
        # a start at the optimum beats anything the tiny random budget finds
        res = maximize(
            quadratic,
            OptimizerConfig(restarts=1, seed=0, max_iters=1),
            dim=12,
            extra_starts=[np.full(12, 0.3)],
        )
        assert res.best_value == pytest.approx(0.0, abs=1e-12)
        assert res.restarts_used == 2

    def test_config_validation(self):
        with pytest.raises(ValueError):
            OptimizerConfig(restarts=0)
        with pytest.raises(ValueError):
            OptimizerConfig(step_shrink=1.5)


class TestRadiusPolicy:
    def test_large_amplitude_scaling(self):
        assert default_search_radius(10.0) == pytest.approx(0.2)
        assert default_search_radius(4.0) == pytest.approx(0.5)

    def test_small_amplitude_cap(self):
        assert default_search_radius(0.01) == pytest.approx(1.2)
        assert default_search_radius(0.0) == pytest.approx(1.2)


class TestSweep:
    def test_empty(self):
        out = sweep_alpha([], lambda a: quadratic, OptimizerConfig(restarts=1, seed=0))
        assert out == []

    def test_deterministic_and_labeled(self):
        alphas = [0.5, 1.0]
        fam = lambda a: (lambda x: -float(np.sum((x - a / 10) ** 2)))
        cfg = OptimizerConfig(restarts=3, seed=5)
        out1 = sweep_alpha(alphas, fam, cfg, dim=6)
        out2 = sweep_alpha(alphas, fam, cfg, dim=6)
        assert [a for a, _ in out1] == alphas
        for (a1, r1), (a2, r2) in zip(out1, out2):
            assert a1 == a2
            assert r1.best_value == r2.best_value
            assert np.array_equal(r1.best_settings, r2.best_settings)

    def test_warm_start_helps(self):
        # with a tiny random budget the warm start carries the optimum forward
        fam = lambda a: (lambda x: -float(np.sum((x - 0.25) ** 2)))
        cfg = OptimizerConfig(restarts=1, max_iters=2000, seed=3)
        out = sweep_alpha([1.0, 1.1, 1.2], fam, cfg, dim=8, scale_radius=False)
        assert out[-1][1].best_value == pytest.approx(0.0, abs=1e-5)

    def test_parity_family_sweep(self):
        # violation grows with amplitude and ends strong
        from ecsim.bell import parity_objective
        from ecsim.measure import GhzSign

        fam = lambda a: parity_objective(a, GhzSign.MINUS)
        cfg = OptimizerConfig(restarts=16, seed=0)
        out = sweep_alpha([0.5, 1.0, 2.0, 5.0, 10.0], fam, cfg)
        values = [r.best_value for _, r in out]
        assert all(b >= a - 0.02 for a, b in zip(values, values[1:]))
        assert values[-1] >= 3.5
