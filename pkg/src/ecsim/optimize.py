"""Multi-start steepest-ascent maximization over flat real parameter vectors.

Gradient ascent with central finite-difference gradients and a backtracking
step control, restarted from uniform random points in a box.  The landscape
(a handful of Gaussians in 12 dimensions) has many local maxima; restarts,
not cleverness, find the good ones.  Everything is deterministic for a fixed
seed: restarts draw from one seeded generator, ties break toward the lowest
start index, and re-evaluating the objective at the returned point reproduces
the returned value exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ObjectiveError

_MIN_STEP = 1e-14


def default_search_radius(alpha: complex) -> float:
    """Start-box half-width for Bell-setting searches at amplitude ``alpha``.

    Large-amplitude optima sit at settings of order 1/|alpha| (the correlator
    phases go like |alpha| * setting), hence the 2/|alpha| scaling.  Small
    amplitudes want order-one settings; anything much beyond ~1.2 lands on
    the saturated plateau where every click probability is 0 or 1 and the
    gradient vanishes, so the box is capped there.  Ascent itself is not
    box-constrained; only the restart draws are.
    """
    return min(2.0 / max(abs(complex(alpha)), 0.5), 1.2)


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 64
    max_iters: int = 2000
    step_init: float = 0.1
    step_shrink: float = 0.5
    grad_eps: float = 1e-6
    conv_tol: float = 1e-9
    seed: int = 0
    search_radius: float = 1.0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if not 0.0 < self.step_shrink < 1.0:
            raise ValueError("step_shrink must lie in (0, 1)")
        if min(self.step_init, self.grad_eps, self.conv_tol, self.search_radius) <= 0:
            raise ValueError("step sizes, tolerances and radius must be positive")

    def with_alpha_radius(self, alpha: complex) -> "OptimizerConfig":
        return replace(self, search_radius=default_search_radius(alpha))


@dataclass(frozen=True)
class OptResult:
    best_value: float
    best_settings: np.ndarray  # flat parameter vector at the optimum
    iterations: int            # accepted ascent steps of the winning start
    restarts_used: int
    converged: bool


def _check_value(v: float) -> float:
    if not math.isfinite(v):
        raise ObjectiveError(f"objective returned non-finite value {v!r}")
    return v


def _gradient(f, x: np.ndarray, eps: float) -> np.ndarray:
    g = np.empty_like(x)
    for i in range(x.size):
        xi = x[i]
        x[i] = xi + eps
        hi = _check_value(f(x))
        x[i] = xi - eps
        lo = _check_value(f(x))
        x[i] = xi
        g[i] = (hi - lo) / (2.0 * eps)
    return g


def _ascend(f, x0: np.ndarray, cfg: OptimizerConfig):
    """One gradient-ascent run; returns (value, point, accepted_steps, converged)."""
    x = np.array(x0, dtype=float)
    fx = _check_value(f(x))
    step = cfg.step_init
    accepted = 0
    for _ in range(cfg.max_iters):
        g = _gradient(f, x, cfg.grad_eps)
        gnorm = float(np.linalg.norm(g))
        if gnorm == 0.0:
            return fx, x, accepted, True
        d = g / gnorm
        s = step
        fc = fx
        while s >= _MIN_STEP:
            cand = x + s * d
            fc = _check_value(f(cand))
            if fc > fx:
                break
            s *= cfg.step_shrink
        else:
            return fx, x, accepted, True  # no uphill step exists at this scale
        gain = fc - fx
        x, fx = cand, fc
        accepted += 1
        step = min(s / cfg.step_shrink, cfg.step_init)
        if gain < cfg.conv_tol:
            return fx, x, accepted, True
    return fx, x, accepted, False


def maximize(
    objective: Callable[[np.ndarray], float],
    config: OptimizerConfig,
    dim: int = 12,
    extra_starts: Sequence[Sequence[float]] = (),
) -> OptResult:
    """Best local maximum over ``config.restarts`` random starts.

    ``extra_starts`` are tried first (warm starts for sweeps); they count
    toward ``restarts_used`` but not toward the random budget.
    """
    rng = np.random.default_rng(config.seed)
    starts = [np.asarray(s, dtype=float) for s in extra_starts]
    for s in starts:
        if s.shape != (dim,):
            raise ValueError(f"start point must have shape ({dim},)")
    starts.extend(
        rng.uniform(-config.search_radius, config.search_radius, dim)
        for _ in range(config.restarts)
    )
    best = None
    for x0 in starts:
        fx, x, iters, conv = _ascend(objective, x0, config)
        if best is None or fx > best[0]:
            best = (fx, x, iters, conv)
    fx, x, iters, conv = best
    # pin the invariant best_value == objective(best_settings) exactly
    fx = _check_value(objective(x))
    return OptResult(
        best_value=fx,
        best_settings=x,
        iterations=iters,
        restarts_used=len(starts),
        converged=conv,
    )


def _child_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(1)[0])


def sweep_alpha(
    alphas: Iterable[float],
    objective_family: Callable[[float], Callable[[np.ndarray], float]],
    config: OptimizerConfig,
    dim: int = 12,
    warm_start: bool = True,
    scale_radius: bool = True,
) -> list[tuple[float, OptResult]]:
    """Per-amplitude maximization, optionally warm-started from the previous
    optimum.  Each amplitude gets its own deterministic child seed, so the
    sweep is reproducible and independent of chunking."""
    results: list[tuple[float, OptResult]] = []
    prev = None
    for i, a in enumerate(alphas):
        cfg = replace(config, seed=_child_seed(config.seed, i))
        if scale_radius:
            cfg = cfg.with_alpha_radius(a)
        extra = [prev] if (warm_start and prev is not None) else []
        res = maximize(objective_family(a), cfg, dim=dim, extra_starts=extra)
        results.append((float(a), res))
        prev = res.best_settings
    return results
