"""Three-party Bell-Mermin functions and violation-threshold search.

Every Bell-Mermin function is the magnitude of the same four-correlator
combination (one unprimed triple minus the three mixed triples):

    BM = |E(s1,s2,s3) - E(s1,s2',s3') - E(s1',s2,s3') - E(s1',s2',s3)|

bounded by 2 for local hidden-variable models and by 4 quantum mechanically.
Settings are displacement amplitudes (parity and threshold readouts) or
binary rotation choices (the logical-qubit readout on the symmetric
three-mode state with one excited coherent mode per branch).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import BracketError, DegenerateStateError
from .measure import GhzSign, expect_a_tau
from .states import HybridState, normalize, superpose


@dataclass(frozen=True)
class BellSettings:
    """Six displacement settings: three unprimed and three primed (12 reals)."""

    unprimed: tuple[complex, complex, complex]
    primed: tuple[complex, complex, complex]

    def __post_init__(self):
        u = tuple(complex(v) for v in self.unprimed)
        p = tuple(complex(v) for v in self.primed)
        if len(u) != 3 or len(p) != 3:
            raise ValueError("three unprimed and three primed settings required")
        for v in u + p:
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError("settings must be finite")
        object.__setattr__(self, "unprimed", u)
        object.__setattr__(self, "primed", p)

    def to_vector(self) -> np.ndarray:
        out = np.empty(12, dtype=float)
        for i, v in enumerate(self.unprimed + self.primed):
            out[2 * i] = v.real
            out[2 * i + 1] = v.imag
        return out

    @staticmethod
    def from_vector(x: Sequence[float]) -> "BellSettings":
        x = np.asarray(x, dtype=float)
        if x.shape != (12,):
            raise ValueError("settings vector must hold 12 reals")
        vals = tuple(complex(x[2 * i], x[2 * i + 1]) for i in range(6))
        return BellSettings(vals[:3], vals[3:])

    @staticmethod
    def zero() -> "BellSettings":
        return BellSettings((0j, 0j, 0j), (0j, 0j, 0j))


@dataclass(frozen=True)
class TauBellSettings:
    """Six binary rotation choices, one triple unprimed and one primed."""

    unprimed: tuple[int, int, int]
    primed: tuple[int, int, int]

    def __post_init__(self):
        u = tuple(int(v) for v in self.unprimed)
        p = tuple(int(v) for v in self.primed)
        if len(u) != 3 or len(p) != 3 or any(v not in (0, 1) for v in u + p):
            raise ValueError("tau settings are triples over {0, 1}")
        object.__setattr__(self, "unprimed", u)
        object.__setattr__(self, "primed", p)


#: The settings pair whose combination reproduces the closed-form curve.
CANONICAL_TAU = TauBellSettings((0, 0, 0), (1, 1, 1))

#: Mermin sign pattern: indices into (s1,s2,s3,s1',s2',s3') per correlator.
MERMIN_PATTERNS = ((0, 1, 2), (0, 4, 5), (3, 1, 5), (3, 4, 2))


def mermin_combination(correlator: Callable[..., float], settings) -> float:
    """|E(...)| combination for any three-argument correlator and settings.

    ``settings`` may be a :class:`BellSettings`/:class:`TauBellSettings` or a
    plain 6-sequence of per-party settings.
    """
    if isinstance(settings, (BellSettings, TauBellSettings)):
        pool = tuple(settings.unprimed) + tuple(settings.primed)
    else:
        pool = tuple(settings)
        if len(pool) != 6:
            raise ValueError("six settings required")
    e = [correlator(pool[i], pool[j], pool[k]) for i, j, k in MERMIN_PATTERNS]
    return abs(e[0] - e[1] - e[2] - e[3])


def _as_vector(settings) -> np.ndarray:
    if isinstance(settings, BellSettings):
        return settings.to_vector()
    return np.ascontiguousarray(settings, dtype=float)


def bm_parity(alpha: complex, sign: GhzSign, settings) -> float:
    """Bell-Mermin value with displaced-parity readouts on the GHZ-type state."""
    return kernels.mermin_parity(complex(alpha), sign is GhzSign.MINUS, _as_vector(settings))


def bm_threshold(alpha: complex, c1: complex, c2: complex, settings) -> float:
    """Bell-Mermin value with displaced-threshold readouts on c1|a..> + c2|-a..>."""
    if c1 == 0 and c2 == 0:
        raise DegenerateStateError("both coefficients are zero")
    try:
        return kernels.mermin_threshold(
            complex(alpha), complex(c1), complex(c2), _as_vector(settings)
        )
    except ValueError as exc:
        raise DegenerateStateError(str(exc)) from exc


def parity_objective(alpha: complex, sign: GhzSign, kernel=None) -> Callable[[np.ndarray], float]:
    """12-vector objective for settings optimization of :func:`bm_parity`."""
    mod = kernel if kernel is not None else kernels
    a = complex(alpha)
    minus = sign is GhzSign.MINUS
    fn = mod.mermin_parity

    def objective(x: np.ndarray) -> float:
        return fn(a, minus, x)

    return objective


def threshold_objective(
    alpha: complex, c1: complex, c2: complex, kernel=None
) -> Callable[[np.ndarray], float]:
    """12-vector objective for settings optimization of :func:`bm_threshold`."""
    mod = kernel if kernel is not None else kernels
    a, w1, w2 = complex(alpha), complex(c1), complex(c2)
    # validate the coefficient pair once, outside the hot loop
    bm_threshold(a, w1, w2, np.zeros(12))
    fn = mod.mermin_threshold

    def objective(x: np.ndarray) -> float:
        return fn(a, w1, w2, x)

    return objective


def symmetric_w_state(alpha: complex) -> HybridState:
    """Normalized (|a,0,0> + |0,a,0> + |0,0,a>)/sqrt(3 + 6 e^{-|a|^2})."""
    a = complex(alpha)
    s = superpose(
        superpose(
            HybridState.coherent([a, 0, 0]),
            HybridState.coherent([0, a, 0]),
            1.0,
            1.0,
        ),
        HybridState.coherent([0, 0, a]),
        1.0,
        1.0,
    )
    return normalize(s)


def bm_w_generic(alpha: float, settings: TauBellSettings) -> float:
    """Bell-Mermin value from rotated threshold readouts, by state algebra."""
    a = float(alpha)
    state = symmetric_w_state(a)

    def corr(t1, t2, t3):
        return expect_a_tau(state, (t1, t2, t3), a)

    return mermin_combination(corr, settings)


def bm_w_closed(alpha: float) -> float:
    """Closed form of :func:`bm_w_generic` at the canonical settings.

    Written with every exponential decaying (numerator and denominator both
    scaled by e^{-alpha^2}) so it stays finite for any real alpha:

        BM = |3 - 6 E + 7 E^2 + 2 E^3| / (1 + 2 E),   E = e^{-alpha^2}.
    """
    e = math.exp(-float(alpha) ** 2)
    return abs(3.0 - 6.0 * e + 7.0 * e * e + 2.0 * e * e * e) / (1.0 + 2.0 * e)


def find_violation_onset(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> float:
    """Bisect for the amplitude where ``f`` crosses the classical bound 2.

    Requires the bound to be bracketed: (f(lo) - 2) and (f(hi) - 2) must not
    share a strict sign.  Returns the bracket midpoint once its width is at
    most ``tol``.
    """
    if not lo < hi:
        raise BracketError("need lo < hi")
    g_lo = f(lo) - 2.0
    g_hi = f(hi) - 2.0
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        raise BracketError(
            f"bound 2 not bracketed: f(lo)-2 = {g_lo:.3e}, f(hi)-2 = {g_hi:.3e}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = f(mid) - 2.0
        if g_mid == 0.0:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
