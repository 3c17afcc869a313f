"""Observables and expectation values on hybrid states.

Displaced parity and displaced threshold
----------------------------------------
Two dichotomic single-mode observables drive all Bell tests here:

* parity after displacement,  Pi(b) = D(b) P D(b)†  with P = sum (-1)^n |n><n|.
  Using P D(-b) P = D(b) this collapses to Pi(b) = D(2b) P, so every matrix
  element reduces to a displacement matrix element.
* threshold (click / no-click) after displacement,
  A(b) = D(b)† (2|0><0| - 1) D(b), whose matrix elements need only
  <x|D(-b)|0> and <0|D(b)|y>.

Note the two conventions conjugate by D from opposite sides; both are kept
exactly as defined (the sign of b is absorbed by setting optimization).

Closed forms for the two-component GHZ-type state
-------------------------------------------------
For N(|a,a,a> +/- |-a,-a,-a>) the three-mode characteristic function and
Wigner function have four-exponential closed forms; the displaced-parity
correlator equals (pi^3/8) times the Wigner function.  The odd (-) case
degenerates as a -> 0 into the single-photon triple
(|100> + |010> + |001>)/sqrt(3); below ``MINUS_ALPHA_CUTOFF`` that exact
limit is used where the closed-form normalization 1/(2 - 2 e^{-6|a|^2})
would blow up.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .elements import KerrXSpec, apply_ux
from .errors import (
    ModeMismatchError,
    SingularNormalizationError,
    UnsupportedFactorError,
)
from .states import HybridState, KetFactor, drop_modes, factor_overlap, normalize, overlap

#: Below this |alpha| the odd GHZ-type closed forms switch to the exact
#: single-photon-triple limit.
MINUS_ALPHA_CUTOFF = 1e-8


class GhzSign(enum.Enum):
    """Relative sign of the two GHZ-type components (+: c1 = c2, -: c1 = -c2)."""

    PLUS = 1
    MINUS = -1


#: One displacement setting per measured mode.
DisplacedSetting = complex
#: One binary rotation choice per measured mode (0: identity, 1: logical X rotation).
TauSetting = int


@dataclass(frozen=True)
class DetectionBranch:
    """One outcome of a threshold detection: click or no-click, with collapse."""

    clicked: bool
    probability: float
    state: HybridState | None  # None when the branch has zero probability


# ---------------------------------------------------------------------------
# Displacement matrix elements between arbitrary factors
# ---------------------------------------------------------------------------


def _disp_coh(zeta: complex, g: complex) -> tuple[complex, complex]:
    """D(zeta)|g> = phase |g + zeta>; returns (phase, new amplitude)."""
    phase = cmath.exp(0.5 * (zeta * g.conjugate() - zeta.conjugate() * g))
    return phase, g + zeta


def _fock_coh(n: int, a: complex) -> complex:
    """<n|a>."""
    return cmath.exp(-0.5 * abs(a) ** 2) * a**n / math.sqrt(math.factorial(n))


def _disp_fock_fock(m: int, zeta: complex, n: int) -> complex:
    """<m|D(zeta)|n> via the normal-ordered finite double sum."""
    zc = zeta.conjugate()
    total = 0j
    for k in range(max(0, n - m), n + 1):
        j = m - n + k  # power of zeta
        total += (-zc) ** k * zeta**j / (
            math.factorial(k) * math.factorial(j) * math.factorial(n - k)
        )
    return (
        cmath.exp(-0.5 * abs(zeta) ** 2)
        * math.sqrt(math.factorial(m) * math.factorial(n))
        * total
    )


def displacement_element(x: KetFactor, zeta: complex, y: KetFactor) -> complex:
    """<x|D(zeta)|y> for any combination of coherent and Fock factors."""
    if y.is_coherent:
        phase, amp = _disp_coh(zeta, y.amplitude)
        return phase * factor_overlap(x, KetFactor.coherent(amp))
    if x.is_coherent:
        # <a|D(zeta)|n> = conj(<n|D(-zeta)|a>)
        return displacement_element(y, -zeta, x).conjugate()
    return _disp_fock_fock(x.photons, zeta, y.photons)


def parity_element(x: KetFactor, beta: complex, y: KetFactor) -> complex:
    """<x|Pi(beta)|y> using Pi(beta) = D(2 beta) P."""
    if y.is_coherent:
        flipped = KetFactor.coherent(-y.amplitude)
        return displacement_element(x, 2.0 * beta, flipped)
    sign = -1.0 if y.photons % 2 else 1.0
    return sign * displacement_element(x, 2.0 * beta, y)


_VACUUM = KetFactor.fock(0)


def threshold_element(x: KetFactor, beta: complex, y: KetFactor) -> complex:
    """<x|A(beta)|y> = 2 <x|D(-beta)|0><0|D(beta)|y> - <x|y>."""
    return (
        2.0
        * displacement_element(x, -beta, _VACUUM)
        * displacement_element(_VACUUM, beta, y)
        - factor_overlap(x, y)
    )


def _expect_product(s: HybridState, settings, element) -> float:
    if len(settings) != s.modes:
        raise ModeMismatchError(
            f"{len(settings)} settings for a {s.modes}-mode state"
        )
    total = 0j
    for tb in s.terms:
        for tk in s.terms:
            val = tb.coefficient.conjugate() * tk.coefficient
            if val == 0:
                continue
            for fb, beta, fk in zip(tb.factors, settings, tk.factors):
                val *= element(fb, complex(beta), fk)
                if val == 0:
                    break
            total += val
    return total.real


def expect_displaced_parity(s: HybridState, settings: Sequence[complex]) -> float:
    """<Pi(b_1) ... Pi(b_N)> on a normalized state; exact term-pair sum."""
    return _expect_product(s, settings, parity_element)


def expect_displaced_threshold(s: HybridState, settings: Sequence[complex]) -> float:
    """<A(b_1) ... A(b_N)> on a normalized state; exact term-pair sum."""
    return _expect_product(s, settings, threshold_element)


# ---------------------------------------------------------------------------
# Closed forms for the two-component GHZ-type state
# ---------------------------------------------------------------------------


def characteristic_ghz(eta: Sequence[complex], alpha: complex, sign: GhzSign) -> complex:
    """Three-mode characteristic function <D(eta1) D(eta2) D(eta3)>.

    All exponents are combined before exponentiation so the cross terms stay
    finite at large |alpha| where exp(-6|alpha|^2) alone would underflow.
    """
    if len(eta) != 3:
        raise ModeMismatchError("three displacement arguments required")
    e1, e2, e3 = (complex(v) for v in eta)
    a = complex(alpha)
    half_sq = 0.5 * (abs(e1) ** 2 + abs(e2) ** 2 + abs(e3) ** 2)
    if sign is GhzSign.MINUS and abs(a) < MINUS_ALPHA_CUTOFF:
        # exact limit: single-photon triple (|100>+|010>+|001>)/sqrt(3)
        tot = e1 + e2 + e3
        return cmath.exp(-half_sq) * (3.0 - abs(tot) ** 2) / 3.0
    ac = a.conjugate()
    s_imag = ((e1 + e2 + e3) * ac).imag * 2.0  # sum(eta ac - conj(eta) a) = 2i Im(...)
    s_real = ((e1 + e2 + e3) * ac).real * 2.0  # sum(eta ac + conj(eta) a)
    six = 6.0 * abs(a) ** 2
    sgn = 1.0 if sign is GhzSign.PLUS else -1.0
    val = (
        cmath.exp(complex(-half_sq, s_imag))
        + cmath.exp(complex(-half_sq, -s_imag))
        + sgn * cmath.exp(-half_sq - six - s_real)
        + sgn * cmath.exp(-half_sq - six + s_real)
    )
    denom = 2.0 + sgn * 2.0 * math.exp(-six)
    return val / denom


def wigner_ghz(beta: Sequence[complex], alpha: complex, sign: GhzSign) -> float:
    """Three-mode Wigner function of the GHZ-type state at phase-space point beta.

    Equals (8 / pi^3) times the displaced-parity correlator.  For the odd
    superposition the normalization diverges as alpha -> 0; callers should use
    the single-photon-triple state below the cutoff.
    """
    if len(beta) != 3:
        raise ModeMismatchError("three phase-space arguments required")
    a = complex(alpha)
    sgn = 1.0 if sign is GhzSign.PLUS else -1.0
    if sign is GhzSign.MINUS and abs(a) < MINUS_ALPHA_CUTOFF:
        raise SingularNormalizationError(
            "odd GHZ-type normalization diverges below |alpha| = 1e-8; "
            "use the single-photon-triple limit state"
        )
    b1, b2, b3 = (complex(v) for v in beta)
    d_minus = sum(abs(b - a) ** 2 for b in (b1, b2, b3))
    d_plus = sum(abs(b + a) ** 2 for b in (b1, b2, b3))
    s_abs = sum(abs(b) ** 2 for b in (b1, b2, b3))
    v = ((b1 + b2 + b3) * a.conjugate()).imag
    six = 6.0 * abs(a) ** 2
    # cross terms: +/- e^{-6|a|^2} * 2 Re exp(-2 sum (b-a)(b+a)*); the real
    # exponent collapses to -2 sum|b|^2 (the 6|a|^2 cancels), phase 4 Im(b a*)
    body = (
        math.exp(-2.0 * d_minus)
        + math.exp(-2.0 * d_plus)
        + sgn * 2.0 * math.exp(-2.0 * s_abs) * math.cos(4.0 * v)
    )
    norm_const = 8.0 / (math.pi**3 * (2.0 + sgn * 2.0 * math.exp(-six)))
    return norm_const * body


def jkl(alpha: complex, beta: complex) -> tuple[float, float, complex]:
    """Single-mode threshold matrix elements between |a>, |-a>, literally:

        J(b) = <a|A(b)|a>   = 2 exp(-|a+b|^2) - 1
        K(b) = <-a|A(b)|-a> = 2 exp(-|a-b|^2) - 1
        L(b) = <a|A(b)|-a>  = exp(-|a+b|^2/2 - |a-b|^2/2 + a conj(b) - conj(a) b)
                              * (2 - exp(-conj(a+b)(a-b)))
    """
    a = complex(alpha)
    b = complex(beta)
    j = 2.0 * math.exp(-abs(a + b) ** 2) - 1.0
    k = 2.0 * math.exp(-abs(a - b) ** 2) - 1.0
    pref = cmath.exp(
        -0.5 * abs(a + b) ** 2
        - 0.5 * abs(a - b) ** 2
        + a * b.conjugate()
        - a.conjugate() * b
    )
    l = pref * (2.0 - cmath.exp(-(a + b).conjugate() * (a - b)))
    return j, k, l


def expect_a_tau(
    s: HybridState, settings: Sequence[TauSetting], alpha: complex
) -> float:
    """Expectation of the rotated threshold observable product.

    Per mode, tau = 1 applies the logical X rotation (displacement-conjugated
    pi-Kerr for amplitude ``alpha``) before the click/no-click readout at the
    origin; tau = 0 measures directly.
    """
    if len(settings) != s.modes:
        raise ModeMismatchError(f"{len(settings)} settings for {s.modes} modes")
    rotated = s
    for mode, tau in enumerate(settings):
        if tau not in (0, 1):
            raise ValueError("tau settings must be 0 or 1")
        if tau:
            rotated = apply_ux(rotated, KerrXSpec(mode, alpha))
    return expect_displaced_threshold(rotated, [0j] * s.modes)


def threshold_detect(s: HybridState, mode: int) -> list[DetectionBranch]:
    """Project one Fock mode onto no-click (n = 0) vs click (n >= 1).

    Returns the two branches with exact probabilities and the collapsed,
    renormalized state on the remaining modes.  The detected mode must hold
    Fock factors in every term; after projection the surviving factor must be
    the same in all terms (otherwise the marginal is not pure); both hold for
    every circuit in this package, which detects 0/1-photon modes only.
    """
    if not 0 <= mode < s.modes:
        raise ModeMismatchError(f"mode {mode} outside 0..{s.modes - 1}")
    for t in s.terms:
        if not t.factors[mode].is_fock:
            raise UnsupportedFactorError(
                "threshold detection collapse is defined for Fock modes only"
            )
    branches = []
    for clicked in (False, True):
        keep = tuple(
            t
            for t in s.terms
            if (t.factors[mode].photons >= 1) == clicked
        )
        if not keep:
            branches.append(DetectionBranch(clicked, 0.0, None))
            continue
        sub = HybridState(s.modes, keep)
        p = overlap(sub, sub).real
        if p <= 1e-28 or s.modes == 1:
            # nothing left to hold a collapsed state (zero weight, or the
            # detected mode was the only one)
            branches.append(DetectionBranch(clicked, max(p, 0.0), None))
            continue
        collapsed = drop_modes(normalize(sub), [mode])
        branches.append(DetectionBranch(clicked, p, collapsed))
    return branches
