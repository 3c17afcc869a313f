"""Exact algebra of multimode superpositions of coherent and number kets.

A state is a finite sum of product terms; each factor of a term is either a
coherent ket ``|alpha>`` or a Fock ket ``|n>``.  Overlaps are evaluated in
closed form:

    <a|b>   = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
    <m|n>   = delta_mn
    <n|a>   = exp(-|a|^2/2) a^n / sqrt(n!)

so no Fock-space truncation enters anywhere in this module.  All values are
double precision; exponents of order exp(-6|a|^2) underflow to zero for
|a| >~ 11, which is acceptable because those cross terms are physically
negligible at such amplitudes.

States are immutable; every operation returns a new state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import DegenerateStateError, ModeMismatchError, StateFormatError

#: Maximum photon number allowed in a Fock factor.  The circuits treated here
#: never hold more than one photon per mode; the cap bounds the combinatorial
#: growth of beam-splitter expansions.
FOCK_CAP = 4

COHERENT = "C"
FOCK = "F"

#: States with norm at or below this are rejected by ``normalize``/``fidelity``.
ZERO_NORM_TOL = 1e-14


@dataclass(frozen=True)
class KetFactor:
    """One single-mode ket: coherent ``|amplitude>`` or Fock ``|photons>``."""

    kind: str
    amplitude: complex = 0j
    photons: int = 0

    def __post_init__(self):
        if self.kind not in (COHERENT, FOCK):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.kind == COHERENT:
            a = complex(self.amplitude)
            if not (math.isfinite(a.real) and math.isfinite(a.imag)):
                raise ValueError("coherent amplitude must be finite")
            object.__setattr__(self, "amplitude", a)
            object.__setattr__(self, "photons", 0)
        else:
            n = int(self.photons)
            if n < 0 or n > FOCK_CAP:
                raise ValueError(f"photon number {n} outside [0, {FOCK_CAP}]")
            object.__setattr__(self, "photons", n)
            object.__setattr__(self, "amplitude", 0j)

    @staticmethod
    def coherent(alpha: complex) -> "KetFactor":
        return KetFactor(COHERENT, amplitude=complex(alpha))

    @staticmethod
    def fock(n: int) -> "KetFactor":
        return KetFactor(FOCK, photons=n)

    @property
    def is_coherent(self) -> bool:
        return self.kind == COHERENT

    @property
    def is_fock(self) -> bool:
        return self.kind == FOCK


def factor_overlap(x: KetFactor, y: KetFactor) -> complex:
    """Single-mode overlap <x|y> for any combination of factor kinds."""
    if x.is_coherent and y.is_coherent:
        a, b = x.amplitude, y.amplitude
        return cmath.exp(
            -0.5 * (a.real * a.real + a.imag * a.imag)
            - 0.5 * (b.real * b.real + b.imag * b.imag)
            + a.conjugate() * b
        )
    if x.is_fock and y.is_fock:
        return 1.0 + 0j if x.photons == y.photons else 0j
    if x.is_fock:  # <n|a>
        a = y.amplitude
        n = x.photons
        return cmath.exp(-0.5 * abs(a) ** 2) * a**n / math.sqrt(math.factorial(n))
    # <a|n> = conj(<n|a>)
    return factor_overlap(y, x).conjugate()


def _factors_close(f: KetFactor, g: KetFactor, eps: float) -> bool:
    if f.kind != g.kind:
        return False
    if f.is_fock:
        return f.photons == g.photons
    return abs(f.amplitude - g.amplitude) <= eps


@dataclass(frozen=True)
class ProductTerm:
    """A coefficient times an ordered product of single-mode kets."""

    coefficient: complex
    factors: tuple[KetFactor, ...]

    def __post_init__(self):
        c = complex(self.coefficient)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("term coefficient must be finite")
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class HybridState:
    """Finite superposition of coherent/Fock product terms over ``modes`` modes.

    ``normalized`` is metadata set by :func:`normalize`; it is preserved by
    unitary elements and dropped by operations that may change the norm.
    """

    modes: int
    terms: tuple[ProductTerm, ...]
    normalized: bool = False

    def __post_init__(self):
        if self.modes < 1:
            raise ValueError("a state needs at least one mode")
        terms = tuple(self.terms)
        for t in terms:
            if len(t.factors) != self.modes:
                raise ModeMismatchError(
                    f"term arity {len(t.factors)} != state modes {self.modes}"
                )
        object.__setattr__(self, "terms", terms)

    @staticmethod
    def coherent(amplitudes: Sequence[complex], coefficient: complex = 1.0) -> "HybridState":
        """Single product term of coherent kets, one per entry."""
        factors = tuple(KetFactor.coherent(a) for a in amplitudes)
        return HybridState(len(factors), (ProductTerm(coefficient, factors),))

    @staticmethod
    def fock(photons: Sequence[int], coefficient: complex = 1.0) -> "HybridState":
        """Single product term of Fock kets, one per entry."""
        factors = tuple(KetFactor.fock(n) for n in photons)
        return HybridState(len(factors), (ProductTerm(coefficient, factors),))

    def term_count(self) -> int:
        return len(self.terms)


def overlap(bra: HybridState, ket: HybridState) -> complex:
    """<bra|ket> summed over all term pairs, factor by factor."""
    if bra.modes != ket.modes:
        raise ModeMismatchError(f"mode counts differ: {bra.modes} vs {ket.modes}")
    total = 0j
    for tb in bra.terms:
        for tk in ket.terms:
            val = tb.coefficient.conjugate() * tk.coefficient
            if val == 0:
                continue
            for fb, fk in zip(tb.factors, tk.factors):
                val *= factor_overlap(fb, fk)
                if val == 0:
                    break
            total += val
    return total


def norm(s: HybridState) -> float:
    """sqrt(<s|s>); the self-overlap is real up to rounding."""
    ov = overlap(s, s)
    return math.sqrt(max(ov.real, 0.0))


def normalize(s: HybridState) -> HybridState:
    """Scale all coefficients uniformly so the norm becomes 1."""
    n = norm(s)
    if n <= ZERO_NORM_TOL:
        raise DegenerateStateError(f"cannot normalize state with norm {n:.3e}")
    inv = 1.0 / n
    terms = tuple(replace(t, coefficient=t.coefficient * inv) for t in s.terms)
    return HybridState(s.modes, terms, normalized=True)


def superpose(a: HybridState, b: HybridState, ca: complex, cb: complex) -> HybridState:
    """ca*a + cb*b as a plain term concatenation; no implicit normalization."""
    if a.modes != b.modes:
        raise ModeMismatchError(f"mode counts differ: {a.modes} vs {b.modes}")
    terms = tuple(replace(t, coefficient=t.coefficient * ca) for t in a.terms) + tuple(
        replace(t, coefficient=t.coefficient * cb) for t in b.terms
    )
    return HybridState(a.modes, terms)


def tensor(a: HybridState, b: HybridState) -> HybridState:
    """Tensor product; term lists combine as a cartesian product."""
    terms = tuple(
        ProductTerm(ta.coefficient * tb.coefficient, ta.factors + tb.factors)
        for ta in a.terms
        for tb in b.terms
    )
    return HybridState(a.modes + b.modes, terms)


def fidelity(a: HybridState, b: HybridState) -> float:
    """|<a|b>|^2 normalized by both self-overlaps; in [0, 1]."""
    if a.modes != b.modes:
        raise ModeMismatchError(f"mode counts differ: {a.modes} vs {b.modes}")
    na = overlap(a, a).real
    nb = overlap(b, b).real
    if na <= ZERO_NORM_TOL**2 or nb <= ZERO_NORM_TOL**2:
        raise DegenerateStateError("fidelity of a zero-norm state is undefined")
    return min(abs(overlap(a, b)) ** 2 / (na * nb), 1.0)


def prune(s: HybridState, eps: float) -> HybridState:
    """Merge terms whose factor lists coincide within ``eps``; drop tiny terms.

    Factor comparison is per-mode absolute amplitude distance (exact photon
    match for Fock factors).  After merging, terms with |coefficient| < eps
    are removed; coherent and Fock kets are unit norm, so the coefficient
    magnitude is the term's full weight.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    groups: list[list] = []  # [representative_factors, coefficient]
    for t in s.terms:
        for g in groups:
            if all(_factors_close(f, gf, eps) for f, gf in zip(t.factors, g[0])):
                g[1] += t.coefficient
                break
        else:
            groups.append([t.factors, t.coefficient])
    kept = tuple(
        ProductTerm(c, f) for f, c in groups if not (abs(c) < eps)
    )
    if not kept:
        # Everything merged away; keep a single zero term so arity survives.
        kept = (ProductTerm(0j, s.terms[0].factors),) if s.terms else ()
    return HybridState(s.modes, kept)


def drop_modes(s: HybridState, modes: Iterable[int]) -> HybridState:
    """Remove modes whose factor is identical across all terms.

    Valid only when each dropped mode is unentangled with the rest, i.e. every
    term carries the same (unit-norm) ket there; otherwise the marginal would
    not be a pure state and a ValueError is raised.
    """
    drop = sorted(set(modes))
    for m in drop:
        if not 0 <= m < s.modes:
            raise ModeMismatchError(f"mode {m} outside 0..{s.modes - 1}")
        ref = s.terms[0].factors[m]
        for t in s.terms[1:]:
            if not _factors_close(t.factors[m], ref, 1e-12):
                raise ValueError(
                    f"mode {m} differs across terms; cannot drop it exactly"
                )
    keep = [m for m in range(s.modes) if m not in drop]
    if not keep:
        raise ValueError("cannot drop every mode")
    terms = tuple(
        ProductTerm(t.coefficient, tuple(t.factors[m] for m in keep)) for t in s.terms
    )
    return HybridState(len(keep), terms, normalized=s.normalized)


# ---------------------------------------------------------------------------
# Plain-text serialization: one term per line,
#   coeff_re coeff_im | kind:value kind:value ...
# with kind C (value "re,im") or F (value integer).
# ---------------------------------------------------------------------------


def _format_factor(f: KetFactor) -> str:
    if f.is_coherent:
        return f"C:{f.amplitude.real!r},{f.amplitude.imag!r}"
    return f"F:{f.photons}"


def dumps_state(s: HybridState) -> str:
    lines = []
    for t in s.terms:
        factors = " ".join(_format_factor(f) for f in t.factors)
        lines.append(f"{t.coefficient.real!r} {t.coefficient.imag!r} | {factors}")
    return "\n".join(lines) + "\n"


def _parse_factor(tok: str) -> KetFactor:
    kind, _, value = tok.partition(":")
    if kind == COHERENT:
        re_s, _, im_s = value.partition(",")
        return KetFactor.coherent(complex(float(re_s), float(im_s)))
    if kind == FOCK:
        return KetFactor.fock(int(value))
    raise StateFormatError(f"unknown factor token {tok!r}")


def loads_state(text: str) -> HybridState:
    terms = []
    arity = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition("|")
        if not sep:
            raise StateFormatError(f"line {ln}: missing '|' separator")
        try:
            re_s, im_s = head.split()
            coeff = complex(float(re_s), float(im_s))
            factors = tuple(_parse_factor(tok) for tok in tail.split())
        except (ValueError, StateFormatError) as exc:
            raise StateFormatError(f"line {ln}: {exc}") from exc
        if not factors:
            raise StateFormatError(f"line {ln}: term has no factors")
        if arity is None:
            arity = len(factors)
        elif len(factors) != arity:
            raise StateFormatError(f"line {ln}: arity {len(factors)} != {arity}")
        terms.append(ProductTerm(coeff, factors))
    if not terms:
        raise StateFormatError("no terms found")
    return HybridState(arity, tuple(terms))
