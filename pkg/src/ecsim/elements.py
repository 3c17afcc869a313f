"""Unitary optical elements acting on :class:`~ecsim.states.HybridState`.

Beam splitter convention
------------------------
The two-mode mixer is generated by (theta/2) (e^{i phi} a†b - e^{-i phi} b†a)
with reflectivity r = sin(theta/2) and transmittivity t = cos(theta/2).
Conjugating the ladder operators gives the coherent-amplitude map

    |a>|b>  ->  |t a + e^{i phi} r b> |{-e^{-i phi}} r a + t b>

and the matching finite expansion on Fock pairs follows from

    B a† B† = t a† - e^{-i phi} r b†,      B b† B† = e^{i phi} r a† + t b†.

With phi = pi (used by every circuit here) both outputs of a single occupied
input port come out with positive sign.  The same generator exponentiated on
the truncated Fock space (see :mod:`ecsim.fockoracle`) validates this map.

Mixed coherent/Fock beam splitting has no exact finite representation in this
algebra and is rejected.

The displacement phase uses the symmetric splitting
``D(b)|g> = exp((b conj(g) - conj(b) g)/2) |g + b>``.

The single-mode pi-Kerr element implements the exact coherent-state identity

    U |g> = e^{-i pi/4} (|g> + i |-g>) / sqrt(2)

(equivalently the diagonal e^{-i pi n^2 / 2} in the number basis), rather than
evolving the quartic generator.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .errors import PhotonCapError, StateFormatError, UnsupportedFactorError
from .states import FOCK_CAP, HybridState, KetFactor, ProductTerm


@dataclass(frozen=True)
class BeamSplitterSpec:
    theta: float
    phi: float
    mode_a: int
    mode_b: int

    def __post_init__(self):
        if self.mode_a == self.mode_b:
            raise ValueError("beam splitter needs two distinct modes")

    @property
    def reflectivity(self) -> float:
        return math.sin(self.theta / 2.0)

    @property
    def transmittivity(self) -> float:
        return math.cos(self.theta / 2.0)

    @staticmethod
    def from_reflectivity(r: float, phi: float, mode_a: int, mode_b: int) -> "BeamSplitterSpec":
        if not 0.0 <= r <= 1.0:
            raise ValueError("reflectivity must lie in [0, 1]")
        return BeamSplitterSpec(2.0 * math.asin(r), phi, mode_a, mode_b)


@dataclass(frozen=True)
class DisplacementSpec:
    mode: int
    beta: complex

    def __post_init__(self):
        b = complex(self.beta)
        if not (math.isfinite(b.real) and math.isfinite(b.imag)):
            raise ValueError("displacement amplitude must be finite")
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class CrossKerrSpec:
    control: int  # Fock modes only
    target: int   # coherent modes only
    theta: float  # acquired phase per control photon

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("cross-Kerr needs two distinct modes")
        if not -math.pi < self.theta <= math.pi:
            raise ValueError("theta must lie in (-pi, pi]")


@dataclass(frozen=True)
class KerrXSpec:
    """Displacement-conjugated pi-Kerr: a -pi/2 rotation on the {|0>, |alpha>} qubit."""

    mode: int
    alpha: complex

    def __post_init__(self):
        a = complex(self.alpha)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise ValueError("logical amplitude must be finite")
        object.__setattr__(self, "alpha", a)


def _check_mode(s: HybridState, mode: int):
    if not 0 <= mode < s.modes:
        raise ValueError(f"mode {mode} outside 0..{s.modes - 1}")


def _bs_fock_pair(m: int, n: int, t: float, r: float, phi: float):
    """Expansion of the mixer on |m, n>: list of ((p, q), coefficient)."""
    epos = cmath.exp(1j * phi)
    eneg = cmath.exp(-1j * phi)
    acc: dict[tuple[int, int], complex] = {}
    root_mn = math.sqrt(math.factorial(m) * math.factorial(n))
    for k in range(m + 1):
        for l in range(n + 1):
            p = k + l
            q = m + n - p
            c = (
                math.comb(m, k)
                * math.comb(n, l)
                * t**k
                * (-eneg * r) ** (m - k)
                * (epos * r) ** l
                * t ** (n - l)
                * math.sqrt(math.factorial(p) * math.factorial(q))
                / root_mn
            )
            acc[(p, q)] = acc.get((p, q), 0j) + c
    return list(acc.items())


def apply_beam_splitter(s: HybridState, spec: BeamSplitterSpec) -> HybridState:
    _check_mode(s, spec.mode_a)
    _check_mode(s, spec.mode_b)
    t = spec.transmittivity
    r = spec.reflectivity
    epos = cmath.exp(1j * spec.phi)
    eneg = cmath.exp(-1j * spec.phi)
    out_terms: list[ProductTerm] = []
    for term in s.terms:
        fa = term.factors[spec.mode_a]
        fb = term.factors[spec.mode_b]
        if fa.is_coherent and fb.is_coherent:
            a, b = fa.amplitude, fb.amplitude
            new = list(term.factors)
            new[spec.mode_a] = KetFactor.coherent(t * a + epos * r * b)
            new[spec.mode_b] = KetFactor.coherent(-eneg * r * a + t * b)
            out_terms.append(ProductTerm(term.coefficient, tuple(new)))
        elif fa.is_fock and fb.is_fock:
            if fa.photons + fb.photons > FOCK_CAP:
                raise PhotonCapError(
                    f"{fa.photons}+{fb.photons} photons exceed cap {FOCK_CAP}"
                )
            for (p, q), c in _bs_fock_pair(fa.photons, fb.photons, t, r, spec.phi):
                if c == 0:
                    continue
                new = list(term.factors)
                new[spec.mode_a] = KetFactor.fock(p)
                new[spec.mode_b] = KetFactor.fock(q)
                out_terms.append(ProductTerm(term.coefficient * c, tuple(new)))
        else:
            raise UnsupportedFactorError(
                "beam splitter requires both modes coherent or both Fock"
            )
    return HybridState(s.modes, tuple(out_terms), normalized=s.normalized)


def apply_phase_shifter(s: HybridState, mode: int, phi: float) -> HybridState:
    _check_mode(s, mode)
    rot = cmath.exp(1j * phi)
    out_terms = []
    for term in s.terms:
        f = term.factors[mode]
        if f.is_coherent:
            new = list(term.factors)
            new[mode] = KetFactor.coherent(rot * f.amplitude)
            out_terms.append(ProductTerm(term.coefficient, tuple(new)))
        else:
            out_terms.append(
                replace(term, coefficient=term.coefficient * cmath.exp(1j * phi * f.photons))
            )
    return HybridState(s.modes, tuple(out_terms), normalized=s.normalized)


def apply_displacement(s: HybridState, spec: DisplacementSpec) -> HybridState:
    _check_mode(s, spec.mode)
    b = spec.beta
    out_terms = []
    for term in s.terms:
        f = term.factors[spec.mode]
        if not f.is_coherent:
            raise UnsupportedFactorError("displacement target must be coherent")
        g = f.amplitude
        phase = cmath.exp(0.5 * (b * g.conjugate() - b.conjugate() * g))
        new = list(term.factors)
        new[spec.mode] = KetFactor.coherent(g + b)
        out_terms.append(ProductTerm(term.coefficient * phase, tuple(new)))
    return HybridState(s.modes, tuple(out_terms), normalized=s.normalized)


def apply_cross_kerr(s: HybridState, spec: CrossKerrSpec) -> HybridState:
    _check_mode(s, spec.control)
    _check_mode(s, spec.target)
    out_terms = []
    for term in s.terms:
        fc = term.factors[spec.control]
        ft = term.factors[spec.target]
        if not fc.is_fock:
            raise UnsupportedFactorError("cross-Kerr control must be a Fock mode")
        if not ft.is_coherent:
            raise UnsupportedFactorError("cross-Kerr target must be a coherent mode")
        rot = cmath.exp(1j * spec.theta * fc.photons)
        new = list(term.factors)
        new[spec.target] = KetFactor.coherent(rot * ft.amplitude)
        out_terms.append(ProductTerm(term.coefficient, tuple(new)))
    return HybridState(s.modes, tuple(out_terms), normalized=s.normalized)


_KERR_PHASE = cmath.exp(-0.25j * math.pi) / math.sqrt(2.0)


def apply_kerr_pi(s: HybridState, mode: int) -> HybridState:
    """Split every coherent factor per the pi-Kerr cat identity; terms double."""
    _check_mode(s, mode)
    out_terms = []
    for term in s.terms:
        f = term.factors[mode]
        if not f.is_coherent:
            raise UnsupportedFactorError("pi-Kerr acts on coherent modes only")
        keep = list(term.factors)
        flip = list(term.factors)
        flip[mode] = KetFactor.coherent(-f.amplitude)
        out_terms.append(ProductTerm(term.coefficient * _KERR_PHASE, tuple(keep)))
        out_terms.append(ProductTerm(term.coefficient * _KERR_PHASE * 1j, tuple(flip)))
    return HybridState(s.modes, tuple(out_terms), normalized=s.normalized)


def apply_ux(s: HybridState, spec: KerrXSpec) -> HybridState:
    """D(alpha/2) . pi-Kerr . D(-alpha/2) on one mode."""
    half = spec.alpha / 2.0
    s = apply_displacement(s, DisplacementSpec(spec.mode, -half))
    s = apply_kerr_pi(s, spec.mode)
    return apply_displacement(s, DisplacementSpec(spec.mode, half))


ElementSpec = BeamSplitterSpec | DisplacementSpec | CrossKerrSpec | KerrXSpec


def apply_element(s: HybridState, element) -> HybridState:
    if isinstance(element, BeamSplitterSpec):
        return apply_beam_splitter(s, element)
    if isinstance(element, DisplacementSpec):
        return apply_displacement(s, element)
    if isinstance(element, CrossKerrSpec):
        return apply_cross_kerr(s, element)
    if isinstance(element, KerrXSpec):
        return apply_ux(s, element)
    if isinstance(element, tuple) and len(element) == 3 and element[0] == "PS":
        return apply_phase_shifter(s, element[1], element[2])
    raise TypeError(f"unknown element {element!r}")


def apply_circuit(s: HybridState, elements) -> HybridState:
    for e in elements:
        s = apply_element(s, e)
    return s


# ---------------------------------------------------------------------------
# Circuit description files: one element per line,
#   BS theta phi a b | PS mode phi | D mode re im | CK ctrl tgt theta | UX mode re im
# ---------------------------------------------------------------------------


def parse_circuit(text: str):
    elements = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            op, args = tok[0].upper(), tok[1:]
            if op == "BS" and len(args) == 4:
                elements.append(
                    BeamSplitterSpec(float(args[0]), float(args[1]), int(args[2]), int(args[3]))
                )
            elif op == "PS" and len(args) == 2:
                elements.append(("PS", int(args[0]), float(args[1])))
            elif op == "D" and len(args) == 3:
                elements.append(
                    DisplacementSpec(int(args[0]), complex(float(args[1]), float(args[2])))
                )
            elif op == "CK" and len(args) == 3:
                elements.append(CrossKerrSpec(int(args[0]), int(args[1]), float(args[2])))
            elif op == "UX" and len(args) == 3:
                elements.append(
                    KerrXSpec(int(args[0]), complex(float(args[1]), float(args[2])))
                )
            else:
                raise ValueError(f"unknown element record {op!r} with {len(args)} args")
        except (ValueError, IndexError) as exc:
            raise StateFormatError(f"circuit line {ln}: {exc}") from exc
    return elements
