"""Generation pipelines and canonical reference states.

GHZ-type chain
--------------
A single-mode cat (|sqrt(N) a> +/- |-sqrt(N) a>, normalized) feeds a chain of
beam splitters with reflectivities 1/sqrt(N), 1/sqrt(N-1), ..., 1/sqrt(2),
peeling off one amplitude-``a`` mode at each step.  With the mixer phase pi
and the occupied mode in the first port, all output amplitudes come out
positive, so the result matches the reference state exactly (not only up to
local phases).

Heralded W-type circuit
-----------------------
Six modes: a single photon split over three Fock modes with squared weights
(2/5, 2/5, 1/5); a coherent source |sqrt(3) g> split into |g, g, g>; one
cross-Kerr coupling per photon/field pair rotating the field amplitude by
theta per photon; then two 50:50 mixers recombine the photon modes and each
detector click heralds one field-state branch.

The two mixers induce the single-photon unitary with rows

    A: (1, -1, 0)/sqrt(2),   B: (1/2, 1/2, -1/sqrt(2)),   C: (1/2, 1/2, 1/sqrt(2))

so with photon weights (sqrt(2), sqrt(2), 1)/sqrt(5) the C row heralds the
fully symmetric three-branch sum and the B row the same sum with the third
branch flipped.  A 3x3 unitary cannot give two identical rows, so exactly one
branch is symmetric; both three-branch outcomes are W-type (they differ by
one sign, which the classifier reports).  With E = exp(-4 |a|^2) and
a = g (e^{i theta} - 1)/2 the exact click probabilities are

    P(A) = (2 - 2 E)/5,   P(B) = (3 - 2 E)/10,   P(C) = (3 + 6 E)/10,

approaching 2/5, 3/10, 3/10 for large amplitudes.  The optional final step
displaces every field mode by x = -(g + g e^{i theta})/2, mapping the
three-branch outcomes onto the symmetric reference form with +/- a
amplitudes (the two-mode branch gets the same displacement on its first two
modes only).  Displacements are local, so they never change which branches
are W-type.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .elements import (
    BeamSplitterSpec,
    CrossKerrSpec,
    DisplacementSpec,
    apply_beam_splitter,
    apply_cross_kerr,
    apply_displacement,
)
from .errors import DegenerateStateError
from .measure import GhzSign, threshold_detect
from .states import HybridState, drop_modes, fidelity, normalize, superpose, tensor

_BS_PHASE = math.pi  # mixer phase used by every chain here

#: Representatives of the four sign classes of three-term references
#: (global sign is irrelevant).
SIGN_PATTERNS = ((1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1))

_W_MATCH_TOL = 1e-10


@dataclass(frozen=True)
class WCircuitSpec:
    gamma: complex            # per-mode coherent amplitude after splitting
    theta: float              # cross-Kerr phase per control photon
    apply_final_displacement: bool = True

    def __post_init__(self):
        g = complex(self.gamma)
        if not (math.isfinite(g.real) and math.isfinite(g.imag)):
            raise ValueError("gamma must be finite")
        if self.theta == 0.0:
            raise ValueError("theta = 0 leaves the branches indistinguishable")
        object.__setattr__(self, "gamma", g)

    @property
    def effective_alpha(self) -> complex:
        return self.gamma * (cmath.exp(1j * self.theta) - 1.0) / 2.0


@dataclass(frozen=True)
class HeraldedOutcome:
    detector: str                 # "A", "B" or "C"
    probability: float
    state: HybridState            # collapsed field state, 3 modes, normalized
    is_w_type: bool
    sign_pattern: tuple[int, int, int] | None
    reference_fidelity: float | None = None  # vs the matched signed reference


def css(alpha: complex, c1: complex, c2: complex) -> HybridState:
    """Normalized single-mode cat c1|alpha> + c2|-alpha>."""
    if c1 == 0 and c2 == 0:
        raise DegenerateStateError("both coefficients are zero")
    a = complex(alpha)
    s = superpose(
        HybridState.coherent([a]), HybridState.coherent([-a]), c1, c2
    )
    return normalize(s)


def ghz_reference(alpha: complex, sign: GhzSign, n_modes: int = 3) -> HybridState:
    """Normalized |a,...,a> +/- |-a,...,-a> over ``n_modes`` modes."""
    if n_modes < 2:
        raise ValueError("need at least two modes")
    a = complex(alpha)
    s = superpose(
        HybridState.coherent([a] * n_modes),
        HybridState.coherent([-a] * n_modes),
        1.0,
        1.0 if sign is GhzSign.PLUS else -1.0,
    )
    return normalize(s)


def generate_ghz(alpha: complex, sign: GhzSign, n_modes: int = 3) -> HybridState:
    """GHZ-type state from a cat of amplitude sqrt(N) alpha and N-1 splitters."""
    if n_modes < 2:
        raise ValueError("need at least two modes")
    a = complex(alpha)
    source = css(math.sqrt(n_modes) * a, 1.0, 1.0 if sign is GhzSign.PLUS else -1.0)
    s = tensor(source, HybridState.coherent([0j] * (n_modes - 1)))
    for k in range(1, n_modes):
        r = 1.0 / math.sqrt(n_modes - k + 1)
        s = apply_beam_splitter(s, BeamSplitterSpec.from_reflectivity(r, _BS_PHASE, 0, k))
    return s


def w_reference(alpha: complex, a1: complex, a2: complex, a3: complex) -> HybridState:
    """Normalized a1|a,-a,-a> + a2|-a,a,-a> + a3|-a,-a,a>."""
    if a1 == 0 and a2 == 0 and a3 == 0:
        raise DegenerateStateError("all coefficients are zero")
    a = complex(alpha)
    branches = (
        (a1, [a, -a, -a]),
        (a2, [-a, a, -a]),
        (a3, [-a, -a, a]),
    )
    s = None
    for coeff, amps in branches:
        if coeff == 0:
            continue
        piece = HybridState.coherent(amps, coefficient=coeff)
        s = piece if s is None else superpose(s, piece, 1.0, 1.0)
    return normalize(s)


def classify_w_outcome(
    outcome: HeraldedOutcome, alpha: complex
) -> tuple[bool, tuple[int, int, int] | None]:
    """Match a heralded 3-mode state against the signed three-term references.

    Tries the four inequivalent sign patterns; a fidelity-1 match (within
    1e-10) identifies the state as W-type with that pattern.
    """
    return _classify_state(outcome.state, alpha)


def _classify_state(state: HybridState, alpha: complex):
    for pattern in SIGN_PATTERNS:
        ref = w_reference(alpha, *pattern)
        if fidelity(state, ref) >= 1.0 - _W_MATCH_TOL:
            return True, pattern
    return False, None


def pre_detection_state(spec: WCircuitSpec) -> HybridState:
    """Six-mode state just before the detectors: photon modes 0-2, field 3-5."""
    photon = HybridState.fock([0, 0, 1])  # the photon rides the chained port
    field = HybridState.coherent([math.sqrt(3.0) * spec.gamma, 0j, 0j])
    s = tensor(photon, field)
    # single-photon splitting: squared weights (2/5, 2/5, 1/5) on modes (0,1,2)
    s = apply_beam_splitter(s, BeamSplitterSpec.from_reflectivity(math.sqrt(2.0 / 5.0), _BS_PHASE, 2, 0))
    s = apply_beam_splitter(s, BeamSplitterSpec.from_reflectivity(math.sqrt(2.0 / 3.0), _BS_PHASE, 2, 1))
    # coherent splitting: |sqrt(3) g> -> |g, g, g> on modes (3,4,5)
    s = apply_beam_splitter(s, BeamSplitterSpec.from_reflectivity(1.0 / math.sqrt(3.0), _BS_PHASE, 3, 4))
    s = apply_beam_splitter(s, BeamSplitterSpec.from_reflectivity(1.0 / math.sqrt(2.0), _BS_PHASE, 3, 5))
    # one cross-Kerr coupling per photon/field pair
    for ctrl, tgt in ((0, 3), (1, 4), (2, 5)):
        s = apply_cross_kerr(s, CrossKerrSpec(ctrl, tgt, spec.theta))
    # 50:50 recombination of the photon modes
    s = apply_beam_splitter(s, BeamSplitterSpec(math.pi / 2.0, _BS_PHASE, 0, 1))
    s = apply_beam_splitter(s, BeamSplitterSpec(math.pi / 2.0, _BS_PHASE, 1, 2))
    return s


def _displace_all(state: HybridState, x: complex, modes) -> HybridState:
    for m in modes:
        state = apply_displacement(state, DisplacementSpec(m, x))
    return state


def run_w_circuit(spec: WCircuitSpec) -> list[HeraldedOutcome]:
    """Exact branch analysis of the heralded circuit: outcomes A, B, C.

    Exactly one detector fires (one photon total), so the three click events
    are exclusive and exhaustive; their probabilities sum to 1.
    """
    s = normalize(pre_detection_state(spec))
    x = -(spec.gamma + spec.gamma * cmath.exp(1j * spec.theta)) / 2.0
    alpha = spec.effective_alpha

    outcomes = []
    remaining = s
    weight = 1.0  # probability mass of the no-click-so-far branch
    for detector in ("A", "B", "C"):
        no_click, click = threshold_detect(remaining, 0)
        prob = weight * click.probability
        field = click.state
        # the surviving photon modes are exactly vacuum; drop down to 3 modes
        while field.modes > 3:
            field = drop_modes(field, [0])
        displaced = _displace_all(
            field, x, range(2) if detector == "A" else range(3)
        )
        is_w, pattern = _classify_state(displaced, alpha)
        ref_fid = (
            fidelity(displaced, w_reference(alpha, *pattern)) if is_w else None
        )
        outcomes.append(
            HeraldedOutcome(
                detector=detector,
                probability=prob,
                state=displaced if spec.apply_final_displacement else field,
                is_w_type=is_w,
                sign_pattern=pattern,
                reference_fidelity=ref_fid,
            )
        )
        if no_click.state is None:
            break
        weight *= no_click.probability
        remaining = no_click.state
    return outcomes
