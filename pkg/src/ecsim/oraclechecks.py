"""Cross-validation suites: closed-form/exact-algebra paths vs the Fock oracle.

Each suite returns ``[(check_name, deviation), ...]`` with deviations meant
to sit at rounding level (<< 1e-8) under adequate truncation.  All random
draws are internally seeded, so suite output is deterministic.
"""

from __future__ import annotations

import math

import numpy as np

from . import fockoracle as fo
from . import kernels
from .bell import symmetric_w_state
from .circuits import (
    WCircuitSpec,
    css,
    generate_ghz,
    ghz_reference,
    pre_detection_state,
    run_w_circuit,
)
from .elements import (
    BeamSplitterSpec,
    CrossKerrSpec,
    DisplacementSpec,
    KerrXSpec,
    apply_beam_splitter,
    apply_cross_kerr,
    apply_displacement,
    apply_kerr_pi,
    apply_phase_shifter,
    apply_ux,
)
from .measure import (
    GhzSign,
    expect_a_tau,
    expect_displaced_parity,
    expect_displaced_threshold,
    threshold_detect,
)
from .states import (
    HybridState,
    KetFactor,
    ProductTerm,
    norm,
    normalize,
    overlap,
    superpose,
    tensor,
)

Check = tuple[str, float]


def _random_complex(rng, scale=1.0, n=1):
    vals = rng.uniform(-scale, scale, (n, 2))
    out = [complex(re, im) for re, im in vals]
    return out[0] if n == 1 else out


def _random_coherent_state(rng, modes=2, terms=3, scale=1.2) -> HybridState:
    tlist = []
    for _ in range(terms):
        coeff = _random_complex(rng, 1.0)
        factors = tuple(
            KetFactor.coherent(_random_complex(rng, scale)) for _ in range(modes)
        )
        tlist.append(ProductTerm(coeff, factors))
    return HybridState(modes, tuple(tlist))


def _random_mixed_state(rng, modes=2, terms=3, scale=1.2) -> HybridState:
    tlist = []
    for _ in range(terms):
        coeff = _random_complex(rng, 1.0)
        factors = []
        for _ in range(modes):
            if rng.uniform() < 0.5:
                factors.append(KetFactor.fock(int(rng.integers(0, 3))))
            else:
                factors.append(KetFactor.coherent(_random_complex(rng, scale)))
        tlist.append(ProductTerm(coeff, tuple(factors)))
    return HybridState(modes, tuple(tlist))


def _dense(s: HybridState, margin=1.0) -> fo.FockVector:
    return fo.to_fock(s, fo.Truncation.for_state(s, margin=margin))


def states_suite() -> list[Check]:
    rng = np.random.default_rng(70)
    checks = []
    dev = 0.0
    for _ in range(5):
        a = _random_coherent_state(rng)
        b = _random_coherent_state(rng)
        t = fo.Truncation.for_state(superpose(a, b, 1.0, 1.0), margin=1.0)
        dense = fo.overlap_fock(fo.to_fock(a, t), fo.to_fock(b, t))
        dev = max(dev, abs(overlap(a, b) - dense))
    checks.append(("overlap-coherent-vs-dense", dev))

    dev = 0.0
    for _ in range(5):
        a = _random_mixed_state(rng)
        b = _random_mixed_state(rng)
        t = fo.Truncation.for_state(superpose(a, b, 1.0, 1.0), margin=1.0)
        dense = fo.overlap_fock(fo.to_fock(a, t), fo.to_fock(b, t))
        dev = max(dev, abs(overlap(a, b) - dense))
    checks.append(("overlap-mixed-vs-dense", dev))

    one = HybridState.coherent([1.0])
    vec = fo.to_fock(one, fo.Truncation((20,)))
    checks.append(("coherent-truncation-tail", abs(vec.norm() - 1.0)))

    s = normalize(_random_coherent_state(rng))
    checks.append(("normalized-dense-norm", abs(_dense(s).norm() - 1.0)))
    return checks


def elements_suite() -> list[Check]:
    rng = np.random.default_rng(71)
    checks = []
    checks.append(
        ("unitarity-displacement", fo.unitarity_defect(fo.displacement_matrix(0.6 - 0.4j, 25)))
    )
    checks.append(
        ("unitarity-beam-splitter", fo.unitarity_defect(fo.beam_splitter_matrix(0.77, math.pi, 10, 10)))
    )
    checks.append(("unitarity-kerr", fo.unitarity_defect(fo.kerr_pi_matrix(24))))
    checks.append(
        ("unitarity-cross-kerr", fo.unitarity_defect(fo.cross_kerr_matrix(0.8, 6, 18)))
    )
    checks.append(
        ("unitarity-phase-shift", fo.unitarity_defect(fo.phase_shift_matrix(0.9, 18)))
    )
    pd = fo.parity_displaced_matrix(0.3 + 0.2j, 25)
    td = fo.threshold_displaced_matrix(0.3 - 0.5j, 25)
    checks.append(("parity-displaced-involution", fo.unitarity_defect(pd)))
    checks.append(("threshold-displaced-involution", fo.unitarity_defect(td)))

    # beam splitter on a coherent pair at a non-trivial mixer phase
    s = _random_coherent_state(rng, modes=2, terms=2, scale=1.0)
    spec = BeamSplitterSpec(0.9, 1.3, 0, 1)
    out = apply_beam_splitter(s, spec)
    t = fo.Truncation.for_state(s, margin=1.5)
    u = fo.beam_splitter_matrix(spec.theta, spec.phi, *t.dims)
    expected = fo.apply_to_modes(fo.to_fock(s, t), u, [0, 1])
    got = fo.to_fock(out, t)
    checks.append(("bs-coherent-action", float(np.max(np.abs(got.amplitudes - expected.amplitudes)))))

    # beam splitter on Fock pairs
    dev = 0.0
    for photons in ((1, 0), (1, 1), (2, 1)):
        s = HybridState.fock(photons)
        out = apply_beam_splitter(s, spec)
        t = fo.Truncation((6, 6))
        u = fo.beam_splitter_matrix(spec.theta, spec.phi, 6, 6)
        expected = fo.apply_to_modes(fo.to_fock(s, t), u, [0, 1])
        got = fo.to_fock(out, t)
        dev = max(dev, float(np.max(np.abs(got.amplitudes - expected.amplitudes))))
    checks.append(("bs-fock-action", dev))

    # displacement, including its phase convention
    s = HybridState.coherent([0.4 + 0.1j])
    beta = -0.35 + 0.6j
    out = apply_displacement(s, DisplacementSpec(0, beta))
    t = fo.Truncation((24,))
    expected = fo.apply_to_modes(fo.to_fock(s, t), fo.displacement_matrix(beta, 24), [0])
    got = fo.to_fock(out, t)
    checks.append(("displacement-action", float(np.max(np.abs(got.amplitudes - expected.amplitudes)))))

    # cross-Kerr on a photon/field pair
    s = superpose(
        HybridState(2, (ProductTerm(1.0, (KetFactor.fock(0), KetFactor.coherent(0.9))),)),
        HybridState(2, (ProductTerm(1.0, (KetFactor.fock(1), KetFactor.coherent(0.9))),)),
        0.6,
        0.8,
    )
    out = apply_cross_kerr(s, CrossKerrSpec(0, 1, 0.7))
    t = fo.Truncation((3, 22))
    expected = fo.apply_to_modes(fo.to_fock(s, t), fo.cross_kerr_matrix(0.7, 3, 22), [0, 1])
    got = fo.to_fock(out, t)
    checks.append(("cross-kerr-action", float(np.max(np.abs(got.amplitudes - expected.amplitudes)))))

    # single-mode pi-Kerr identity vs the number-basis diagonal
    s = HybridState.coherent([1.0])
    out = apply_kerr_pi(s, 0)
    t = fo.Truncation((25,))
    expected = fo.apply_to_modes(fo.to_fock(s, t), fo.kerr_pi_matrix(25), [0])
    got = fo.to_fock(out, t)
    checks.append(("kerr-action", float(np.max(np.abs(got.amplitudes - expected.amplitudes)))))

    # phase shifter on mixed factor kinds
    s = _random_mixed_state(rng, modes=1, terms=3, scale=0.9)
    out = apply_phase_shifter(s, 0, 0.62)
    t = fo.Truncation.for_state(s, margin=1.0)
    expected = fo.apply_to_modes(fo.to_fock(s, t), fo.phase_shift_matrix(0.62, t.dims[0]), [0])
    got = fo.to_fock(out, t)
    checks.append(("phase-shift-action", float(np.max(np.abs(got.amplitudes - expected.amplitudes)))))

    # composite logical X rotation
    alpha = 1.4
    s = HybridState.coherent([0j])
    out = apply_ux(s, KerrXSpec(0, alpha))
    dim = 30
    t = fo.Truncation((dim,))
    u = (
        fo.displacement_matrix(alpha / 2.0, dim)
        @ fo.kerr_pi_matrix(dim)
        @ fo.displacement_matrix(-alpha / 2.0, dim)
    )
    expected = fo.apply_to_modes(fo.to_fock(s, t), u, [0])
    got = fo.to_fock(out, t)
    checks.append(("ux-action", float(np.max(np.abs(got.amplitudes - expected.amplitudes)))))
    return checks


def _oracle_parity_expectation(s: HybridState, settings, t: fo.Truncation) -> float:
    v = fo.to_fock(s, t)
    ops = {m: fo.parity_displaced_matrix(b, t.dims[m]) for m, b in enumerate(settings)}
    return fo.expect_product(v, ops).real


def _oracle_threshold_expectation(s: HybridState, settings, t: fo.Truncation) -> float:
    v = fo.to_fock(s, t)
    ops = {m: fo.threshold_displaced_matrix(b, t.dims[m]) for m, b in enumerate(settings)}
    return fo.expect_product(v, ops).real


def measure_suite() -> list[Check]:
    rng = np.random.default_rng(72)
    checks = []
    alpha = 0.8
    for sign, label in ((GhzSign.MINUS, "odd"), (GhzSign.PLUS, "even")):
        state = ghz_reference(alpha, sign)
        t = fo.Truncation.for_state(state, margin=1.5)
        dev_p = dev_t = dev_kp = dev_kt = 0.0
        for _ in range(5):
            betas = _random_complex(rng, 0.8, 3)
            op = _oracle_parity_expectation(state, betas, t)
            dev_p = max(dev_p, abs(expect_displaced_parity(state, betas) - op))
            dev_kp = max(
                dev_kp,
                abs(kernels.ghz_parity_correlator(alpha, sign is GhzSign.MINUS, *betas) - op),
            )
            ot = _oracle_threshold_expectation(state, betas, t)
            dev_t = max(dev_t, abs(expect_displaced_threshold(state, betas) - ot))
            c2 = 1.0 if sign is GhzSign.PLUS else -1.0
            dev_kt = max(
                dev_kt,
                abs(kernels.ghz_threshold_correlator(alpha, 1.0, c2, *betas) - ot),
            )
        checks.append((f"parity-expectation-{label}", dev_p))
        checks.append((f"parity-closed-form-{label}", dev_kp))
        checks.append((f"threshold-expectation-{label}", dev_t))
        checks.append((f"threshold-closed-form-{label}", dev_kt))

    # rotated threshold observable on the symmetric three-mode state
    a = 1.1
    state = symmetric_w_state(a)
    t = fo.Truncation((22, 22, 22))
    v = fo.to_fock(state, t)
    dim = 22
    ux = (
        fo.displacement_matrix(a / 2.0, dim)
        @ fo.kerr_pi_matrix(dim)
        @ fo.displacement_matrix(-a / 2.0, dim)
    )
    thr = fo.threshold_displaced_matrix(0.0, dim)
    dev = 0.0
    for taus in ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)):
        ops = {}
        for m, tau in enumerate(taus):
            ops[m] = ux.conj().T @ thr @ ux if tau else thr
        oracle_val = fo.expect_product(v, ops).real
        dev = max(dev, abs(expect_a_tau(state, taus, a) - oracle_val))
    checks.append(("rotated-threshold-expectation", dev))

    # detection collapse probabilities on an entangled photon/field state
    probe = superpose(
        HybridState(2, (ProductTerm(1.0, (KetFactor.fock(0), KetFactor.coherent(0.7))),)),
        HybridState(2, (ProductTerm(1.0, (KetFactor.fock(1), KetFactor.coherent(-0.7))),)),
        0.6,
        0.8j,
    )
    probe = normalize(probe)
    no_click, click = threshold_detect(probe, 0)
    t = fo.Truncation((3, 20))
    v = fo.to_fock(probe, t)
    p_click = fo.expect_product(v, {0: fo.click_projector(3)}).real
    dev = max(abs(click.probability - p_click), abs(no_click.probability - (1.0 - p_click)))
    checks.append(("detection-probabilities", dev))
    return checks


def _oracle_w_run(spec: WCircuitSpec):
    """Evolve the six-mode circuit with oracle matrices; return (probs, vector, trunc)."""
    g = spec.gamma
    fdim = fo.adequate_dim(math.sqrt(3.0) * abs(g))
    t = fo.Truncation((2, 2, 2, fdim, fdim, fdim))
    start = fo.to_fock(
        HybridState(
            6,
            (
                ProductTerm(
                    1.0,
                    (
                        KetFactor.fock(0),
                        KetFactor.fock(0),
                        KetFactor.fock(1),
                        KetFactor.coherent(math.sqrt(3.0) * g),
                        KetFactor.coherent(0),
                        KetFactor.coherent(0),
                    ),
                ),
            ),
        ),
        t,
    )
    v = start

    def bs(r, a, b):
        theta = 2.0 * math.asin(r)
        u = fo.beam_splitter_matrix(theta, math.pi, t.dims[a], t.dims[b])
        return fo.apply_to_modes(v, u, [a, b])

    v = bs(math.sqrt(2.0 / 5.0), 2, 0)
    v = bs(math.sqrt(2.0 / 3.0), 2, 1)
    v = bs(1.0 / math.sqrt(3.0), 3, 4)
    v = bs(1.0 / math.sqrt(2.0), 3, 5)
    for ctrl, tgt in ((0, 3), (1, 4), (2, 5)):
        u = fo.cross_kerr_matrix(spec.theta, t.dims[ctrl], t.dims[tgt])
        v = fo.apply_to_modes(v, u, [ctrl, tgt])
    for a, b in ((0, 1), (1, 2)):
        u = fo.beam_splitter_matrix(math.pi / 2.0, math.pi, t.dims[a], t.dims[b])
        v = fo.apply_to_modes(v, u, [a, b])

    probs = {}
    for det, mode in (("A", 0), ("B", 1), ("C", 2)):
        ops = {}
        for m in range(3):
            proj = fo.click_projector(2)
            if m != mode:
                proj = np.eye(2, dtype=complex) - proj
            ops[m] = proj
        probs[det] = fo.expect_product(v, ops).real
    return probs, v, t


def circuits_suite(gamma: complex = 1.2, theta: float = 0.9) -> list[Check]:
    checks = []
    spec = WCircuitSpec(gamma, theta, apply_final_displacement=False)
    outcomes = run_w_circuit(spec)
    probs, v, t = _oracle_w_run(spec)
    dev = max(abs(o.probability - probs[o.detector]) for o in outcomes)
    checks.append(("w-branch-probabilities", dev))
    checks.append(("w-predetect-norm", abs(norm(pre_detection_state(spec)) - 1.0)))
    checks.append(("w-oracle-norm", abs(v.norm() - 1.0)))

    # heralded state for the symmetric branch: project the oracle vector on an
    # exclusive detector-C click and compare with the analytic collapse
    arr = v.reshaped().copy()
    arr[1, :, :, :, :, :] = 0.0  # A stays dark: drop its one-photon component
    arr[:, 1, :, :, :, :] = 0.0  # B stays dark
    arr[:, :, 0, :, :, :] = 0.0  # C clicks: drop its vacuum component
    proj = fo.FockVector(arr.reshape(-1), t)
    branch_c = next(o for o in outcomes if o.detector == "C")
    analytic = fo.to_fock(branch_c.state, fo.Truncation(t.dims[3:]))
    # embed the photon pattern |0,0,1>
    photon = fo.to_fock(HybridState.fock([0, 0, 1]), fo.Truncation((2, 2, 2)))
    full = fo.FockVector(np.kron(photon.amplitudes, analytic.amplitudes), t)
    inner = abs(fo.overlap_fock(proj, full)) ** 2 / (
        np.linalg.norm(proj.amplitudes) ** 2 * np.linalg.norm(full.amplitudes) ** 2
    )
    checks.append(("w-heralded-state-fidelity", abs(1.0 - inner)))

    # GHZ chain: the analytic output must match the oracle evolution
    # amplitude-for-amplitude, validating the mixer sign convention
    alpha = 0.8
    produced = generate_ghz(alpha, GhzSign.MINUS, 3)
    dim = fo.adequate_dim(math.sqrt(3.0) * alpha + 1.0)
    tg = fo.Truncation((dim, dim, dim))
    start = tensor(
        css(math.sqrt(3.0) * alpha, 1.0, -1.0), HybridState.coherent([0j, 0j])
    )
    vg = fo.to_fock(start, tg)
    for r, pair in ((1.0 / math.sqrt(3.0), (0, 1)), (1.0 / math.sqrt(2.0), (0, 2))):
        u = fo.beam_splitter_matrix(2.0 * math.asin(r), math.pi, dim, dim)
        vg = fo.apply_to_modes(vg, u, list(pair))
    got = fo.to_fock(produced, tg)
    checks.append(
        ("ghz-chain-vector", float(np.max(np.abs(got.amplitudes - vg.amplitudes))))
    )
    checks.append(
        (
            "ghz-chain-fidelity",
            abs(1.0 - fidelity_like(got.amplitudes, fo.to_fock(ghz_reference(alpha, GhzSign.MINUS), tg).amplitudes)),
        )
    )
    return checks


def fidelity_like(u: np.ndarray, v: np.ndarray) -> float:
    return abs(np.vdot(u, v)) ** 2 / (
        float(np.linalg.norm(u)) ** 2 * float(np.linalg.norm(v)) ** 2
    )


SUITES = {
    "states": states_suite,
    "elements": elements_suite,
    "measure": measure_suite,
    "circuits": circuits_suite,
}
