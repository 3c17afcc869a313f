"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one ``ACCEPTANCE <id>: PASS/FAIL`` line (run with ``-s`` to
see them live).  Criteria 3a, 3b, 3c and 4a encode reference anchor values
that are *not* stationary points of the implemented correlators: the true
optima (verified independently by exact state algebra and the dense
truncated-Fock oracle, see tests/test_oraclechecks.py) exceed the anchor
windows.  Those tests run the criterion exactly as stated and are expected
to fail; the assertion messages document the verified values.  Companion
tests (suffix ``_verified_behavior``) pin what the implementation actually,
reproducibly attains.
"""

import math

import numpy as np
import pytest

from ecsim import kernels
from ecsim.bell import (
    CANONICAL_TAU,
    bm_w_closed,
    bm_w_generic,
    find_violation_onset,
    parity_objective,
    threshold_objective,
)
from ecsim.circuits import WCircuitSpec, generate_ghz, ghz_reference, run_w_circuit, w_reference
from ecsim.cli import main
from ecsim.errors import BracketError
from ecsim.measure import (
    GhzSign,
    expect_a_tau,
    expect_displaced_parity,
    expect_displaced_threshold,
    wigner_ghz,
)
from ecsim.optimize import OptimizerConfig, default_search_radius, maximize
from ecsim.oraclechecks import SUITES
from ecsim.states import HybridState, fidelity, normalize, superpose
from ecsim.bell import symmetric_w_state


def report(tag: str, ok: bool, detail: str = ""):
    print(f"ACCEPTANCE {tag}: {'PASS' if ok else 'FAIL'}" + (f" — {detail}" if detail else ""))
    return ok


def optimized(objective, alpha, seed=0, restarts=64):
    cfg = OptimizerConfig(
        restarts=restarts, seed=seed, search_radius=default_search_radius(alpha)
    )
    return maximize(objective, cfg).best_value


def test_criterion_1_closed_form_anchors():
    at_zero = bm_w_closed(0.0)
    onset = find_violation_onset(bm_w_closed, 1.0, 2.0, 1e-3)
    at_three = bm_w_closed(3.0)
    ok = (
        abs(at_zero - 2.0) <= 1e-12
        and abs(onset - 1.49) <= 0.02
        and 2.99 <= at_three <= 3.0
    )
    report("1 closed-form curve", ok, f"value(0)={at_zero}, onset={onset:.4f}, value(3)={at_three:.6f}")
    assert abs(at_zero - 2.0) <= 1e-12
    assert abs(onset - 1.49) <= 0.02
    assert 2.99 <= at_three <= 3.0


def test_criterion_2_generic_matches_closed_forms():
    worst_bm = 0.0
    for a in (0.25, 0.5, 1.0, 1.5, 2.0, 3.0):
        worst_bm = max(worst_bm, abs(bm_w_generic(a, CANONICAL_TAU) - bm_w_closed(a)))
    worst_corr = 0.0
    for a in (0.5, 1.0, 2.0):
        state = symmetric_w_state(a)
        ea = math.exp(a * a)
        v_ref = (4 - ea) / (2 + ea)
        w_ref = -(2 - 2 * math.exp(-2 * a * a) - 7 * math.exp(-a * a) - 2 * ea) / (
            3 * (2 + ea)
        )
        worst_corr = max(worst_corr, abs(expect_a_tau(state, (0, 0, 0), a) - v_ref))
        worst_corr = max(worst_corr, abs(expect_a_tau(state, (0, 1, 1), a) - w_ref))
    ok = worst_bm <= 1e-10 and worst_corr <= 1e-10
    report("2 rotated-threshold identities", ok, f"max dev {max(worst_bm, worst_corr):.2e}")
    assert worst_bm <= 1e-10
    assert worst_corr <= 1e-10


def test_criterion_3a_threshold_peak_window():
    best = optimized(threshold_objective(0.18, 1, -1), 0.18)
    ok = 2.45 <= best <= 2.55
    report("3a threshold peak window", ok, f"optimized value {best:.4f}, window [2.45, 2.55]")
    assert ok, (
        f"optimized threshold Bell value at amplitude 0.18 is {best:.4f}; the "
        "anchor window [2.45, 2.55] is below the true optimum (~2.93, confirmed "
        "by exact state algebra and the dense Fock oracle); the anchor value "
        "2.5 is reproduced exactly at its documented settings point but is not "
        "a stationary point of the correlators"
    )


def test_criterion_3b_threshold_no_violation_at_08():
    best = optimized(threshold_objective(0.8, 1, -1), 0.8)
    ok = best <= 2 + 1e-6
    report("3b threshold cutoff at 0.8", ok, f"optimized value {best:.6f}")
    assert ok, (
        f"optimized threshold Bell value at amplitude 0.8 is {best:.6f} > 2+1e-6; "
        "the violation genuinely persists to amplitude ~1.15 (oracle-confirmed "
        "far-field settings family), so this anchor cannot hold"
    )


def test_criterion_3c_threshold_cutoff_bisection():
    def f(a):
        return optimized(threshold_objective(a, 1, -1), a, restarts=32)

    try:
        onset = find_violation_onset(f, 0.3, 0.9, 0.05)
    except BracketError as exc:
        report("3c threshold cutoff bisection", False, str(exc))
        pytest.fail(
            f"no violation cutoff exists in [0.3, 0.9]: {exc}; the optimized "
            "function stays above 2 on the whole interval (true cutoff ~1.15)"
        )
    ok = abs(onset - 0.6) <= 0.1
    report("3c threshold cutoff bisection", ok, f"onset {onset:.3f}")
    assert ok


def test_criterion_3_verified_behavior():
    # what the threshold optimization actually attains, pinned
    peak = optimized(threshold_objective(0.18, 1, -1), 0.18)
    assert peak >= 2.45  # the documented violation is found (one-sided)
    assert peak == pytest.approx(2.9268, abs=0.01)
    at_08 = optimized(threshold_objective(0.8, 1, -1), 0.8)
    assert 2.0 < at_08 < 2.1

    def f(a):
        return optimized(threshold_objective(a, 1, -1), a, restarts=32)

    onset = find_violation_onset(f, 0.9, 1.5, 0.05)
    report("3v true threshold behavior", True, f"peak {peak:.4f}, cutoff {onset:.3f}")
    assert 1.0 <= onset <= 1.35


def test_criterion_4a_parity_large_amplitude_window():
    best = optimized(parity_objective(10.0, GhzSign.MINUS), 10.0)
    ok = 3.53 <= best <= 3.63
    report("4a parity window at 10", ok, f"optimized value {best:.4f}, window [3.53, 3.63]")
    assert ok, (
        f"optimized parity Bell value at amplitude 10 is {best:.4f}; the anchor "
        "window [3.53, 3.63] sits below the true optimum ~3.98 (the equatorial "
        "settings family approaches the algebraic bound 4 as the amplitude "
        "grows; oracle-confirmed at moderate amplitudes)"
    )


def test_criterion_4b_parity_small_amplitude():
    minus = optimized(parity_objective(0.01, GhzSign.MINUS), 0.01)
    plus = optimized(parity_objective(0.01, GhzSign.PLUS), 0.01)
    ok = minus > 2.0 and plus <= 2 + 1e-3
    report("4b parity small amplitude", ok, f"odd {minus:.4f} > 2, even {plus:.6f} <= 2.001")
    assert minus > 2.0
    assert plus <= 2 + 1e-3


def test_criterion_4_verified_behavior():
    best = optimized(parity_objective(10.0, GhzSign.MINUS), 10.0)
    assert best >= 3.53  # one-sided: at least the documented violation
    assert best == pytest.approx(3.978, abs=0.01)
    at_two = optimized(parity_objective(2.0, GhzSign.MINUS), 2.0)
    report("4v true parity behavior", True, f"value(10)={best:.4f}, value(2)={at_two:.4f}")
    assert 2.0 < at_two < 3.7


def test_criterion_5_identity_checks_randomized():
    rng = np.random.default_rng(2024)
    scale = math.pi**3 / 8
    worst = 0.0
    for _ in range(100):
        a = complex(rng.uniform(0.05, 3.0), rng.uniform(-0.4, 0.4))
        sign = GhzSign.MINUS if rng.uniform() < 0.5 else GhzSign.PLUS
        state = ghz_reference(a, sign)
        betas = [complex(*rng.uniform(-1, 1, 2)) for _ in range(3)]
        parity = expect_displaced_parity(state, betas)
        worst = max(worst, abs(parity - scale * wigner_ghz(betas, a, sign)))
        worst = max(
            worst,
            abs(parity - kernels.ghz_parity_correlator(a, sign is GhzSign.MINUS, *betas)),
        )
        c2 = 1.0 if sign is GhzSign.PLUS else -1.0
        thresh = expect_displaced_threshold(state, betas)
        worst = max(
            worst, abs(thresh - kernels.ghz_threshold_correlator(a, 1.0, c2, *betas))
        )
    ok = worst <= 1e-10
    report("5 randomized identities", ok, f"max dev {worst:.2e} over 100 settings")
    assert worst <= 1e-10


def test_criterion_6_ghz_chain():
    worst = 0.0
    for a in (0.1, 1.0, 3.0):
        worst = max(
            worst,
            1 - fidelity(generate_ghz(a, GhzSign.MINUS, 3), ghz_reference(a, GhzSign.MINUS, 3)),
        )
    triple = normalize(
        superpose(
            superpose(HybridState.fock([1, 0, 0]), HybridState.fock([0, 1, 0]), 1, 1),
            HybridState.fock([0, 0, 1]),
            1,
            1,
        )
    )
    small = fidelity(generate_ghz(1e-3, GhzSign.MINUS, 3), triple)
    ok = worst <= 1e-10 and small >= 0.999
    report("6 ghz chain", ok, f"max infidelity {worst:.2e}, small-amplitude fidelity {small:.6f}")
    assert worst <= 1e-10
    assert small >= 0.999


def test_criterion_7_w_circuit():
    spec = WCircuitSpec(6.0, 0.6)
    outs = {o.detector: o for o in run_w_circuit(spec)}
    total = sum(o.probability for o in outs.values())
    pa = outs["A"].probability
    pbc = outs["B"].probability + outs["C"].probability
    sym = outs["C"]
    ref = w_reference(spec.effective_alpha, 1, 1, 1)
    sym_fid = fidelity(sym.state, ref)
    three_term_w = all(
        o.is_w_type for o in outs.values() if o.state.term_count() == 3
    )
    ok = (
        abs(total - 1.0) <= 1e-12
        and abs(pa - 0.4) <= 0.01
        and abs(pbc - 0.6) <= 0.01
        and sym_fid >= 1 - 1e-10
        and three_term_w
    )
    report(
        "7 heralded w circuit",
        ok,
        f"sum={total:.2e}-off, P(A)={pa:.4f}, P(B)+P(C)={pbc:.4f}, sym fid deficit {1-sym_fid:.2e}",
    )
    assert abs(total - 1.0) <= 1e-12
    assert abs(pa - 0.4) <= 0.01
    assert abs(pbc - 0.6) <= 0.01
    assert sym_fid >= 1 - 1e-10
    assert three_term_w


def test_criterion_8_oracle_equivalence():
    worst = {}
    for name, suite in SUITES.items():
        for check, dev in suite():
            worst[f"{name}:{check}"] = dev
    over = {k: v for k, v in worst.items() if v > 1e-8}
    unitarity_over = {
        k: v
        for k, v in worst.items()
        if ("unitarity" in k or "involution" in k) and v > 1e-9
    }
    ok = not over and not unitarity_over
    report("8 oracle equivalence", ok, f"max dev {max(worst.values()):.2e} across {len(worst)} checks")
    assert not over, over
    assert not unitarity_over, unitarity_over


def test_criterion_9_determinism(tmp_path):
    pairs = []
    for name, args in (
        ("repro", ["repro", "fig5"]),
        (
            "optimize",
            ["optimize", "--family", "threshold", "--alpha", "0.18",
             "--restarts", "16", "--seed", "7"],
        ),
    ):
        a, b = tmp_path / f"{name}_a", tmp_path / f"{name}_b"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        pairs.append((name, a.read_bytes() == b.read_bytes()))
    ok = all(same for _, same in pairs)
    report("9 determinism", ok, ", ".join(f"{n}: {'identical' if s else 'DIFFERS'}" for n, s in pairs))
    assert ok
