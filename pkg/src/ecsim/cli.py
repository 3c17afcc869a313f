"""Command-line front end.

Subcommands
-----------
repro        figure-reproduction sweeps -> CSV (alpha, bm_value, converged, restarts)
optimize     one settings optimization -> JSON
generate-w   heralded W-type circuit run -> JSON report
oracle-check closed-form vs brute-force suites -> JSON table (exit 1 on failure)
run-circuit  apply a circuit description file to a serialized state

Every command writes ``<out>.manifest.json`` next to its output with the full
parameter set, seed and version; outputs themselves contain nothing
time-dependent, so a rerun with the same manifest is byte-identical.
Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bell import (
    BellSettings,
    bm_w_closed,
    parity_objective,
    threshold_objective,
)
from .circuits import WCircuitSpec, run_w_circuit
from .elements import apply_circuit, parse_circuit
from .errors import StateFormatError
from .measure import GhzSign
from .optimize import OptimizerConfig, default_search_radius, maximize, sweep_alpha
from .oraclechecks import SUITES
from .states import dumps_state, loads_state

FIGURES = {
    "fig2a": np.geomspace(0.1, 10.0, 13),
    "fig2b": np.geomspace(1e-3, 0.5, 10),
    "fig3": np.array(
        [0.05, 0.08, 0.12, 0.15, 0.18, 0.22, 0.28, 0.35, 0.45, 0.55, 0.65, 0.8, 1.0]
    ),
    "fig5": np.linspace(0.0, 4.0, 81),
}


def _fmt(x: float) -> str:
    """Fixed 12-significant-digit scientific notation for stable CSV diffs."""
    return f"{x:.11e}"


def _parse_complex(text: str) -> complex:
    re_s, _, im_s = text.partition(",")
    return complex(float(re_s), float(im_s) if im_s else 0.0)


def _write_manifest(out: Path, command: str, params: dict, seed, t0: float):
    manifest = {
        "command": command,
        "parameters": params,
        "seed": seed,
        "artifact_version": __version__,
        "outputs": [str(out)],
        "duration_seconds": time.time() - t0,
    }
    Path(f"{out}.manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )


def _settings_json(vec) -> dict:
    s = BellSettings.from_vector(vec)
    return {
        "unprimed": [[v.real, v.imag] for v in s.unprimed],
        "primed": [[v.real, v.imag] for v in s.primed],
    }


def _optimizer_config(args, alpha: float) -> OptimizerConfig:
    return OptimizerConfig(
        restarts=args.restarts,
        seed=args.seed,
        search_radius=default_search_radius(alpha),
    )


def cmd_repro(args) -> int:
    t0 = time.time()
    alphas = FIGURES[args.figure]
    rows = []
    if args.figure == "fig5":
        for a in alphas:
            rows.append(f"{_fmt(a)},{_fmt(bm_w_closed(float(a)))},true,")
    else:
        sign = GhzSign.MINUS if args.sign == "minus" else GhzSign.PLUS
        if args.figure == "fig3":
            c2 = 1.0 if sign is GhzSign.PLUS else -1.0

            def family(a):
                return threshold_objective(a, 1.0, c2)

        else:

            def family(a):
                return parity_objective(a, sign)

        cfg = OptimizerConfig(restarts=args.restarts, seed=args.seed)
        for a, res in sweep_alpha([float(v) for v in alphas], family, cfg):
            conv = "true" if res.converged else "false"
            rows.append(
                f"{_fmt(a)},{_fmt(res.best_value)},{conv},{res.restarts_used}"
            )
    out = Path(args.out)
    out.write_text("alpha,bm_value,converged,restarts\n" + "\n".join(rows) + "\n")
    _write_manifest(
        out,
        "repro",
        {"figure": args.figure, "sign": args.sign, "restarts": args.restarts},
        args.seed,
        t0,
    )
    return 0


def cmd_optimize(args) -> int:
    t0 = time.time()
    alpha = args.alpha
    if args.family == "parity":
        sign = GhzSign.MINUS if args.sign == "minus" else GhzSign.PLUS
        objective = parity_objective(alpha, sign)
        coeff_info = {"sign": args.sign}
    else:
        c1 = _parse_complex(args.c1)
        c2 = _parse_complex(args.c2)
        objective = threshold_objective(alpha, c1, c2)
        coeff_info = {"c1": [c1.real, c1.imag], "c2": [c2.real, c2.imag]}
    res = maximize(objective, _optimizer_config(args, alpha))
    report = {
        "family": args.family,
        "alpha": alpha,
        **coeff_info,
        "best_value": res.best_value,
        "best_settings": _settings_json(res.best_settings),
        "settings_vector": [float(v) for v in res.best_settings],
        "iterations": res.iterations,
        "restarts_used": res.restarts_used,
        "converged": res.converged,
    }
    out = Path(args.out)
    out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    _write_manifest(
        out,
        "optimize",
        {"family": args.family, "alpha": alpha, **coeff_info, "restarts": args.restarts},
        args.seed,
        t0,
    )
    return 0


def cmd_generate_w(args) -> int:
    t0 = time.time()
    gamma = _parse_complex(args.gamma)
    spec = WCircuitSpec(gamma, args.theta, apply_final_displacement=args.displace)
    outcomes = run_w_circuit(spec)
    alpha = spec.effective_alpha
    report = {
        "gamma": [gamma.real, gamma.imag],
        "theta": args.theta,
        "displace": args.displace,
        "effective_alpha": [alpha.real, alpha.imag],
        "probabilities": {o.detector: o.probability for o in outcomes},
        "probability_sum": sum(o.probability for o in outcomes),
        "outcomes": [
            {
                "detector": o.detector,
                "probability": o.probability,
                "is_w_type": o.is_w_type,
                "sign_pattern": list(o.sign_pattern) if o.sign_pattern else None,
                "fidelity_vs_reference": o.reference_fidelity,
                "state": dumps_state(o.state).splitlines(),
            }
            for o in outcomes
        ],
    }
    out = Path(args.out)
    out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    _write_manifest(
        out,
        "generate-w",
        {"gamma": [gamma.real, gamma.imag], "theta": args.theta, "displace": args.displace},
        None,
        t0,
    )
    return 0


def cmd_oracle_check(args) -> int:
    t0 = time.time()
    suite = SUITES[args.suite]
    checks = suite()
    results = [
        {"name": name, "deviation": dev, "pass": bool(dev <= args.tol)}
        for name, dev in checks
    ]
    passed = all(r["pass"] for r in results)
    report = {
        "suite": args.suite,
        "tolerance": args.tol,
        "checks": results,
        "passed": passed,
    }
    out = Path(args.out)
    out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    _write_manifest(out, "oracle-check", {"suite": args.suite, "tol": args.tol}, None, t0)
    return 0 if passed else 1


def cmd_run_circuit(args) -> int:
    t0 = time.time()
    state = loads_state(Path(args.state).read_text())
    elements = parse_circuit(Path(args.circuit).read_text())
    result = apply_circuit(state, elements)
    out = Path(args.out)
    out.write_text(dumps_state(result))
    _write_manifest(
        out, "run-circuit", {"circuit": args.circuit, "state": args.state}, None, t0
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecsim",
        description="Entangled-coherent-state simulation and Bell-Mermin tests",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("repro", help="figure-reproduction sweep to CSV")
    p.add_argument("figure", choices=sorted(FIGURES))
    p.add_argument("--out", required=True)
    p.add_argument("--sign", choices=["plus", "minus"], default="minus")
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("optimize", help="maximize one Bell-Mermin function")
    p.add_argument("--family", choices=["parity", "threshold"], required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--sign", choices=["plus", "minus"], default="minus")
    p.add_argument("--c1", default="1")
    p.add_argument("--c2", default="-1")
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("generate-w", help="run the heralded W-type circuit")
    p.add_argument("--gamma", required=True, help="RE or RE,IM")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--displace", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate_w)

    p = sub.add_parser("oracle-check", help="closed-form vs brute-force suites")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("run-circuit", help="apply a circuit file to a state file")
    p.add_argument("--circuit", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run_circuit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StateFormatError, FileNotFoundError, ValueError) as exc:
        print(f"ecsim: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
