"""Benchmark the compiled kernel extension against the pure-Python twin.

Times the two hot objectives (displaced-parity and displaced-threshold
Mermin combinations) as raw kernel calls and inside a full multi-start
optimization, and verifies both backends agree numerically.

Run:  python benchmarks/bench_kernels.py [--evals N]
"""

import argparse
import time

import numpy as np

from ecsim.bell import parity_objective, threshold_objective
from ecsim.kernels import load_backend
from ecsim.measure import GhzSign
from ecsim.optimize import OptimizerConfig, default_search_radius, maximize


def time_kernel(fn, args_list):
    t0 = time.perf_counter()
    acc = 0.0
    for args in args_list:
        acc += fn(*args)
    dt = time.perf_counter() - t0
    return dt, acc


def bench_raw(backends, n_evals):
    rng = np.random.default_rng(0)
    xs = [np.ascontiguousarray(rng.uniform(-1, 1, 12)) for _ in range(n_evals)]
    rows = []
    for label, fn_name, extra in (
        ("parity objective", "mermin_parity", (0.8 + 0j, True)),
        ("threshold objective", "mermin_threshold", (0.8 + 0j, 1 + 0j, -1 + 0j)),
    ):
        timings = {}
        sums = {}
        for name, mod in backends.items():
            fn = getattr(mod, fn_name)
            dt, acc = time_kernel(fn, [extra + (x,) for x in xs])
            timings[name] = dt
            sums[name] = acc
        rows.append((label, timings, sums))
    return rows


def bench_maximize(backends, alpha=0.8, restarts=16):
    cfg = OptimizerConfig(
        restarts=restarts, seed=0, search_radius=default_search_radius(alpha)
    )
    out = {}
    for name, mod in backends.items():
        for label, obj in (
            ("parity", parity_objective(alpha, GhzSign.MINUS, kernel=mod)),
            ("threshold", threshold_objective(alpha, 1, -1, kernel=mod)),
        ):
            t0 = time.perf_counter()
            res = maximize(obj, cfg)
            out[(name, label)] = (time.perf_counter() - t0, res.best_value)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--evals", type=int, default=200_000)
    args = parser.parse_args()

    backends = {"python": load_backend("python")}
    try:
        backends["compiled"] = load_backend("compiled")
    except ImportError:
        print("compiled extension not built; benchmarking pure Python only")

    print(f"\nraw kernel throughput ({args.evals} evaluations)")
    print(f"{'objective':<22}" + "".join(f"{n:>14}" for n in backends) + f"{'speedup':>10}")
    for label, timings, sums in bench_raw(backends, args.evals):
        cells = "".join(
            f"{args.evals / timings[n] / 1e6:>11.2f} M/s" for n in backends
        )
        if len(backends) == 2:
            speed = timings["python"] / timings["compiled"]
            cells += f"{speed:>9.1f}x"
        print(f"{label:<22}{cells}")
        vals = list(sums.values())
        if len(vals) == 2:
            drift = abs(vals[0] - vals[1]) / max(abs(vals[0]), 1e-30)
            assert drift < 1e-12, f"backend disagreement: {drift}"
    if len(backends) == 2:
        print("backend agreement: summed objectives match to < 1e-12 relative")

    print("\nfull optimization (16 restarts, amplitude 0.8)")
    results = bench_maximize(backends)
    for (name, label), (dt, val) in sorted(results.items()):
        print(f"{name:>9} {label:<10} {dt:7.2f} s   best {val:.9f}")
    by_label = {}
    for (name, label), (dt, val) in results.items():
        by_label.setdefault(label, {})[name] = val
    for label, vals in by_label.items():
        if len(vals) == 2:
            assert abs(vals["python"] - vals["compiled"]) < 1e-9, (label, vals)
    print("optimization results agree across backends")


if __name__ == "__main__":
    main()
