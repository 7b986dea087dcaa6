#!/usr/bin/env python
"""Time the election kernels and a full default run on both backends.

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --repeat 5 --pool 60 --json out.json
"""

import argparse
import json
import time

import numpy as np

from wsnrecover import _kernels
from wsnrecover.config import SimConfig
from wsnrecover.placement import PlacementParams, select_heads
from wsnrecover.scenario import generate_topology
from wsnrecover.sim import simulate, topology_rng


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--pool", type=int, default=40, help="candidate pool size per election")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--json")
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.NUMBA_AVAILABLE else [])
    cfg = SimConfig(seed=args.seed)
    topo = generate_topology(cfg, topology_rng(args.seed))
    params = PlacementParams()
    pool = list(range(args.pool))

    # warm the JIT so compile time is not billed to the first sample
    if "numba" in backends:
        select_heads(pool, topo, 0, PlacementParams(iter=2), np.random.default_rng(0), backend="numba")

    results = {}
    for b in backends:
        elect = best_of(lambda: select_heads(pool, topo, 0, params, np.random.default_rng(0), backend=b),
                        args.repeat)
        full = best_of(lambda: simulate(cfg, topo, backend=b), args.repeat)
        results[b] = {"election_s": elect, "default_run_s": full}

    same = len({repr(select_heads(pool, topo, 0, params, np.random.default_rng(0), backend=b))
                for b in backends}) == 1
    print(f"{'backend':<8} {'election (s)':>14} {'default run (s)':>16}")
    for b, r in results.items():
        print(f"{b:<8} {r['election_s']:>14.4f} {r['default_run_s']:>16.4f}")
    if len(results) == 2:
        print(f"speedup  {results['numpy']['election_s'] / results['numba']['election_s']:>14.1f}x"
              f" {results['numpy']['default_run_s'] / results['numba']['default_run_s']:>15.1f}x")
    print(f"backends agree: {same}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"results": results, "agree": same, "pool": args.pool}, fh, indent=2)


if __name__ == "__main__":
    main()
