"""Benchmark the relaxation loop: jitted kernels vs the pure-numpy fallback.

The kernel flavor is fixed at import time by GEONETS_NO_NUMBA, so the parent
process never imports geonets; it re-runs itself as a worker once per flavor
and renders the combined table.

Usage: python3 benchmarks/bench_relax.py [--repeats N]
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import subprocess
import sys
import time


def _workloads():
    import numpy as np

    from geonets import (
        EmbeddedNet,
        NetFamily,
        RelaxConfig,
        build_net25,
        solve_angles,
        topology_template,
    )
    from geonets import T2_OCTAGON

    exact = build_net25(solve_angles()).net
    rng = np.random.default_rng(7)
    pos = dict(exact.positions)
    for vid in sorted(exact.topology.interior_ids):
        dx, dy = rng.uniform(-0.05, 0.05, size=2)
        x, y = pos[vid]
        pos[vid] = (x + dx, y + dy)
    jittered = exact.with_positions(pos)

    tpl = topology_template(NetFamily(T2_OCTAGON, 2))
    t2 = EmbeddedNet(tpl.topology, tpl.positions)

    cfg = RelaxConfig()
    return [("jittered-25", jittered, cfg), ("t2-template", t2, cfg)]


def _run_worker(repeats: int) -> None:
    from geonets import relax
    from geonets._kernels import USING_NUMBA

    rows = []
    for name, net, cfg in _workloads():
        times = []
        sweeps = 0
        for i in range(repeats + 1):
            t0 = time.perf_counter()
            outcome = relax(net, cfg)
            elapsed = time.perf_counter() - t0
            sweeps = outcome.iterations
            times.append(elapsed)
        # times[0] includes any one-off compilation cost
        rows.append(
            {
                "workload": name,
                "flavor": "numba" if USING_NUMBA else "pure numpy",
                "first": times[0],
                "best": min(times[1:]),
                "median": statistics.median(times[1:]),
                "sweeps": sweeps,
                "status": outcome.status,
            }
        )
    json.dump(rows, sys.stdout)


def _collect(no_numba: bool, repeats: int) -> list[dict]:
    env = dict(os.environ)
    if no_numba:
        env["GEONETS_NO_NUMBA"] = "1"
    else:
        env.pop("GEONETS_NO_NUMBA", None)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker", "--repeats", str(repeats)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5, help="timed runs per workload (default 5)")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        _run_worker(args.repeats)
        return

    rows = _collect(False, args.repeats) + _collect(True, args.repeats)
    hdr = f"{'workload':<14}{'flavor':<12}{'first call':>12}{'best':>10}{'median':>10}{'sweeps':>8}"
    print(hdr)
    print("-" * len(hdr))
    for r in rows:
        print(
            f"{r['workload']:<14}{r['flavor']:<12}"
            f"{r['first']:>11.3f}s{r['best']:>9.3f}s{r['median']:>9.3f}s{r['sweeps']:>8d}"
        )
    by_key = {(r["workload"], r["flavor"]): r for r in rows}
    for name in ("jittered-25", "t2-template"):
        fast = by_key[(name, "numba")]["median"]
        slow = by_key[(name, "pure numpy")]["median"]
        if fast > 0:
            print(f"{name}: numba is {slow / fast:.1f}x faster on the warm path")


if __name__ == "__main__":
    main()
