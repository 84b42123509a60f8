"""Compare the numba kernels against the pure-Python twins.

Each backend runs in its own interpreter because the backend is fixed at
import time by PENDANTPACK_DISABLE_NUMBA. The numba run does one untimed
warm-up pass so compilation (or cache loading) is not counted.

    python3 benchmarks/bench_backends.py --repeats 3
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from pendantpack import _accel, bidirected_path, cartesian_product, complete_symmetric, random_strong, tau3
from pendantpack.digraph import is_l_strong, vertex_connectivity

repeats = int(sys.argv[1])
hosts = {
    "K4xK4": cartesian_product(complete_symmetric(4), complete_symmetric(4)).graph,
    "K6": complete_symmetric(6),
    "P4xK3": cartesian_product(bidirected_path(4), complete_symmetric(3)).graph,
    "rand9": random_strong(9, 0.6, 11),
}
jobs = {
    "tau3": lambda g: tau3(g, max_vertices=16).value,
    "kappa": vertex_connectivity,
    "2-strong": lambda g: is_l_strong(g, 2),
}

def timed(fn, g):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn(g)
        best = min(best, time.perf_counter() - t0)
    return best, value

if _accel.NUMBA_ENABLED:
    for g in hosts.values():
        for fn in jobs.values():
            fn(g)
rows = []
for hname, g in hosts.items():
    for jname, fn in jobs.items():
        seconds, value = timed(fn, g)
        rows.append({"host": hname, "job": jname, "seconds": seconds, "value": value})
print(json.dumps({"backend": _accel.BACKEND, "rows": rows}))
"""


def run_backend(disable: bool, repeats: int) -> dict:
    env = dict(os.environ)
    if disable:
        env["PENDANTPACK_DISABLE_NUMBA"] = "1"
    else:
        env.pop("PENDANTPACK_DISABLE_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeats)],
        env=env, check=True, capture_output=True, text=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw rows instead of a table")
    args = ap.parse_args(argv)

    fast = run_backend(False, args.repeats)
    slow = run_backend(True, args.repeats)
    merged = []
    for a, b in zip(fast["rows"], slow["rows"]):
        if a["value"] != b["value"]:
            print(f"backend mismatch on {a['host']}/{a['job']}: {a['value']} vs {b['value']}", file=sys.stderr)
            return 1
        merged.append({**a, "numba_s": a["seconds"], "python_s": b["seconds"],
                       "speedup": b["seconds"] / max(a["seconds"], 1e-9)})
    if args.json:
        print(json.dumps(merged, indent=2))
        return 0
    print(f"{'host':8} {'job':9} {'value':>6} {fast['backend']:>10} {slow['backend']:>10} {'speedup':>8}")
    for r in merged:
        print(f"{r['host']:8} {r['job']:9} {str(r['value']):>6} {r['numba_s']:10.4f} {r['python_s']:10.4f} {r['speedup']:8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
