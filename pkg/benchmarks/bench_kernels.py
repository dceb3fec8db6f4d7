"""Compiled vs pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--long]

Times the Bruhat-ideal count (Table-style counts), the Chevalley-cover scan
that dominates class computation, and the full E6 verification (run in a
subprocess so the backend can be switched by environment).
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

from ccycle.kernels import BACKENDS
from ccycle.rootsys import root_system
from ccycle.weyl import WeylGroup, generate_WP


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def ideal_count(label, node, backend):
    W = WeylGroup(root_system(label), backend)
    pd = generate_WP(W, node)
    return lambda: W.kernel.ideal_size([i - 1 for i in W.reduced_word(pd.top)])


def cover_scan(label, node, backend):
    W = WeylGroup(root_system(label), backend)
    pd = generate_WP(W, node)
    elems = W.bruhat_ideal(pd.top)[:4000]
    return lambda: [W.kernel.covers(w) for w in elems]


def full_verify(label, node, backend):
    env = dict(os.environ)
    if backend == "python":
        env["CCYCLE_PURE_PYTHON"] = "1"
    code = f"from ccycle.verify import verify_irreducible as v; v({label!r}, {node}, workers=1)"
    return lambda: subprocess.run([sys.executable, "-c", code], env=env, check=True)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--long", action="store_true", help="include the E7 ideal count")
    args = ap.parse_args(argv)

    cases = [("ideal E6/6", ideal_count, "E6", 6), ("covers E6/6", cover_scan, "E6", 6),
             ("verify E6/6", full_verify, "E6", 6)]
    if args.long:
        cases.insert(1, ("ideal E7/7", ideal_count, "E7", 7))
    backends = sorted(BACKENDS)
    print(f"{'case':<14}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, make, label, node in cases:
        row = {b: best_of(make(label, node, b), args.repeat) for b in backends}
        speed = row["python"] / row["cython"] if "cython" in row else float("nan")
        print(f"{name:<14}" + "".join(f"{row[b]:>11.3f}s" for b in backends) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
