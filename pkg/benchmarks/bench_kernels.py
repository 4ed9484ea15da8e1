#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the numpy fallback.

Micro-benchmarks call both kernel modules directly on identical inputs;
the optional end-to-end pass times a full subgroup-lattice enumeration in
a subprocess per backend (selection happens at import).

Usage: python benchmarks/bench_kernels.py [--end-to-end] [--repeat N]
"""

import argparse
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from grouplab import _kernels_py
from grouplab.cli import build
from grouplab.lattice import cyclic_subgroups

try:
    from grouplab import _kernels
except ImportError:
    _kernels = None


def timeit(fn, repeat):
    best = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return min(best), statistics.median(best)


def micro(repeat):
    cases = []
    for expr in ("S4", "A5", "Ex3"):
        G = build(expr)
        table = G.table
        inv = G.inv_array
        cyc = [np.asarray(h.members, dtype=np.int32) for h in cyclic_subgroups(G)]
        big = cyc[len(cyc) // 2]
        cases.append((expr, G, table, inv, cyc, big))

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("compiled", _kernels))

    print(f"{'case':<34} " + " ".join(f"{name:>12}" for name, _ in backends) + "   speedup")
    for expr, G, table, inv, cyc, big in cases:
        workloads = {
            "closure(all cyclic joins)": lambda mod: [
                mod.close_under_product(table, np.concatenate([a, b]), 0)
                for a in cyc[:12]
                for b in cyc[:12]
            ],
            "product_set(H, H)": lambda mod: [
                mod.product_set(table, a, b) for a in cyc[:20] for b in cyc[:20]
            ],
            "normalizer(H)": lambda mod: [
                mod.normalizer_members(table, inv, a) for a in cyc[:10]
            ],
            "conjugate_set(x sweep)": lambda mod: [
                mod.conjugate_set(table, inv, big, x) for x in range(G.order)
            ],
        }
        for wname, fn in workloads.items():
            times = []
            for _, mod in backends:
                best, _ = timeit(lambda m=mod: fn(m), repeat)
                times.append(best)
            ratio = times[0] / times[-1] if len(times) > 1 and times[-1] > 0 else 1.0
            cells = " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
            print(f"{expr + ': ' + wname:<34} {cells}   {ratio:>6.1f}x")


END_TO_END = (
    "import time; t0=time.perf_counter(); "
    "from grouplab.cli import build; from grouplab.lattice import all_subgroups; "
    "import grouplab; G=build('Ex3'); n=len(all_subgroups(G)); "
    "print(f'{grouplab.BACKEND}: {n} subgroups in {time.perf_counter()-t0:.2f}s')"
)


def end_to_end():
    for pure in ("", "1"):
        env = dict(os.environ)
        if pure:
            env["GROUPLAB_PURE"] = pure
        else:
            env.pop("GROUPLAB_PURE", None)
        subprocess.run([sys.executable, "-c", END_TO_END], env=env, check=True)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    if _kernels is None:
        print("note: compiled backend unavailable; timing fallback only")
    micro(args.repeat)
    if args.end_to_end:
        print()
        end_to_end()


if __name__ == "__main__":
    main()
