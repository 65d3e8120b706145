"""Benchmark the compiled kernels against the numpy/Python reference.

Run as `python benchmarks/bench_kernels.py`.  Covers the three hot paths:
additive closures, multiplication-table construction, and the packed GF(2)
spread-set scan (full GL(4,2) sweep, no early exit).
"""

import random
import time

import numpy as np

from skewsf import classify, gf, semifield, skewpoly
from skewsf.kernels import implementations


def _timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench():
    impls = implementations()
    rng = random.Random(0)
    cases = []

    # lin_closure and mul_table at order 4096 (p = 2) and 729 (p = 3)
    for p, m in ((2, 12), (3, 6)):
        B = [[rng.randrange(p**m) for _ in range(m)] for _ in range(m)]
        seed = [rng.randrange(p**m) for _ in range(m)]
        cases.append((f"lin_closure p={p} N={p**m}", "lin_closure", (seed, p, m)))
        cases.append((f"mul_table   p={p} N={p**m}", "mul_table", (B, p, m)))

    # spread-set scans: once to the first witness (equivalent pair), once over
    # the whole GL(4,2) range with no witness (semifield against the field)
    desc = gf.build_tower(2, 1, 2)
    ring = skewpoly.SkewRing(desc, 1)
    irr = list(ring.irreducible_polys(2))
    S0, S1 = semifield.Semifield(irr[0]), semifield.Semifield(irr[1])
    FA = semifield.FieldAlgebra(gf.build_tower(2, 1, 4).K)
    src = [classify._pack_gf2(semifield.spread_matrix(S0, a)) for a in range(1, 16)]
    dst = [classify._pack_gf2(semifield.spread_matrix(S1, b)) for b in range(1, 16)]
    fld = [classify._pack_gf2(semifield.spread_matrix(FA, b)) for b in range(1, 16)]
    cases.append(("spreadset first witness", "spreadset_chunk_gf2", (src, dst, 4, 0, 65536)))
    cases.append(("spreadset full sweep", "spreadset_chunk_gf2", (src, fld, 4, 0, 65536)))

    width = max(len(name) for name, _, _ in cases)
    header = f"{'case'.ljust(width)}  " + "  ".join(f"{k:>12}" for k in impls)
    print(header)
    print("-" * len(header))
    for name, fn_name, fn_args in cases:
        times = {}
        outputs = {}
        for key, mod in impls.items():
            t, out = _timeit(lambda m=mod: getattr(m, fn_name)(*fn_args))
            times[key] = t
            outputs[key] = out
        vals = list(outputs.values())
        if isinstance(vals[0], np.ndarray):
            agree = all(np.array_equal(vals[0], v) for v in vals[1:])
        else:
            agree = all(vals[0] == v for v in vals[1:])
        row = f"{name.ljust(width)}  " + "  ".join(f"{times[k]*1e3:9.2f} ms" for k in impls)
        if not agree:
            row += "  MISMATCH"
        print(row)
    if "compiled" not in impls:
        print("\ncompiled kernel not built; only the reference ran")


if __name__ == "__main__":
    bench()
