"""Compare the compiled kernels with the numpy fallback on realistic inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Inputs are real orbit data: the rho = 10 generators applied to a frontier
taken from an enumeration, and the pairwise scan over the rho = 9 and
rho = 10 packing records.
"""

from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from apollo import _kernels_py, packing

try:
    from apollo import _kernels
except ImportError:
    _kernels = None


def _frontier(rho: int, size: int) -> np.ndarray:
    en = packing.enumerate_packing(rho, 5)
    orbit = packing._Orbit(packing.build_group(rho), packing.window_base(rho))
    orbit.grow(en.height_bound)
    rows = sorted(orbit.parent)[:size]
    return np.array(rows, dtype=np.int64)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    rho = 10
    group = packing.build_group(rho)
    gens = group.as_array()
    B = np.array(packing.window_base(rho), dtype=np.int64)
    E0 = np.zeros(rho, dtype=np.int64)
    F = _frontier(rho, 50_000)
    recs = {r: np.array(packing.enumerate_packing(r, 5).vectors(), dtype=np.int64) for r in (9, 10)}

    cases = [
        (f"expand  ({len(F)} x {len(gens)} images)", lambda m: m.expand(F, gens, E0, B, 200)),
        (f"pair_scan rho=9  ({len(recs[9])} records)", lambda m: m.pair_scan(recs[9])),
        (f"pair_scan rho=10 ({len(recs[10])} records)", lambda m: m.pair_scan(recs[10])),
    ]
    print(f"{'kernel':40} {'cython ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, fn in cases:
        a, b = fn(_kernels), fn(_kernels_py)
        for x, y in zip(a, b):
            assert np.array_equal(np.asarray(x), np.asarray(y)), f"{name}: backends disagree"
        tc = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat)) * 1e3
        tn = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:40} {tc:10.2f} {tn:10.2f} {tn / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
