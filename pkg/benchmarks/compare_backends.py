#!/usr/bin/env python3
"""Time the compiled scan kernels against the pure-Python twin.

Runs the same three sweeps through both implementations, checks they return
identical results (a benchmark that silently diverges is worse than no
benchmark), and prints a wall-clock table.  The grids mirror what the
oracle-equivalence suite leans on hardest: full fixed-residue scans and the
combined pair sweep over every branch unit at one level.

Usage: python3 benchmarks/compare_backends.py [--level N] [--repeat K]
"""

import argparse
import sys
import time

from qadic import _scan_py

try:
    from qadic import _fastscan
except ImportError:
    print("compiled extension not importable; nothing to compare against", file=sys.stderr)
    sys.exit(1)


def branch_units(p: int, n: int) -> list[int]:
    return [q for q in range(2, p**n) if q % p == 1]


def bench(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--level", type=int, default=7, help="modulus exponent for p = 3 (default 7)")
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions, best-of (default 3)")
    args = ap.parse_args()

    p, n = 3, args.level
    qs = branch_units(p, n)
    a0s = [p ** (n - 1) for _ in qs]
    m = p**n

    jobs = [
        (
            f"fixed_residues   p={p} n={n}, {len(qs)} parameters",
            lambda impl: [impl.fixed_residues(q, p, n) for q in qs],
        ),
        (
            f"order_sweep      p={p} n={n}, {m} values",
            lambda impl: list(impl.order_sweep(p, n, range(m))),
        ),
        (
            f"pair_sweep       p={p} n={n}, {len(qs)} parameters",
            lambda impl: [list(x) for x in impl.pair_sweep(p, n, qs, a0s)],
        ),
    ]

    print(f"{'sweep':<44} {'compiled':>10} {'pure':>10} {'speedup':>8}")
    for label, job in jobs:
        t_fast, r_fast = bench(lambda: job(_fastscan), args.repeat)
        t_pure, r_pure = bench(lambda: job(_scan_py), args.repeat)
        if r_fast != r_pure:
            print(f"{label}: BACKENDS DISAGREE", file=sys.stderr)
            return 2
        print(f"{label:<44} {t_fast * 1e3:>8.1f}ms {t_pure * 1e3:>8.1f}ms {t_pure / t_fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
