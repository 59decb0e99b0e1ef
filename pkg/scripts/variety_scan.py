#!/usr/bin/env python3
"""Exhaustive PG(5,q) scan timings for the variety-equality check.

Walks every prime up to the bound (characteristic 3 excluded), verifies that
the common zero set of the quadric and the three cone forms equals the Klein
image of the tangent set plus the pencil, and reports candidate counts and
wall-clock time. Useful for judging how far the desk-scale scan reaches.

Usage: python scripts/variety_scan.py [--max-p 13] [--threads 4]
"""

import argparse
import sys
import time

from bwcayley.field import PrimeField, is_prime
from bwcayley.klein import verify_variety_equality


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-p", type=int, default=13)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    print(f"{'q':>4} {'candidates':>12} {'zero set':>9} {'expected':>9} {'equal':>6} {'secs':>7}")
    failures = 0
    for p in range(2, args.max_p + 1):
        if not is_prime(p) or p == 3:
            continue
        F = PrimeField(p)
        candidates = (p**6 - 1) // (p - 1)
        t0 = time.perf_counter()
        r = verify_variety_equality(F, threads=args.threads)
        secs = time.perf_counter() - t0
        ok = "yes" if r.passed else "NO"
        print(
            f"{p:>4} {candidates:>12} {r.counts['zero_set_points']:>9} "
            f"{r.counts['expected']:>9} {ok:>6} {secs:>7.2f}"
        )
        if not r.passed:
            failures += 1
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
