#!/usr/bin/env python3
"""Sweep singular-modulus heights against their two lower bounds.

Emits a CSV row per valid discriminant: height, class number, both
bounds, and margins.  The tight witnesses are |Delta| = 16 and 163.

  python scripts/height_sweep.py --limit 10000 --workers 8 > heights.csv
"""

from __future__ import annotations

import argparse
import sys

from mpmath import mp, mpf, workprec

from moduli_gauge import heights
from moduli_gauge.parallel import pmap_ordered


def _row(args):
    n, prec = args
    est = heights.singular_modulus_height(-n, prec)
    with workprec(prec + 10):
        lb1 = float((mp.pi * mp.sqrt(n) - mpf("0.01")) / est.terms)
        lb2 = float(3 / mp.sqrt(5) * mp.log(n) - mpf("9.79"))
    h = float(est.value)
    return (n, est.terms, h, lb1, lb2, h - lb1, h - lb2)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=10**4)
    ap.add_argument("--start", type=int, default=16)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--precision", type=int, default=64)
    args = ap.parse_args()

    items = [
        (n, args.precision)
        for n in range(args.start, args.limit + 1)
        if (-n) % 4 in (0, 1)
    ]
    rows = pmap_ordered(_row, items, args.workers)
    w = sys.stdout
    w.write("abs_delta,class_number,height,lower_trivial,lower_colmez,margin_trivial,margin_colmez\n")
    violations = 0
    for r in rows:
        if r[5] < 0 or r[6] < 0:
            violations += 1
        w.write(",".join(str(x) for x in r) + "\n")
    print(f"violations: {violations}", file=sys.stderr)
    return 1 if violations else 0


if __name__ == "__main__":
    raise SystemExit(main())
