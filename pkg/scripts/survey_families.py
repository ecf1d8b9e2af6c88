#!/usr/bin/env python3
"""Convergence tables for the standard families, written as CSV under results/.

    python scripts/survey_families.py --primes-max 10000 --jobs 4
"""

import argparse
import logging
import time
from fractions import Fraction
from pathlib import Path

from littlewood.polybuild import LimitProfile
from littlewood.survey import run_survey, write_csv

FAMILIES = {
    "fekete": (LimitProfile("quadratic", 1, (1,), (0,)), 1),
    "fekete_shifted": (LimitProfile("quadratic", 1, (1,), (Fraction(1, 4),)), 1),
    "additive": (LimitProfile("additive", 1, (1,)), 1),
    "nonquadratic": (LimitProfile("nonquadratic", 1, (1,)), 1),
    "quadratic_2d": (LimitProfile("quadratic", 2, (1, 1), (0, 0)), 2),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes-max", type=int, default=2000)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--only", nargs="*", choices=list(FAMILIES))
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO)

    out = Path(args.outdir)
    out.mkdir(exist_ok=True)
    for name in args.only or FAMILIES:
        profile, e = FAMILIES[name]
        top = int(args.primes_max ** (1 / e)) if e > 1 else args.primes_max
        t0 = time.perf_counter()
        path = out / f"{name}.csv"
        with path.open("w") as fh:
            rows = list(run_survey(profile, top, jobs=args.jobs))
            write_csv(rows, fh)
        last = rows[-1]
        print(f"{name:15s} {len(rows):5d} rows  last n={last.q:<8d} ratio4={last.ratio4:.5f} "
              f"limit={last.predicted:.5f} err={last.abs_err:.2e}  ({time.perf_counter() - t0:.1f} s) -> {path}")


if __name__ == "__main__":
    main()
