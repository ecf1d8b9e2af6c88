#!/usr/bin/env python3
"""Run every verification suite and print a compact table; exit status 1 on any failure."""

import sys
import time

from littlewood import verify

failed = 0
for name, suite in verify.SUITES.items():
    t0 = time.perf_counter()
    rep = suite()
    secs = time.perf_counter() - t0
    bad = [c for c in rep.checks if not c.passed]
    failed += len(bad)
    print(f"{name:12s} {len(rep.checks):4d} checks  {'ok' if not bad else f'{len(bad)} FAILED'}  {secs:6.1f} s")
    for c in bad:
        print(f"    {c.id}: slack={c.slack} bound={c.bound} {c.detail}")
sys.exit(1 if failed else 0)
