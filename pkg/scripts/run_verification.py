#!/usr/bin/env python3
"""Run every verification suite at full desk-scale caps and summarize.

Usage: python scripts/run_verification.py [--max-n 5] [--max-m 3]
Exit code 0 iff every item passes.
"""

import argparse
import sys
import time

from gl11chain.suites import SUITES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--degree-cap", type=int, default=4)
    args = ap.parse_args()
    failed = 0
    for name in SUITES:
        t0 = time.monotonic()
        items = run_suite(
            name,
            max_k=args.max_k,
            max_n=args.max_n if name != "weyl" else min(args.max_n, 4),
            max_m=args.max_m,
            degree_cap=args.degree_cap,
        )
        bad = [it for it in items if not it.ok]
        failed += len(bad)
        print(f"{name:8s} {len(items) - len(bad):4d}/{len(items):<4d} passed  ({time.monotonic() - t0:6.1f}s)")
        for it in bad:
            print(f"    FAIL {it.name}: {it.detail}")
    print("ALL PASS" if failed == 0 else f"{failed} FAILURES")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
