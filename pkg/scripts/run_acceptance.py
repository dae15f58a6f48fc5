#!/usr/bin/env python3
"""Run the full verification suite and print one line per criterion.

Usage: run_acceptance.py [--seed N] [--json]
Exit code 0 iff every criterion passes.
"""

import argparse
import json
import sys

from heisenberg_ncg import acceptance as acc


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=acc.DEFAULT_SEED)
    parser.add_argument("--json", action="store_true", help="emit the full report")
    args = parser.parse_args()

    report = acc.run_all(seed=args.seed)
    if args.json:
        print(json.dumps(report, sort_keys=True, default=str))
    else:
        for r in report["results"]:
            status = "PASS" if r["passed"] else "FAIL"
            print(f"[{status}] criterion {r['criterion']:>2}: "
                  f"{r['name']} ({r['elapsed_s']}s)")
        print("overall:", "PASS" if report["passed"] else "FAIL")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
