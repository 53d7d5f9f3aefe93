#!/usr/bin/env python3
"""Run every verification suite and print the combined report.

Usage: python3 scripts/run_verification.py [--seed N] [--cases N] [--json]
Exits nonzero if any check fails.
"""

import argparse
import json
import sys

from delpezzo_lct import (
    run_property_suites,
    verify_complementary_sections,
    verify_corollary,
    verify_lines,
    verify_table1,
)
from delpezzo_lct.glct import verify_lemma_G_all, verify_lemma_H_all


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--cases", type=int, default=1000)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    reports = [
        verify_table1(),
        verify_lines(),
        verify_lemma_G_all(),
        verify_lemma_H_all(),
        verify_corollary(),
        verify_complementary_sections(),
        run_property_suites(args.seed, args.cases),
    ]
    if args.json:
        print(json.dumps([r.to_json_obj() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            print(r.to_text())
            print()
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
