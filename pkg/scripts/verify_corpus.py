#!/usr/bin/env python3
"""Run the full exact-check suite on every default-corpus set and print a summary table.

    python3 scripts/verify_corpus.py --sizes 4,8,16,32 [--out report.json]
"""
import argparse
import json
import sys
import time

from sumprod.config import HarnessConfig
from sumprod.families import CORPUS_SIZES, default_corpus
from sumprod.harness import verify_suite
from sumprod.report import to_json


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default=",".join(map(str, CORPUS_SIZES[:4])))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    cfg = HarnessConfig(seed=args.seed)

    failures, reports = 0, {}
    print(f"{'set':<22}{'checks':>8}{'failed':>8}{'seconds':>10}")
    for label, _, A in default_corpus(sizes, seed=args.seed):
        t0 = time.perf_counter()
        rep = verify_suite(A, cfg)
        bad = rep.failures()
        failures += len(bad)
        reports[label] = json.loads(to_json(rep))
        print(f"{label:<22}{len(rep.exact_checks):>8}{len(bad):>8}{time.perf_counter() - t0:>10.2f}")
        for c in bad:
            print(f"    {c.name}: {c.lhs} {c.relation} {c.rhs}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(reports, fh, indent=2)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
