#!/usr/bin/env python3
"""Tabulate |A+A|, |AA| and the sum-product ratio over the four families.

The ratio printed is (|A+A| + |AA|) / n^(4/3); values at or above 1 meet
the baseline exponent with constant one.

    python3 scripts/sum_product_sweep.py --sizes 8,16,32,64,128,256
"""
import argparse

from sumprod.core_sets import combine
from sumprod.families import FamilySpec, KINDS, generate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="8,16,32,64,128,256")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--N", type=int, default=1000, help="ambient range for random subsets")
    args = ap.parse_args()

    print(f"{'family':<15}{'n':>6}{'|A+A|':>9}{'|AA|':>9}{'ratio':>9}")
    for kind in KINDS:
        for n in map(int, args.sizes.split(",")):
            spec = FamilySpec(kind, N=max(args.N, n), seed=args.seed).with_size(n)
            A = generate(spec)
            s, p = len(combine(A, A, "sum")), len(combine(A, A, "prod"))
            print(f"{kind:<15}{len(A):>6}{s:>9}{p:>9}{(s + p) / len(A) ** (4 / 3):>9.3f}")


if __name__ == "__main__":
    main()
