#!/usr/bin/env python3
"""Energies and decomposition sizes for the odd-times-power-of-two family.

For A = {(2m - 1) 2^j} prints, per size, the additive and multiplicative
energies normalised by n^3 and the part sizes of each decomposition mode.

    python3 scripts/bw_profile.py --sizes 8,16,32,64
"""
import argparse

from sumprod.decompose import decompose
from sumprod.energy import additive_energy, multiplicative_energy
from sumprod.families import FamilySpec, generate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="8,16,32,64")
    args = ap.parse_args()

    print(f"{'n':>5}{'E+/n^3':>9}{'Ex/n^3':>9}  {'main':>10}{'partition':>14}{'fourth':>10}")
    for n in map(int, args.sizes.split(",")):
        A = generate(FamilySpec("balog_wooley").with_size(n))
        ea, em = additive_energy(A), multiplicative_energy(A)
        main_ = decompose(A, "main")
        part = decompose(A, "partition")
        fourth = decompose(A, "fourth")
        print(f"{n:>5}{ea / n**3:>9.3f}{em / n**3:>9.3f}  "
              f"{len(main_.X):>4}/{len(main_.Y):<5}"
              f"{len(part.B):>7}/{len(part.C):<6}"
              f"{len(fourth.X):>4}/{len(fourth.Y):<5}")
    print("main and fourth: |X|/|Y| of the cover; partition: |B|/|C|")


if __name__ == "__main__":
    main()
