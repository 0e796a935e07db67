"""Self-convergence of the double-exponential rule on exceptional Gram diagonals.

For each seed type the relative error of the Gram diagonal against the
closed-form norm is printed for quadrature levels 5..12.
"""
import argparse
from fractions import Fraction

import numpy as np

from xhr.darboux import ExceptionalFamily
from xhr.verify import exceptional_gram

F = Fraction
CASES = [(1, 2, F(1, 2), F(1, 3)), (2, 2, F(1, 2), F(1, 3)),
         (3, 2, F(1, 2), F(3, 4)), (4, 2, F(1, 2), F(3, 4))]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--levels", default="5..12")
    args = ap.parse_args()
    lo, hi = (int(v) for v in args.levels.split(".."))
    print("type  l0  " + "  ".join(f"L{k:<8}" for k in range(lo, hi + 1)))
    for j0, l0, a, b in CASES:
        fam = ExceptionalFamily.of(j0, l0, (a, b))
        idx = fam.indices_in(0, 6)
        h = np.array([fam.norm(n) for n in idx])
        errs = []
        for level in range(lo, hi + 1):
            G = exceptional_gram(fam, idx, level)
            errs.append(float(np.max(np.abs(np.diag(G) - h) / np.abs(h))))
        print(f"{j0:>4}  {l0:>2}  " + "  ".join(f"{e:<9.2e}" for e in errs))


if __name__ == "__main__":
    main()
