"""Export weight samples, norm tables and Gram matrices for each seed type as CSV.

    python3 scripts/gram_tables.py --outdir results/tables
"""
import argparse
from pathlib import Path

from xhr.cli import main as cli_main

CASES = [
    # (j0, l0, alpha, beta, n-range)
    (1, 2, "1/2", "1/3", "0..7"),
    (2, 2, "1/2", "1/3", "0..6"),
    (3, 2, "1/2", "3/4", "0..6"),
    (4, 2, "1/2", "3/4", "-3..5"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--outdir", default="results/tables")
    ap.add_argument("--quad-level", default="9")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for j0, l0, a, b, n in CASES:
        for kind in ("weight", "norms", "gram"):
            path = out / f"type{j0}_l{l0}_{kind}.csv"
            code = cli_main(["table", "--kind", kind, "--family", "exceptional",
                             "--j0", str(j0), "--l0", str(l0), "--alpha", a, "--beta", b,
                             "--n", n, "--quad-level", args.quad_level, "--out", str(path)])
            print(f"{path}  exit {code}")
            if code:
                return code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
