"""Run every verification suite over a few parameter sets and write a JSON summary.

    python3 scripts/run_all_suites.py --out results/suites.json
"""
import argparse
import json
import time
from fractions import Fraction
from pathlib import Path

from xhr.hr import HRParams
from xhr.verify import SuiteConfig, run_suite

F = Fraction

RUNS = [
    ("gevp", dict(params=HRParams(F(2, 5), F(1, 3)), n_hi=8, j0=3, l0=2)),
    ("adjoint", dict(params=HRParams(F(1, 2), F(1, 3)), n_hi=10)),
    ("lemma31", dict(params=HRParams(F(1, 2), F(1, 3)), n_hi=10)),
    ("cd", dict(params=HRParams(F(1, 2), F(1, 3)), n_hi=10)),
    ("pearson", dict(params=HRParams(F(3, 4), F(-1, 5)), n_hi=10)),
    ("states", dict(params=HRParams(F(1, 2), F(1, 3)))),
    ("l0-one", dict(params=HRParams(F(2, 5), F(1, 4)))),
    ("biorth-classical", dict(params=HRParams(F(1, 2), F(1, 3)))),
    ("biorth-exceptional", dict(params=HRParams(F(1, 2), F(1, 3)), j0=1, l0=2, n_hi=7)),
    ("biorth-exceptional", dict(params=HRParams(F(1, 2), F(1, 3)), j0=2, l0=2)),
    ("biorth-exceptional", dict(params=HRParams(F(1, 2), F(3, 4)), j0=3, l0=2)),
    ("biorth-exceptional", dict(params=HRParams(F(1, 2), F(3, 4)), j0=4, l0=2, n_lo=-3, n_hi=5)),
    ("moments", dict(params=HRParams(F(1, 3), F(1, 4)), n_hi=8)),
    ("multistep", dict(params=HRParams(F(1, 2), F(1, 3)), n_hi=4)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out", default=None)
    ap.add_argument("--quad-level", type=int, default=9)
    args = ap.parse_args()
    results, bad = [], 0
    for name, kw in RUNS:
        cfg = SuiteConfig(quad_level=args.quad_level, **kw)
        t0 = time.perf_counter()
        rep = run_suite(name, cfg)
        d = rep.to_dict()
        d["seconds"] = round(time.perf_counter() - t0, 3)
        d["params"] = str(cfg.params)
        d["seed"] = [cfg.j0, cfg.l0]
        results.append(d)
        bad += not rep.ok
        tag = "PASS" if rep.ok else "FAIL"
        print(f"{tag} {name:<20} {str(cfg.params):<24} {rep.passed:>4}/{rep.cases:<4} "
              f"worst {rep.worst_error:.3g}  {d['seconds']:.2f} s")
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(json.dumps(results, indent=1, default=str) + "\n")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
