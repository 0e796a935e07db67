"""Command line: build polynomials, run verification suites, export tables.

    xhr poly   --family exceptional --j0 1 --l0 2 --alpha 1/2 --beta 1/3 --n 0..5
    xhr verify --suite gevp --alpha 2/5 --beta 1/3 --n 0..8
    xhr table  --kind norms --j0 1 --l0 2 --n 0..6 --format csv

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .darboux import ExceptionalFamily, IndexNotInSetError, InvalidSeedError
from .exact import Q, LaurentPoly
from .hr import DegenerateParameterError, HRParams, hr_norm, hr_partner, hr_poly, hr_weight
from .quad import NonIntegrableError, de_rule, eval_on_circle, gram_matrix
from .verify import (
    SUITES,
    DivergentWeightError,
    SuiteConfig,
    classical_guard,
    exceptional_gram,
    exceptional_guard,
    run_suite,
)

FAMILIES = ("hr", "hr-partner", "exceptional", "exceptional-partner")
TABLE_KINDS = ("weight", "norms", "gram")
ENV_QUAD_LEVEL = "XHR_QUAD_LEVEL"
DEFAULT_QUAD_LEVEL = 9

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    alpha: Fraction = Fraction(1, 2)
    beta: Fraction = Fraction(1, 3)
    family: str = "hr"
    j0: Optional[int] = None
    l0: Optional[int] = None
    n_lo: int = 0
    n_hi: int = 6
    suite: Optional[str] = None
    kind: str = "weight"
    quad_level: int = DEFAULT_QUAD_LEVEL
    fmt: str = "json"
    out: Optional[str] = None
    seeds: List[Tuple[int, int]] = field(default_factory=lambda: [(1, 1), (1, 2)])
    tolerance: Optional[float] = None

    @property
    def params(self) -> HRParams:
        return HRParams(self.alpha, self.beta)

    def suite_config(self) -> SuiteConfig:
        return SuiteConfig(self.params, self.n_lo, self.n_hi, self.j0, self.l0,
                           self.quad_level, self.tolerance, list(self.seeds))


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

def parse_rational(s: str) -> Fraction:
    try:
        return Q(s)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise UsageError(f"expected an exact rational like 1/2, got {s!r} ({e})") from None


def parse_range(s: str) -> Tuple[int, int]:
    s = s.strip()
    try:
        if ".." in s:
            a, b = s.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(s)
    except ValueError:
        raise UsageError(f"expected an index range like 0..6 or -3..4, got {s!r}") from None
    if lo > hi:
        raise UsageError(f"empty index range {s!r}")
    return lo, hi


def parse_seeds(s: str) -> List[Tuple[int, int]]:
    out = []
    for item in s.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            j, l = item.split(":")
            out.append((int(j), int(l)))
        except ValueError:
            raise UsageError(f"expected seeds like '1:1,1:2', got {s!r}") from None
    if not out:
        raise UsageError("empty seed list")
    return out


def read_config_file(path: str) -> Dict[str, str]:
    """Flat ``key = value`` lines; '#' starts a comment; keys use flag spelling."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip().lstrip("-").replace("-", "_")] = v.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # defaults are None so a config file can fill in what the flags leave unset
    common.add_argument("--config", help="flat key=value file; flags win on conflict")
    common.add_argument("--alpha", help="exact rational, e.g. 1/2")
    common.add_argument("--beta", help="exact rational, e.g. 1/3")
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--j0", type=int, choices=(1, 2, 3, 4))
    common.add_argument("--l0", type=int)
    common.add_argument("--n", dest="n", help="index range a..b (negative allowed)")
    common.add_argument("--quad-level", dest="quad_level", type=int)
    common.add_argument("--format", dest="fmt", choices=("json", "csv"))
    common.add_argument("--out")
    common.add_argument("--seeds", help="multistep seeds 'j0:l0,j0:l0'")
    common.add_argument("--tolerance", type=float)

    p = argparse.ArgumentParser(prog="xhr", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("poly", parents=[common], help="emit exact polynomial coefficients")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=sorted(SUITES))
    t = sub.add_parser("table", parents=[common], help="emit CSV plot data")
    t.add_argument("--kind", choices=TABLE_KINDS)
    return p


def resolve_config(ns: argparse.Namespace, env: Optional[Dict[str, str]] = None) -> RunConfig:
    env = os.environ if env is None else env
    file_vals = read_config_file(ns.config) if getattr(ns, "config", None) else {}

    def pick(key):
        v = getattr(ns, key, None)
        return v if v is not None else file_vals.get(key)

    cfg = RunConfig(command=ns.command)
    if pick("alpha") is not None:
        cfg.alpha = parse_rational(str(pick("alpha")))
    if pick("beta") is not None:
        cfg.beta = parse_rational(str(pick("beta")))
    if pick("family") is not None:
        if pick("family") not in FAMILIES:
            raise UsageError(f"unknown family {pick('family')!r}")
        cfg.family = pick("family")
    for key in ("j0", "l0"):
        if pick(key) is not None:
            try:
                setattr(cfg, key, int(pick(key)))
            except ValueError:
                raise UsageError(f"--{key} must be an integer") from None
    if cfg.j0 is not None and cfg.j0 not in (1, 2, 3, 4):
        raise UsageError("--j0 must be 1..4")
    if cfg.l0 is not None and cfg.l0 < 1:
        raise UsageError("--l0 must be a positive integer")
    if pick("n") is not None:
        cfg.n_lo, cfg.n_hi = parse_range(str(pick("n")))
    level = pick("quad_level")
    if level is None:
        level = env.get(ENV_QUAD_LEVEL)
    if level is not None:
        try:
            cfg.quad_level = int(level)
        except ValueError:
            raise UsageError(f"quadrature level must be an integer, got {level!r}") from None
    if not 4 <= cfg.quad_level <= 12:
        raise UsageError("quadrature level must be in 4..12")
    if pick("fmt") is not None:
        cfg.fmt = pick("fmt")
    elif "format" in file_vals:
        cfg.fmt = file_vals["format"]
    if cfg.fmt not in ("json", "csv"):
        raise UsageError(f"unknown format {cfg.fmt!r}")
    cfg.out = pick("out")
    if pick("seeds") is not None:
        cfg.seeds = parse_seeds(str(pick("seeds")))
    if pick("tolerance") is not None:
        cfg.tolerance = float(pick("tolerance"))
    if ns.command == "verify":
        cfg.suite = pick("suite")
        if cfg.suite is None:
            raise UsageError("verify needs --suite")
        if cfg.suite not in SUITES:
            raise UsageError(f"unknown suite {cfg.suite!r}")
    if ns.command == "table":
        kind = pick("kind")
        if kind is not None:
            if kind not in TABLE_KINDS:
                raise UsageError(f"unknown table kind {kind!r}")
            cfg.kind = kind
    return cfg


# --------------------------------------------------------------------------
# emission helpers
# --------------------------------------------------------------------------

def fmt_float(x: float) -> str:
    return "%.17g" % x


def poly_record(family: str, n: int, P: LaurentPoly) -> Dict[str, object]:
    return {
        "family": family,
        "n": n,
        "degree": P.degree,
        "coefficients": [[k, str(c)] for k, c in P.items()],
    }


def poly_from_record(rec: Dict[str, object]) -> LaurentPoly:
    return LaurentPoly({int(k): Fraction(c) for k, c in rec["coefficients"]})


def _needs_seed(cfg: RunConfig) -> None:
    if cfg.j0 is None or cfg.l0 is None:
        raise UsageError("exceptional families need --j0 and --l0")


def _family_builders(cfg: RunConfig):
    """(label, index list, n -> polynomial) for the configured family."""
    p = cfg.params
    if cfg.family in ("hr", "hr-partner"):
        if cfg.n_lo < 0:
            raise UsageError("classical HR indices start at 0")
        build = (lambda n: hr_poly(n, p)) if cfg.family == "hr" else (lambda n: hr_partner(n, p))
        return cfg.family, list(range(cfg.n_lo, cfg.n_hi + 1)), build
    _needs_seed(cfg)
    fam = ExceptionalFamily.of(cfg.j0, cfg.l0, p)
    build = fam.P if cfg.family == "exceptional" else fam.Q
    label = f"{cfg.family}({cfg.j0},{cfg.l0})"
    if cfg.n_lo == cfg.n_hi:
        fam.check_index(cfg.n_lo)      # a single requested index must exist
    return label, fam.indices_in(cfg.n_lo, cfg.n_hi), build


def cmd_poly(cfg: RunConfig) -> Tuple[int, str]:
    label, idx, build = _family_builders(cfg)
    recs = [poly_record(label, n, build(n)) for n in idx]
    if cfg.fmt == "json":
        return EXIT_OK, json.dumps(recs, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "degree", "exponent", "coefficient"])
    for r in recs:
        for k, c in r["coefficients"]:
            w.writerow([r["family"], r["n"], r["degree"], k, c])
    return EXIT_OK, buf.getvalue()


def cmd_verify(cfg: RunConfig) -> Tuple[int, str]:
    rep = run_suite(cfg.suite, cfg.suite_config())
    text = json.dumps(rep.to_dict(), indent=1, sort_keys=False) + "\n"
    return (EXIT_OK if rep.ok else EXIT_FAIL), text


def _csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def weight_sample_points(count: int = 512) -> np.ndarray:
    """``count`` equally spaced x in (0, 2pi), endpoints excluded."""
    return 2 * math.pi * np.arange(1, count + 1) / (count + 1)


def cmd_table(cfg: RunConfig) -> Tuple[int, str]:
    p = cfg.params
    if cfg.family.startswith("exceptional"):
        _needs_seed(cfg)
        fam = ExceptionalFamily.of(cfg.j0, cfg.l0, p)
        exceptional_guard(fam)
    else:
        fam = None
        classical_guard(p)

    if cfg.kind == "weight":
        w = fam.weight() if fam else hr_weight(p)
        x = weight_sample_points()
        vals = eval_on_circle(w, x)
        rows = [(float(xi), float(v.real), float(v.imag)) for xi, v in zip(x, vals)]
        return EXIT_OK, _csv(["x", "weight_re", "weight_im"], rows)

    if fam is None:
        idx = list(range(max(cfg.n_lo, 0), cfg.n_hi + 1))
        G = gram_matrix(lambda n: hr_poly(n, p), lambda n: hr_partner(n, p), hr_weight(p),
                        idx, de_rule(cfg.quad_level))
        formula = {n: hr_norm(n, p) for n in idx}
    else:
        idx = fam.indices_in(cfg.n_lo, cfg.n_hi)
        G = exceptional_gram(fam, idx, cfg.quad_level)
        formula = {n: fam.norm(n) for n in idx if not (cfg.j0 == 4 and n == -cfg.l0 - 1)}

    if cfg.kind == "norms":
        rows = []
        for i, n in enumerate(idx):
            f = formula.get(n)
            q = G[i, i]
            rows.append((n, fmt_float(f) if f is not None else "", float(q.real), float(q.imag)))
        return EXIT_OK, _csv(["n", "formula_value", "quadrature_re", "quadrature_im"], rows)

    rows = [(m, n, float(G[i, k].real), float(G[i, k].imag))
            for i, m in enumerate(idx) for k, n in enumerate(idx)]
    return EXIT_OK, _csv(["m", "n", "re", "im"], rows)


COMMANDS = {"poly": cmd_poly, "verify": cmd_verify, "table": cmd_table}

PARAMETER_ERRORS = (
    UsageError,
    DegenerateParameterError,
    InvalidSeedError,
    IndexNotInSetError,
    DivergentWeightError,
    NonIntegrableError,
)


VALUE_FLAGS_ALLOWING_MINUS = ("--n", "--alpha", "--beta", "--tolerance")


def glue_negative_values(argv: Sequence[str]) -> List[str]:
    """Turn ``--n -2..1`` into ``--n=-2..1`` so argparse does not read it as a flag."""
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        a = argv[i]
        if a in VALUE_FLAGS_ALLOWING_MINUS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and len(argv[i + 1]) > 1 and (argv[i + 1][1].isdigit() or argv[i + 1][1] == "."):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = glue_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:          # argparse already printed the message
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = resolve_config(ns)
        code, text = COMMANDS[cfg.command](cfg)
    except PARAMETER_ERRORS as e:
        print(f"xhr: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"xhr: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
