"""Verification suites.  Each returns a ``Report`` of individual cases.

Exact suites record an error of 0.0 when an identity holds and 1.0 when it
does not; numeric suites record the relative error they measured.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .darboux import (
    ExceptionalFamily,
    MultistepTransform,
    SeedSpec,
    hpsi,
    l0_one_coincidences,
    seed_factors,
    state_function,
    state_function_table,
    state_is_annihilated,
    transformed_gevp_residual,
    weight_from_adjoint,
)
from .diffop import (
    DiffOp2,
    circle_adjoint,
    closed_form_transformed,
    pencil_residual,
    reassemble,
    transformed_from_factors,
)
from .exact import LaurentPoly, QuasiRationalFunc
from .hr import (
    HRParams,
    cd_identity_check,
    eigen_family,
    h_tilde,
    h_tilde_closed,
    hr_moment,
    hr_norm,
    hr_partner,
    hr_pencil,
    hr_poly,
    hr_poly_by_recurrence,
    hr_weight,
    lemma31_check,
    pearson_check,
    recurrence_coeffs,
)
from .quad import (
    bilinear_form,
    de_rule,
    exponent_at_one,
    gram_matrix,
    integrate,
    moment_gram,
    offdiag_relative,
)

QRF = QuasiRationalFunc

DEFAULT_TOLERANCE = {
    "biorth-classical": 1e-9,
    "biorth-exceptional": 1e-8,
    "multistep": 1e-7,
    "moments": 1e-10,
}


class DivergentWeightError(ValueError):
    """A requested integral diverges; the message names the failed condition."""


@dataclass
class SuiteConfig:
    params: HRParams
    n_lo: int = 0
    n_hi: int = 6
    j0: Optional[int] = None
    l0: Optional[int] = None
    quad_level: int = 9
    tolerance: Optional[float] = None
    seeds: List[Tuple[int, int]] = field(default_factory=lambda: [(1, 1), (1, 2)])
    rng_seed: int = 20240101

    def tol(self, suite: str) -> float:
        return self.tolerance if self.tolerance is not None else DEFAULT_TOLERANCE.get(suite, 0.0)

    def n_range(self, lo: Optional[int] = None) -> range:
        return range(max(self.n_lo, 0) if lo is None else lo, self.n_hi + 1)


@dataclass
class Report:
    suite: str
    cases: int = 0
    passed: int = 0
    failed: int = 0
    worst_error: float = 0.0
    failures: List[str] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    def record(self, name: str, ok: bool, err: float = 0.0) -> None:
        self.cases += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(name)
        if err > self.worst_error or err != err:
            self.worst_error = float(err)

    def exact(self, name: str, ok: bool) -> None:
        self.record(name, bool(ok), 0.0 if ok else 1.0)

    def numeric(self, name: str, err: float, tol: float) -> None:
        self.record(name, err < tol, err)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.cases > 0

    def to_dict(self) -> Dict[str, object]:
        d = {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "worst_error": self.worst_error,
        }
        if self.failures:
            d["failures"] = self.failures[:20]
        if self.notes:
            d["notes"] = self.notes
        return d


# --------------------------------------------------------------------------
# guards
# --------------------------------------------------------------------------

def classical_guard(p: HRParams) -> None:
    if p.alpha + p.beta <= -1:
        raise DivergentWeightError(
            f"classical convergence fails: alpha+beta = {p.alpha + p.beta} <= -1"
        )


def exceptional_guard(fam: ExceptionalFamily) -> None:
    """Every check that must pass before an exceptional Gram integral is attempted."""
    v = fam.seed.violations()
    if v:
        raise DivergentWeightError("; ".join(v))
    classical_guard(fam.params)
    e = exponent_at_one(fam.weight())
    if e <= -1:
        raise DivergentWeightError(
            f"exceptional weight integrability at z = 1 fails: exponent {e} <= -1"
        )


# --------------------------------------------------------------------------
# exact suites
# --------------------------------------------------------------------------

def suite_gevp(cfg: SuiteConfig) -> Report:
    """Primal and adjoint eigenfamilies; transformed pencil too when a seed is given."""
    rep = Report("gevp")
    p = cfg.params
    for side in ("primal", "adjoint"):
        for j in (1, 2, 3, 4):
            fam = eigen_family(j, side, p)
            P = fam.pencil()
            for n in cfg.n_range():
                res = pencil_residual(P, fam.eigenvalue(n), fam.function(n))
                rep.exact(f"{side} j={j} n={n}", res.is_zero())
    if cfg.j0 is not None and cfg.l0 is not None:
        darboux_operator_checks(SeedSpec(cfg.j0, cfg.l0, p), cfg.n_hi, rep)
    return rep


def darboux_operator_checks(seed: SeedSpec, n_hi: int, rep: Report, k_range=range(-4, 9)) -> Report:
    """Factorization, closed-form transformed pencil, intertwining, transformed GEVP."""
    P = seed.pencil()
    fac = seed_factors(seed)
    tag = f"seed ({seed.j0},{seed.l0})"
    back = reassemble(P, fac)
    rep.exact(f"{tag} factorization L1", _same_op(back.L1, P.L1))
    rep.exact(f"{tag} factorization L2", _same_op(back.L2, P.L2))
    comp = transformed_from_factors(fac)
    closed = closed_form_transformed(P, fac.phi, fac.kappa, fac.eps)
    rep.exact(f"{tag} closed form L1", _same_op(comp.L1, closed.L1))
    rep.exact(f"{tag} closed form L2", _same_op(comp.L2, closed.L2))
    pt_inv = fac.phi_tilde.inverse()
    for lam in (Fraction(0), Fraction(1)):           # both sides are affine in lambda
        L = P.at(lam)
        Lh = comp.at(lam)
        back_op = fac.backward(lam)
        for k in k_range:
            zk = QRF.coerce(LaurentPoly.monomial(k))
            lhs = fac.F(L(zk) * pt_inv)
            rhs = Lh(fac.F(zk))
            rep.exact(f"{tag} intertwining F lam={lam} k={k}", lhs == rhs)
            lhs2 = L(back_op(zk))
            rhs2 = back_op(Lh(zk)) * fac.phi_tilde
            rep.exact(f"{tag} intertwining G lam={lam} k={k}", lhs2 == rhs2)
    fam = ExceptionalFamily(seed)
    for n in fam.indices_in(-seed.l0 - 1, n_hi):
        rep.exact(f"{tag} transformed GEVP n={n}", transformed_gevp_residual(fam, n).is_zero())
    return rep


def _same_op(a: DiffOp2, b: DiffOp2) -> bool:
    return a.A == b.A and a.B == b.B and a.C == b.C


def adjoint_display(p: HRParams):
    """The closed coefficient forms of the conjugate-adjoint pencil."""
    a, b = p.alpha, p.beta
    L1s = DiffOp2(LaurentPoly({2: -1, 3: 1}), LaurentPoly({1: -(2 + a), 2: 3 - b}), LaurentPoly({1: 1 - b}))
    L2s = DiffOp2(0, LaurentPoly({1: -1, 2: 1}), LaurentPoly({0: -1 - a, 1: 1}))
    return L1s, L2s


def suite_adjoint(cfg: SuiteConfig) -> Report:
    rep = Report("adjoint")
    p = cfg.params
    P = hr_pencil(p)
    A = P.adjoint()
    d1, d2 = adjoint_display(p)
    rep.exact("L1* closed form", _same_op(A.L1, d1))
    rep.exact("L2* closed form", _same_op(A.L2, d2))
    rep.exact("L1** = L1", _same_op(circle_adjoint(A.L1), P.L1))
    rep.exact("L2** = L2", _same_op(circle_adjoint(A.L2), P.L2))
    for j in (1, 2, 3, 4):
        fam = eigen_family(j, "adjoint", p)
        for n in cfg.n_range():
            res = pencil_residual(A, fam.eigenvalue(n), fam.function(n))
            rep.exact(f"adjoint j={j} n={n}", res.is_zero())
    return rep


def suite_lemma31(cfg: SuiteConfig) -> Report:
    """Recurrence, the four shift/derivative identities and monicity."""
    rep = Report("lemma31")
    p = cfg.params
    z = LaurentPoly.monomial(1)
    for n in cfg.n_range():
        Pn = hr_poly(n, p)
        rep.exact(f"monic n={n}", Pn.degree == n and Pn.leading_coeff == 1)
        rep.exact(f"series = recurrence n={n}", Pn == hr_poly_by_recurrence(n, p))
        if n >= 1:
            d, b = recurrence_coeffs(n, p)
            lhs = hr_poly(n + 1, p) + Pn * d
            rhs = z * (Pn + hr_poly(n - 1, p) * b)
            rep.exact(f"three-term recurrence n={n}", lhs == rhs)
        for key, ok in lemma31_check(n, p).items():
            rep.exact(f"{key} n={n}", ok)
    return rep


def random_rational_pairs(count: int, seed: int) -> List[Tuple[Fraction, Fraction]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        y = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        if x != 0 and y != 0 and x != y:
            out.append((x, y))
    return out


def suite_cd(cfg: SuiteConfig, pairs: int = 5) -> Report:
    rep = Report("cd")
    for x, y in random_rational_pairs(pairs, cfg.rng_seed):
        for n in cfg.n_range():
            rep.exact(f"CD n={n} x={x} y={y}", cd_identity_check(n, x, y, cfg.params))
    return rep


def suite_pearson(cfg: SuiteConfig) -> Report:
    rep = Report("pearson")
    p = cfg.params
    rep.exact("weight log-derivative", pearson_check(p))
    ratios = []
    for n in cfg.n_range():
        rep.exact(f"h~ product = closed n={n}", h_tilde(n, p) == h_tilde_closed(n, p))
        if p.positive_definite:
            ratios.append(float(h_tilde(n, p)) / hr_norm(n, p))
    if len(ratios) > 1:
        spread = max(abs(r / ratios[0] - 1) for r in ratios)
        rep.numeric("h~_n / h_n independent of n", spread, 1e-12)
    return rep


def suite_states(cfg: SuiteConfig) -> Report:
    rep = Report("states")
    p = cfg.params
    l0s = [cfg.l0] if cfg.l0 else [1, 2, 3]
    j0s = [cfg.j0] if cfg.j0 else [1, 2, 3, 4]
    for l0 in l0s:
        for j0 in j0s:
            seed = SeedSpec(j0, l0, p)
            v = state_function(seed)
            rep.exact(f"({j0},{l0}) kernel = table", v == state_function_table(seed))
            rep.exact(f"({j0},{l0}) annihilated", state_is_annihilated(seed, v))
            if j0 == 1:
                rep.exact(f"(1,{l0}) state deletion", hpsi(seed, l0).is_zero())
            if j0 == 4:
                fam = ExceptionalFamily(seed)
                lifted = v * LaurentPoly.monomial(l0)
                rep.exact(f"(4,{l0}) z^l0 v = 1", lifted == QRF.coerce(1))
                rep.exact(f"(4,{l0}) P at -l0-1 is 1", fam.P(-l0 - 1) == LaurentPoly.const(1))
    return rep


def suite_l0_one(cfg: SuiteConfig) -> Report:
    rep = Report("l0-one")
    out = l0_one_coincidences(cfg.params, max(cfg.n_hi, 0))
    for key, oks in out.items():
        for n, ok in enumerate(oks):
            rep.exact(f"{key} n={n}", ok)
    return rep


def exceptional_structure(fam: ExceptionalFamily, n_hi: int, rep: Report) -> Report:
    """Degrees, partner swap and the adjoint-route weight for one family."""
    s = fam.seed
    tag = f"({s.j0},{s.l0})"
    partner = fam.partner_family()
    for n in fam.indices_in(-s.l0 - 1, n_hi):
        P, Qn = fam.P(n), fam.Q(n)
        rep.exact(f"{tag} deg P n={n}", P.degree == fam.degree(n))
        rep.exact(f"{tag} deg Q n={n}", Qn.degree == fam.degree(n))
        if n >= 0:
            rep.exact(f"{tag} partner swap n={n}", Qn == partner.P(n))
    W = fam.weight()
    for n in fam.indices_in(0, min(n_hi, 3)):
        rep.exact(f"{tag} weight from adjoint n={n}", weight_from_adjoint(fam, n) == W)
    return rep


# --------------------------------------------------------------------------
# numeric suites
# --------------------------------------------------------------------------

def suite_biorth_classical(cfg: SuiteConfig) -> Report:
    rep = Report("biorth-classical")
    p = cfg.params
    classical_guard(p)
    tol = cfg.tol("biorth-classical")
    idx = list(cfg.n_range())
    rule = de_rule(cfg.quad_level)
    G = gram_matrix(lambda n: hr_poly(n, p), lambda n: hr_partner(n, p), hr_weight(p), idx, rule)
    h = np.array([hr_norm(n, p) for n in idx])
    for i, n in enumerate(idx):
        rep.numeric(f"diag n={n}", abs(G[i, i] - h[i]) / abs(h[i]), tol)
    rep.numeric("off-diagonal", offdiag_relative(G), tol)
    if (p.alpha + p.beta).denominator != 1:
        Gm = moment_gram([hr_poly(n, p) for n in idx], [hr_partner(n, p) for n in idx],
                         lambda k: hr_moment(k, p))
        scale = np.sqrt(np.outer(np.abs(h), np.abs(h)))
        rep.numeric("moment route vs quadrature", float(np.max(np.abs(Gm - G) / scale)), tol)
    return rep


def exceptional_gram(fam: ExceptionalFamily, idx: List[int], level: int) -> np.ndarray:
    exceptional_guard(fam)
    return gram_matrix(fam.P, fam.Q, fam.weight(), idx, de_rule(level))


def suite_biorth_exceptional(cfg: SuiteConfig) -> Report:
    rep = Report("biorth-exceptional")
    if cfg.j0 is None or cfg.l0 is None:
        raise ValueError("biorth-exceptional needs --j0 and --l0")
    fam = ExceptionalFamily.of(cfg.j0, cfg.l0, cfg.params)
    tol = cfg.tol("biorth-exceptional")
    lo = -cfg.l0 - 1 if cfg.j0 == 4 else 0
    idx = fam.indices_in(min(cfg.n_lo, lo) if cfg.n_lo < 0 else cfg.n_lo, cfg.n_hi)
    G = exceptional_gram(fam, idx, cfg.quad_level)
    for i, n in enumerate(idx):
        if cfg.j0 == 4 and n == -cfg.l0 - 1:
            rep.notes["state_addition_norm"] = [G[i, i].real, G[i, i].imag]
            continue
        h = fam.norm(n)
        rep.numeric(f"diag n={n}", abs(G[i, i] - h) / abs(h), tol)
        rep.exact(f"transport ratio n={n}", fam.transport_ratio_holds(n))
    rep.numeric("off-diagonal", offdiag_relative(G), tol)
    exceptional_structure(fam, cfg.n_hi, rep)
    rep.notes["positive_definite"] = fam.seed.positive_definite
    return rep


def suite_moments(cfg: SuiteConfig) -> Report:
    rep = Report("moments")
    p = cfg.params
    classical_guard(p)
    if (p.alpha + p.beta).denominator == 1:
        raise ValueError("closed-form moments need non-integer alpha+beta")
    tol = cfg.tol("moments")
    rule = de_rule(cfg.quad_level)
    w = hr_weight(p)
    for n in range(cfg.n_lo, cfg.n_hi + 1):
        c = hr_moment(n, p)
        q = integrate(w * LaurentPoly.monomial(n), rule)
        rep.numeric(f"c_{n}", abs(c - q) / max(abs(q), 1e-300), tol)
    return rep


def suite_multistep(cfg: SuiteConfig) -> Report:
    rep = Report("multistep")
    p = cfg.params
    classical_guard(p)
    T = MultistepTransform(p, cfg.seeds)
    rep.notes.update(T.report())
    tol = cfg.tol("multistep")
    idx = [n for n in cfg.n_range() if n not in T.kappas]
    psi, img = {}, {}
    for n in idx:
        Pn = hr_poly(n, p)
        a, b = T.wronskian_route(Pn, n), T.sequential(Pn, n)
        rep.exact(f"Wronskian = sequential n={n}", a == b)
        psi[n] = a
        star = eigen_family(1, "adjoint", p).function(n)
        img[n] = T.l2_adjoint_image(star, n)
        rep.exact(f"adjoint image routes n={n}", img[n] == T.l2_adjoint_direct(star, n))
    rule = de_rule(cfg.quad_level)
    G = np.array([[bilinear_form(psi[m], img[n], rule) for n in idx] for m in idx])
    for i, n in enumerate(idx):
        expect = float(T.norm_product(n) * -(n + p.beta)) * hr_norm(n, p)
        rep.numeric(f"norm product n={n}", abs(G[i, i] - expect) / abs(expect), tol)
    if len(idx) > 1:
        rep.numeric("off-diagonal", offdiag_relative(G), tol)
    return rep


SUITES: Dict[str, Callable[[SuiteConfig], Report]] = {
    "gevp": suite_gevp,
    "adjoint": suite_adjoint,
    "lemma31": suite_lemma31,
    "cd": suite_cd,
    "pearson": suite_pearson,
    "biorth-classical": suite_biorth_classical,
    "biorth-exceptional": suite_biorth_exceptional,
    "states": suite_states,
    "l0-one": suite_l0_one,
    "multistep": suite_multistep,
    "moments": suite_moments,
}


def run_suite(name: str, cfg: SuiteConfig) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](cfg)
