"""Single- and multi-step Darboux transformations of the HR pencil.

A seed ``(j0, l0)`` picks the eigenfunction phi^(j0,l0) = xi_j0 * p_l0 of the
HR pencil.  Factoring the pencil through it and swapping the factors gives a
new pencil whose polynomial eigenfunctions are the exceptional HR
polynomials P^(j0,l0,n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .diffop import (
    DarbouxFactors,
    DiffOp1,
    Pencil,
    circle_adjoint,
    circle_adjoint1,
    darboux_ops,
    pencil_residual,
    transformed_from_factors,
)
from .exact import Q, LaurentPoly, QuasiRationalFunc, RationalFunc, gauge_split, pochhammer, wronskian
from .hr import (
    DegenerateParameterError,
    HRParams,
    as_params,
    eigen_family,
    eigenvalue,
    hr_norm,
    hr_pencil,
    hr_poly,
    hr_weight,
)

QRF = QuasiRationalFunc
Z = LaurentPoly.monomial(1)


class InvalidSeedError(ValueError):
    """The seed violates a nonvanishing-denominator condition."""


class IndexNotInSetError(ValueError):
    pass


class ConstructionMismatchError(AssertionError):
    """Two construction routes for the same object disagree."""


class VanishingWronskianError(ValueError):
    pass


# --------------------------------------------------------------------------
# seeds
# --------------------------------------------------------------------------

def _gauge_exponents(j0: int, p: HRParams) -> Tuple[Fraction, Fraction]:
    a, b = p.alpha, p.beta
    return {
        1: (Fraction(0), Fraction(0)),
        2: (Fraction(0), -a - b),
        3: (-1 - a, Fraction(0)),
        4: (b - 1, -a - b),
    }[j0]


def _seed_poly_params(j0: int, p: HRParams) -> HRParams:
    return p if j0 in (1, 3) else HRParams(-p.beta, -p.alpha)


@dataclass(frozen=True)
class SeedSpec:
    j0: int
    l0: int
    params: HRParams

    def __post_init__(self):
        object.__setattr__(self, "params", as_params(self.params))
        if self.j0 not in (1, 2, 3, 4):
            raise ValueError(f"seed type j0 must be 1..4, got {self.j0}")
        if not isinstance(self.l0, int) or self.l0 < 1:
            raise ValueError(f"seed degree l0 must be a positive integer, got {self.l0}")

    # validity -------------------------------------------------------------
    def violations(self) -> List[str]:
        """Names of the failed nonvanishing-denominator conditions (empty if valid)."""
        a, b = self.params.alpha, self.params.beta
        s = a + b
        out = []
        if self.j0 in (1, 3):
            if s.denominator == 1 and -self.l0 <= s <= -1:
                out.append(f"seed-denominator type {self.j0}: alpha+beta = {s} lies in -1..-{self.l0}")
        else:
            if s.denominator == 1 and 1 <= s <= self.l0:
                out.append(f"seed-denominator type {self.j0}: alpha+beta = {s} lies in 1..{self.l0}")
        if b == a + 1:
            out.append(f"seed-denominator type {self.j0}: beta = alpha+1")
        return out

    @property
    def valid(self) -> bool:
        return not self.violations()

    def require_valid(self) -> None:
        v = self.violations()
        if v:
            raise InvalidSeedError("; ".join(v))

    @property
    def positive_definite(self) -> bool:
        """Sign-definiteness of -h^(j0,l0)_n (types 3 and 4 only)."""
        a, b = self.params.alpha, self.params.beta
        return self.j0 in (3, 4) and b > 0 and a > -1 and a + b > -1

    # seed data ------------------------------------------------------------
    @property
    def kappa(self) -> Fraction:
        return eigenvalue(self.j0, self.l0, self.params)

    @property
    def gauge(self) -> QuasiRationalFunc:
        return QRF.gauge(*_gauge_exponents(self.j0, self.params))

    def split(self) -> Tuple[LaurentPoly, LaurentPoly]:
        """(P^(j0), Q^(j0)) with xi'/xi = P/Q."""
        return gauge_split(*_gauge_exponents(self.j0, self.params))

    def p_l0(self) -> LaurentPoly:
        """Laurent-polynomial part of the seed eigenfunction."""
        q = _seed_poly_params(self.j0, self.params)
        P = hr_poly(self.l0, q)
        return P if self.j0 in (1, 2) else P.subs_inverse()

    def phi(self) -> QuasiRationalFunc:
        return self.gauge * self.p_l0()

    def pencil(self) -> Pencil:
        return hr_pencil(self.params)

    def with_params(self, p) -> "SeedSpec":
        return SeedSpec(self.j0, self.l0, as_params(p))


def decoupling_factor(seed: SeedSpec) -> RationalFunc:
    """eps = 1/(Q^(j0) p_l0): the choice that makes F P_n a Laurent polynomial."""
    _, Qj = seed.split()
    return RationalFunc.coerce(1) / RationalFunc.coerce(Qj * seed.p_l0())


def seed_factors(seed: SeedSpec) -> DarbouxFactors:
    return darboux_ops(seed.pencil(), seed.phi(), seed.kappa, decoupling_factor(seed))


@lru_cache(maxsize=None)
def _transformed_pencil_cached(seed: SeedSpec) -> Pencil:
    return transformed_from_factors(seed_factors(seed))


def transformed_pencil_for(seed: SeedSpec) -> Pencil:
    return _transformed_pencil_cached(seed)


# --------------------------------------------------------------------------
# exceptional polynomials
# --------------------------------------------------------------------------

def hpsi(seed: SeedSpec, n: int) -> LaurentPoly:
    """Q (p P_n' - p' P_n) - P p P_n with (P, Q) from the seed gauge."""
    Pj, Qj = seed.split()
    p = seed.p_l0()
    Pn = hr_poly(n, seed.params)
    return Qj * (p * Pn.derivative() - p.derivative() * Pn) - Pj * p * Pn


def _n_times_shifted(n: int, p: HRParams) -> LaurentPoly:
    """n P_{n-1}(z; alpha+1, beta), which is P_n'."""
    return hr_poly(n - 1, p.shifted(1, 0)) * n if n > 0 else LaurentPoly()


def closed_form_poly(seed: SeedSpec, n: int) -> LaurentPoly:
    """P^(j0,l0,n) written through HR polynomials with shifted parameters."""
    p, l0, j0 = seed.params, seed.l0, seed.j0
    a, b = p.alpha, p.beta
    Pn = hr_poly(n, p)
    dPn = _n_times_shifted(n, p)
    one_minus_z = LaurentPoly({0: 1, 1: -1})
    if j0 == 1:
        return hr_poly(l0, p) * dPn - hr_poly(l0 - 1, p.shifted(1, 0)) * Pn * l0
    if j0 == 2:
        s = HRParams(-b, -a)
        inner = hr_poly(l0, s) * dPn - hr_poly(l0 - 1, HRParams(1 - b, -a)) * Pn * l0
        return one_minus_z * inner - hr_poly(l0, s) * Pn * (a + b)
    if j0 == 3:
        d = b + l0 - 1
        if d == 0 or pochhammer(a + 1, l0) == 0:
            raise DegenerateParameterError("beta + l0 - 1 = 0 or (alpha+1)_l0 = 0")
        pref = pochhammer(b, l0) / pochhammer(a + 1, l0)
        t = HRParams(b - 1, a + 1)
        body = (Z * hr_poly(l0, t) * dPn
                + hr_poly(l0 - 1, HRParams(b - 1, a + 2)) * Pn * ((a + 1) * l0 / d)
                + hr_poly(l0, t) * Pn * (1 + a))
        return body * pref
    # j0 == 4
    d = -a + l0 - 1
    if d == 0 or pochhammer(1 - b, l0) == 0:
        raise DegenerateParameterError("l0 - 1 - alpha = 0 or (1-beta)_l0 = 0")
    pref = pochhammer(-a, l0) / pochhammer(1 - b, l0)
    t = HRParams(-a - 1, 1 - b)
    z_minus_1 = LaurentPoly({0: -1, 1: 1})
    bracket = (Z * hr_poly(l0, t) * dPn
               + hr_poly(l0 - 1, HRParams(-a - 1, 2 - b)) * Pn * ((1 - b) * l0 / d))
    lin = LaurentPoly({0: 1 - b, 1: -(1 + a)})
    return (z_minus_1 * bracket - lin * hr_poly(l0, t) * Pn) * pref


@lru_cache(maxsize=None)
def _exceptional_poly(seed: SeedSpec, n: int) -> LaurentPoly:
    if seed.j0 == 4 and n == -seed.l0 - 1:
        return LaurentPoly.const(1)
    route_a = hpsi(seed, n)
    if seed.j0 in (3, 4):
        route_a = route_a.shift(seed.l0)
    if route_a.is_zero():
        raise IndexNotInSetError(f"transformed eigenfunction vanishes at n={n} for seed {seed}")
    if not route_a.is_polynomial():
        raise ConstructionMismatchError(f"P^({seed.j0},{seed.l0},{n}) has negative powers")
    route_b = closed_form_poly(seed, n)
    if route_a != route_b:
        raise ConstructionMismatchError(
            f"Wronskian route and closed form disagree for seed {seed}, n={n}"
        )
    return route_a


@dataclass(frozen=True)
class ExceptionalFamily:
    """Type-j0 exceptional HR polynomials with their partners, weight and norms."""

    seed: SeedSpec

    @classmethod
    def of(cls, j0: int, l0: int, params) -> "ExceptionalFamily":
        return cls(SeedSpec(j0, l0, as_params(params)))

    @property
    def params(self) -> HRParams:
        return self.seed.params

    # index set --------------------------------------------------------------
    def contains(self, n: int) -> bool:
        j0, l0 = self.seed.j0, self.seed.l0
        if j0 == 1:
            return n >= 0 and n != l0
        if j0 == 4:
            return n >= 0 or n == -l0 - 1
        return n >= 0

    def check_index(self, n: int) -> None:
        if not isinstance(n, int) or not self.contains(n):
            raise IndexNotInSetError(
                f"index {n} is not in the index set of type {self.seed.j0}, l0={self.seed.l0}"
            )

    def indices(self, count: int) -> List[int]:
        """The first ``count`` indices in increasing order."""
        out = []
        n = -self.seed.l0 - 1 if self.seed.j0 == 4 else 0
        while len(out) < count:
            if self.contains(n):
                out.append(n)
            n += 1
        return out

    def indices_in(self, lo: int, hi: int) -> List[int]:
        return [n for n in range(lo, hi + 1) if self.contains(n)]

    def degree(self, n: int) -> int:
        self.check_index(n)
        l0 = self.seed.l0
        return {1: n + l0 - 1, 2: n + l0, 3: n + l0, 4: n + l0 + 1}[self.seed.j0]

    # polynomials --------------------------------------------------------------
    def P(self, n: int) -> LaurentPoly:
        self.check_index(n)
        return _exceptional_poly(self.seed, n)

    def partner_family(self) -> "ExceptionalFamily":
        return ExceptionalFamily(self.seed.with_params(self.params.partner()))

    def Q(self, n: int) -> LaurentPoly:
        self.check_index(n)
        if self.seed.j0 == 4 and n == -self.seed.l0 - 1:
            return LaurentPoly.const(1)
        return self.partner_family().P(n)

    def transformed_eigenfunction(self, n: int) -> LaurentPoly:
        """psi^(j0,l0,n) = z^(-l0) P for types 3 and 4, P otherwise."""
        P = self.P(n)
        return P.shift(-self.seed.l0) if self.seed.j0 in (3, 4) else P

    def eigenvalue(self, n: int) -> Fraction:
        """Eigenvalue of psi^(j0,l0,n) in the transformed pencil."""
        self.check_index(n)
        if self.seed.j0 == 4 and n == -self.seed.l0 - 1:
            return self.seed.kappa
        return Fraction(n)

    # weight and norms ---------------------------------------------------------
    def weight(self) -> QuasiRationalFunc:
        self.seed.require_valid()
        p, l0, j0 = self.params, self.seed.l0, self.seed.j0
        a, b = p.alpha, p.beta
        w = hr_weight(p)
        zl = LaurentPoly.monomial(l0)
        zm1 = LaurentPoly({0: -1, 1: 1})
        table = {
            1: (pochhammer(b, l0), pochhammer(1 + a, l0), zl * zm1, hr_poly(l0, p)),
            2: (pochhammer(-a, l0), pochhammer(1 - b, l0), None, hr_poly(l0, HRParams(-b, -a))),
            3: (pochhammer(1 + a, l0), pochhammer(b, l0), zl * zm1, hr_poly(l0, HRParams(b - 1, a + 1))),
            4: (pochhammer(1 - b, l0), pochhammer(-a, l0), None, hr_poly(l0, HRParams(-a - 1, 1 - b))),
        }
        num_c, den_c, front, D = table[j0]
        if den_c == 0 or num_c == 0:
            raise DegenerateParameterError(f"weight prefactor {num_c}/{den_c} is degenerate")
        c = num_c / den_c
        if front is None:
            # z^(1+l0) / (1 - z)
            front_rf = RationalFunc(LaurentPoly.monomial(1 + l0), LaurentPoly({0: 1, 1: -1}))
        else:
            front_rf = RationalFunc.coerce(front)
        return w * (front_rf / RationalFunc.coerce(D * D)) * c

    def norm_factor(self, n: int) -> Fraction:
        """h^(j0,l0)_n / (-(n+beta) h_n), read off the per-type table."""
        self.check_index(n)
        if self.seed.j0 == 4 and n == -self.seed.l0 - 1:
            raise ValueError("the state-addition norm has no closed form; use quadrature")
        a, b, l0 = self.params.alpha, self.params.beta, self.seed.l0
        return {
            1: Fraction(n - l0),
            2: n - l0 + a + b,
            3: n + l0 + 1 + a + b,
            4: Fraction(n + l0 + 1),
        }[self.seed.j0]

    def transport_ratio_holds(self, n: int) -> bool:
        """norm_factor(n) equals theta_n - kappa as exact rationals."""
        return self.norm_factor(n) == eigenvalue(1, n, self.params) - self.seed.kappa

    def norm(self, n: int) -> float:
        return float(-(n + self.params.beta) * self.norm_factor(n)) * hr_norm(n, self.params)


def exceptional_poly(fam: ExceptionalFamily, n: int) -> LaurentPoly:
    return fam.P(n)


def exceptional_partner(fam: ExceptionalFamily, n: int) -> LaurentPoly:
    return fam.Q(n)


def exceptional_weight(fam: ExceptionalFamily) -> QuasiRationalFunc:
    return fam.weight()


def exceptional_norm(fam: ExceptionalFamily, n: int) -> float:
    return fam.norm(n)


def transformed_gevp_residual(fam: ExceptionalFamily, n: int) -> QuasiRationalFunc:
    """(L^_1 - lam L^_2) psi^(j0,l0,n), exactly."""
    P = transformed_pencil_for(fam.seed)
    return pencil_residual(P, fam.eigenvalue(n), fam.transformed_eigenfunction(n))


# --------------------------------------------------------------------------
# adjoint route: L^_2* psi^* = r Q, giving the weight independently
# --------------------------------------------------------------------------

def backward_adjoint(fac: DarbouxFactors, lam) -> DiffOp1:
    """M_lam = conj-adjoint(kappa G1 - lam G2) composed with phi~(1/z)."""
    return circle_adjoint1(fac.backward(lam)).then_multiply(fac.phi_tilde.subs_inverse())


def adjoint_image(fam: ExceptionalFamily, n: int) -> QuasiRationalFunc:
    """L^_2* applied to the transformed adjoint eigenfunction of phi^(1,n)*."""
    fac = seed_factors(fam.seed)
    phi_star = eigen_family(1, "adjoint", fam.params).function(n)
    return backward_adjoint(fac, fac.kappa)(phi_star)


def weight_from_adjoint(fam: ExceptionalFamily, n: int) -> QuasiRationalFunc:
    """r(1/z) (times z^(-l0) for types 3, 4) where L^_2* psi^* = r Q^(j0,l0,n)."""
    r = adjoint_image(fam, n) / fam.Q(n)
    w = r.subs_inverse()
    if fam.seed.j0 in (3, 4):
        w = w * LaurentPoly.monomial(-fam.seed.l0)
    return w


# --------------------------------------------------------------------------
# state deletion / addition
# --------------------------------------------------------------------------

def _normalize_ray(f: QuasiRationalFunc) -> QuasiRationalFunc:
    """Scale so the highest power in the rational numerator has coefficient 1."""
    num = f.r.num
    return f * (1 / num.leading_coeff)


def state_function(seed: SeedSpec) -> QuasiRationalFunc:
    """Kernel of the backward operator kappa (G1 - G2), from its first-order ODE.

    For p d + q with q/p = -(c0/z + c1/(1-z)) the kernel is (-z)^c0 (1-z)^(-c1);
    the decomposition is checked, and the result is normalized as a ray.
    """
    fac = seed_factors(seed)
    p, q = fac.backward(seed.kappa).coeffs()
    if p.is_zero():
        raise ValueError("backward operator has no derivative term")
    r = -q / p                       # f'/f
    zz = RationalFunc(LaurentPoly({1: 1, 2: -1}))      # z(1-z)
    lin = r * zz
    if not lin.is_laurent():
        raise ValueError("kernel log-derivative is not of the form c0/z + c1/(1-z)")
    N = lin.as_laurent()
    c0, c1 = N(Fraction(0)), N(Fraction(1))
    cand = QRF.gauge(c0, -c1)
    if cand.log_derivative() != r:
        raise ValueError("kernel log-derivative has extra terms")
    return _normalize_ray(cand)


def state_function_table(seed: SeedSpec) -> QuasiRationalFunc:
    """The four-case formula with unimodular constants dropped."""
    a, b, l0 = seed.params.alpha, seed.params.beta, seed.l0
    G = QRF.gauge
    f = {
        1: QRF(b - 1 + l0, -1 - a - b, 1),
        2: QRF(-1 - a + l0, 0, 1),
        3: G(0, -1 - a - b) * LaurentPoly.monomial(-l0),
        4: QRF.coerce(LaurentPoly.monomial(-l0)),
    }[seed.j0]
    # z^c = (-1)^c (-z)^c: the table's z-powers are the (-z)-powers up to a
    # unimodular constant, which a ray ignores.
    return _normalize_ray(f)


def state_is_annihilated(seed: SeedSpec, f: QuasiRationalFunc) -> bool:
    fac = seed_factors(seed)
    return fac.backward(seed.kappa)(f).is_zero()


# --------------------------------------------------------------------------
# l0 = 1 coincidences
# --------------------------------------------------------------------------

def l0_one_coincidences(params, n_max: int = 6) -> Dict[str, List[bool]]:
    """Check the two l0 = 1 identities between types (4,1) and (2,3) for n = 0..n_max."""
    p = as_params(params)
    a, b = p.alpha, p.beta
    if b == 1:
        raise DegenerateParameterError("beta = 1 makes the prefactor 1/(beta-1) undefined")
    if a == 0:
        raise DegenerateParameterError("alpha = 0 makes both prefactors vanish")
    shifted = p.shifted(-1, -1)
    t4, t1 = ExceptionalFamily.of(4, 1, p), ExceptionalFamily.of(1, 1, shifted)
    t2, t3 = ExceptionalFamily.of(2, 1, p), ExceptionalFamily.of(3, 1, shifted)
    out = {"type4_vs_type1": [], "type2_vs_type3": []}
    for n in range(n_max + 1):
        if a + n == 0:
            raise DegenerateParameterError(f"alpha = -{n} makes 1/(alpha+n) undefined")
        c41 = a * (a + n + 1) / ((n + 1) * (b - 1))
        out["type4_vs_type1"].append(t4.P(n) == t1.P(n + 2) * c41)
        c23 = -a * (a + b + n - 1) / ((a + n) * (b - 1))
        out["type2_vs_type3"].append(t2.P(n) == t3.P(n) * c23)
    return out


# --------------------------------------------------------------------------
# multi-step transformations
# --------------------------------------------------------------------------

@dataclass
class Stage:
    pencil: Pencil
    seed: QuasiRationalFunc
    kappa: Fraction
    eps: RationalFunc
    factors: DarbouxFactors
    eps_rule: str
    in_scope: bool


def stage_decoupling_factor(seed: QuasiRationalFunc) -> Tuple[RationalFunc, str, bool]:
    """eps = 1/(Q p) when the seed is (pure gauge) x (Laurent polynomial), else 1."""
    if seed.r.is_laurent():
        _, Qg = gauge_split(seed.a, seed.b)
        return RationalFunc.coerce(1) / RationalFunc.coerce(Qg * seed.r.as_laurent()), "gauge-split", True
    return RationalFunc.coerce(1), "unit (seed rational part is not a Laurent polynomial)", False


class MultistepTransform:
    """N-step chain (1 <= N <= 3) seeded by phi^(k0,l0), F phi^(k1,l1), ..."""

    MAX_STEPS = 3

    def __init__(self, params, seeds: Sequence[Tuple[int, int]]):
        self.params = as_params(params)
        self.seed_specs = [SeedSpec(k, l, self.params) for k, l in seeds]
        if not 1 <= len(self.seed_specs) <= self.MAX_STEPS:
            raise ValueError(f"number of steps must be 1..{self.MAX_STEPS}")
        for s in self.seed_specs:
            s.require_valid()
        base = [s.phi() for s in self.seed_specs]
        if wronskian(base).is_zero():
            raise VanishingWronskianError("seed Wronskian vanishes identically (dependent seeds)")
        self.stages: List[Stage] = []
        pencil = hr_pencil(self.params)
        for j, spec in enumerate(self.seed_specs):
            seed = self.forward(base[j], upto=j)
            if seed.is_zero():
                raise VanishingWronskianError(f"stage-{j} seed is annihilated by earlier steps")
            if j == 0:
                eps, rule, ok = decoupling_factor(spec), "gauge-split", True
            else:
                eps, rule, ok = stage_decoupling_factor(seed)
            fac = darboux_ops(pencil, seed, spec.kappa, eps)
            self.stages.append(Stage(pencil, seed, spec.kappa, eps, fac, rule, ok))
            pencil = transformed_from_factors(fac)
        self.final_pencil = pencil

    @property
    def kappas(self) -> List[Fraction]:
        return [s.kappa for s in self.stages]

    @property
    def in_scope(self) -> bool:
        return all(s.in_scope for s in self.stages)

    def _check_lambda(self, lam) -> Fraction:
        lam = Q(lam)
        if lam in self.kappas:
            raise ValueError(f"eigenvalue {lam} coincides with a seed eigenvalue {self.kappas}")
        return lam

    def forward(self, psi, upto: Optional[int] = None) -> QuasiRationalFunc:
        """F^(upto-1) o ... o F^(0) psi (all stages if ``upto`` is None)."""
        f = QRF.coerce(psi)
        k = len(self.stages) if upto is None else upto
        for st in self.stages[:k]:
            f = st.factors.F(f)
        return f

    def sequential(self, psi, lam) -> QuasiRationalFunc:
        self._check_lambda(lam)
        return self.forward(psi)

    def wronskian_route(self, psi, lam) -> QuasiRationalFunc:
        """(prod eps)^(-1) Wr[phi_0..phi_{N-1}, psi] / Wr[phi_0..phi_{N-1}]."""
        self._check_lambda(lam)
        base = [s.phi() for s in self.seed_specs]
        num = wronskian(base + [QRF.coerce(psi)])
        den = wronskian(base)
        eps = RationalFunc.coerce(1)
        for st in self.stages:
            eps = eps * st.eps
        return num / den / eps

    def M(self, j: int, lam) -> DiffOp1:
        return backward_adjoint(self.stages[j].factors, lam)

    def adjoint_forward(self, psi_star, lam) -> QuasiRationalFunc:
        """M^(N-1)_lam o ... o M^(0)_lam psi*."""
        lam = self._check_lambda(lam)
        f = QRF.coerce(psi_star)
        for j in range(len(self.stages)):
            f = self.M(j, lam)(f)
        return f

    def l2_adjoint_image(self, psi_star, lam) -> QuasiRationalFunc:
        """L2^(N)* psi^(N)* = M^(N-1)_kappa o M^(N-2)_lam o ... o M^(0)_lam psi*."""
        lam = self._check_lambda(lam)
        f = QRF.coerce(psi_star)
        N = len(self.stages)
        for j in range(N - 1):
            f = self.M(j, lam)(f)
        return self.M(N - 1, self.stages[-1].kappa)(f)

    def l2_adjoint_direct(self, psi_star, lam) -> QuasiRationalFunc:
        """Same quantity by applying the adjoint of the final L2 to psi^(N)*."""
        L2s = circle_adjoint(self.final_pencil.L2)
        return L2s(self.adjoint_forward(psi_star, lam))

    def norm_product(self, n: int) -> Fraction:
        """prod_j (n - kappa_j); multiplies -(n+beta) h_n on the Gram diagonal."""
        out = Fraction(1)
        for k in self.kappas:
            out *= n - k
        return out

    def report(self) -> Dict[str, object]:
        return {
            "steps": len(self.stages),
            "kappas": [str(k) for k in self.kappas],
            "eps_rules": [s.eps_rule for s in self.stages],
            "in_scope": self.in_scope,
        }


def multistep_transform(params, seeds, psi, lam) -> QuasiRationalFunc:
    """Wronskian-route N-step transform, cross-checked against the sequential route."""
    T = MultistepTransform(params, seeds)
    w = T.wronskian_route(psi, lam)
    s = T.sequential(psi, lam)
    if w != s:
        raise ConstructionMismatchError("Wronskian and sequential routes disagree")
    return w
