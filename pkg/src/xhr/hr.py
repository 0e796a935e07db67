"""Hendriksen-van Rossum polynomials and their operator pencil.

Everything polynomial here is exact.  Norms and moments involve Gamma
functions and are returned as floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Tuple

from .diffop import DiffOp2, Pencil, circle_adjoint
from .exact import (
    Q,
    LaurentPoly,
    QuasiRationalFunc,
    RationalFunc,
    pochhammer,
)


class DegenerateParameterError(ValueError):
    """A Pochhammer factor or denominator required by a formula vanishes."""


@dataclass(frozen=True)
class HRParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Q(self.alpha))
        object.__setattr__(self, "beta", Q(self.beta))

    @property
    def positive_definite(self) -> bool:
        a, b = self.alpha, self.beta
        return a > -1 and b > -1 and a + b > -1

    @property
    def l2_strong(self) -> bool:
        a, b = self.alpha, self.beta
        return a > -1 and b > -1 and Fraction(-1, 2) < a + b < Fraction(1, 2)

    def swap(self) -> "HRParams":
        return HRParams(self.beta, self.alpha)

    def partner(self) -> "HRParams":
        """(alpha, beta) -> (beta - 1, alpha + 1)."""
        return HRParams(self.beta - 1, self.alpha + 1)

    def shifted(self, da=0, db=0) -> "HRParams":
        return HRParams(self.alpha + da, self.beta + db)

    def __str__(self):
        return f"(alpha={self.alpha}, beta={self.beta})"


def as_params(p) -> HRParams:
    if isinstance(p, HRParams):
        return p
    a, b = p
    return HRParams(a, b)


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _hr_poly(n: int, alpha: Fraction, beta: Fraction) -> LaurentPoly:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    pref_den = pochhammer(alpha + 1, n)
    if pref_den == 0:
        raise DegenerateParameterError(f"(alpha+1)_{n} = 0 for alpha={alpha}")
    pref = pochhammer(beta, n) / pref_den
    coeffs: Dict[int, Fraction] = {}
    term = Fraction(1)       # (-n)_k (alpha+1)_k / (k! (1-beta-n)_k)
    for k in range(n + 1):
        coeffs[k] = pref * term
        if k == n:
            break
        d = (1 - beta - n + k) * (k + 1)
        if d == 0:
            raise DegenerateParameterError(
                f"(1-beta-n)_{k + 1} = 0 for n={n}, beta={beta}"
            )
        term = term * (-n + k) * (alpha + 1 + k) / d
    return LaurentPoly(coeffs)


def hr_poly(n: int, p) -> LaurentPoly:
    """P_n(z; alpha, beta), monic of degree n, from the terminating 2F1 series."""
    p = as_params(p)
    return _hr_poly(n, p.alpha, p.beta)


def hr_partner(n: int, p) -> LaurentPoly:
    """Q_n(z; alpha, beta) = P_n(z; beta, alpha)."""
    return hr_poly(n, as_params(p).swap())


def recurrence_coeffs(n: int, p) -> Tuple[Fraction, Fraction]:
    """(d_n, b_n) of P_{n+1} + d_n P_n = z (P_n + b_n P_{n-1})."""
    p = as_params(p)
    a, b = p.alpha, p.beta
    if n + a + 1 == 0 or (n > 0 and n + a == 0):
        raise DegenerateParameterError(f"recurrence denominator vanishes at n={n}")
    d = -(n + b) / (n + a + 1)
    bn = Fraction(0) if n == 0 else -n * (n + a + b) / ((n + a) * (n + a + 1))
    return d, bn


def hr_poly_by_recurrence(n: int, p) -> LaurentPoly:
    """Independent construction through the three-term recurrence."""
    z = LaurentPoly.monomial(1)
    prev, cur = LaurentPoly(), LaurentPoly.const(1)
    for k in range(n):
        d, b = recurrence_coeffs(k, p)
        prev, cur = cur, z * (cur + prev * b) - cur * d
    return cur


# --------------------------------------------------------------------------
# pencil, eigenfunctions
# --------------------------------------------------------------------------

def hr_pencil(p) -> Pencil:
    """L1 = z(1-z) d^2 + (1-beta-(2+alpha)z) d,  L2 = (1-z) d - (alpha+1)."""
    p = as_params(p)
    a, b = p.alpha, p.beta
    A1 = LaurentPoly({1: 1, 2: -1})
    B1 = LaurentPoly({0: 1 - b, 1: -(2 + a)})
    B2 = LaurentPoly({0: 1, 1: -1})
    return Pencil(DiffOp2(A1, B1, 0), DiffOp2(0, B2, -(a + 1)))


def hr_adjoint_pencil(p) -> Pencil:
    return hr_pencil(p).adjoint()


@dataclass(frozen=True)
class EigenFamily:
    """phi^(j,n) = gauge * laurent_part(n) with eigenvalue(n)."""

    j: int
    side: str
    params: HRParams
    gauge: QuasiRationalFunc
    laurent_part: Callable[[int], LaurentPoly]
    eigenvalue: Callable[[int], Fraction]

    def function(self, n: int) -> QuasiRationalFunc:
        return self.gauge * self.laurent_part(n)

    def pencil(self) -> Pencil:
        return hr_pencil(self.params) if self.side == "primal" else hr_adjoint_pencil(self.params)


def _theta(j: int, p: HRParams) -> Callable[[int], Fraction]:
    a, b = p.alpha, p.beta
    return {
        1: lambda n: Fraction(n),
        2: lambda n: n - a - b,
        3: lambda n: -n - 1 - a - b,
        4: lambda n: Fraction(-n - 1),
    }[j]


def eigenvalue(j: int, n: int, p) -> Fraction:
    return _theta(j, as_params(p))(n)


def eigen_family(j: int, side: str, p) -> EigenFamily:
    p = as_params(p)
    a, b = p.alpha, p.beta
    G = QuasiRationalFunc.gauge
    if side == "primal":
        table = {
            1: (G(0, 0), p),
            2: (G(0, -a - b), HRParams(-b, -a)),
            3: (G(-1 - a, 0), p),
            4: (G(b - 1, -a - b), HRParams(-b, -a)),
        }
    elif side == "adjoint":
        table = {
            1: (G(-1 - a, a + b), HRParams(b - 1, a + 1)),
            2: (G(-1 - a, 0), HRParams(-a - 1, 1 - b)),
            3: (G(-1 - a - b, a + b), HRParams(b - 1, a + 1)),
            4: (G(0, 0) * LaurentPoly.monomial(-1), HRParams(-a - 1, 1 - b)),  # w_4 = 1/z
        }
    else:
        raise ValueError(f"side must be 'primal' or 'adjoint', got {side!r}")
    if j not in table:
        raise ValueError(f"family index must be 1..4, got {j}")
    gauge, q = table[j]
    if j in (1, 2):
        part = lambda n, q=q: hr_poly(n, q)
    else:
        part = lambda n, q=q: hr_poly(n, q).subs_inverse()
    return EigenFamily(j, side, p, gauge, part, _theta(j, p))


# --------------------------------------------------------------------------
# weight, norms, moments
# --------------------------------------------------------------------------

def hr_weight(p) -> QuasiRationalFunc:
    """w(z) = (-z)^(-beta) (1-z)^(alpha+beta)."""
    p = as_params(p)
    return QuasiRationalFunc.gauge(-p.beta, p.alpha + p.beta)


def _gamma(x: float) -> float:
    if x <= 0 and float(x).is_integer():
        raise ValueError(f"Gamma pole at {x}")
    return math.gamma(x)


def hr_norm(n: int, p) -> float:
    """h_n = Gamma(n+1) Gamma(n+alpha+beta+1) / (Gamma(n+alpha+1) Gamma(n+beta+1))."""
    p = as_params(p)
    a, b = float(p.alpha), float(p.beta)
    return _gamma(n + 1) * _gamma(n + a + b + 1) / (_gamma(n + a + 1) * _gamma(n + b + 1))


def h_tilde(n: int, p) -> Fraction:
    """prod_{k<n} (1 - P_{k+1}(0) Q_{k+1}(0)), from the polynomials themselves."""
    out = Fraction(1)
    for k in range(n):
        out *= 1 - hr_poly(k + 1, p).coeff(0) * hr_partner(k + 1, p).coeff(0)
    return out


def h_tilde_closed(n: int, p) -> Fraction:
    """(1)_n (alpha+beta+1)_n / ((alpha+1)_n (beta+1)_n)."""
    p = as_params(p)
    a, b = p.alpha, p.beta
    return pochhammer(1, n) * pochhammer(a + b + 1, n) / (pochhammer(a + 1, n) * pochhammer(b + 1, n))


def moment_closed_form(n: int, p) -> float:
    """c_n = (1/2pi) int z^n w dx for n >= 0.

    sin(beta pi) Gamma(n-beta) / (sin((alpha+beta) pi) Gamma(-(alpha+beta)) Gamma(1+n+alpha))
    """
    if n < 0:
        raise ValueError("closed form is stated for n >= 0")
    p = as_params(p)
    a, b = float(p.alpha), float(p.beta)
    s = a + b
    if (p.alpha + p.beta).denominator == 1:
        raise ValueError("integer alpha+beta: closed form has a pole")
    num = math.sin(b * math.pi)
    if num == 0.0 or (p.beta.denominator == 1):
        # sin(beta pi) Gamma(n - beta) -> finite limit; use the equivalent
        # reflected form (-1)^n Gamma(alpha+beta+1) / (Gamma(1+alpha+n) Gamma(1+beta-n))
        return _moment_reflected(n, p)
    return num * _gamma(n - b) / (math.sin(s * math.pi) * _gamma(-s) * _gamma(1 + n + a))


def _moment_reflected(n: int, p: HRParams) -> float:
    a, b = float(p.alpha), float(p.beta)
    x = 1 + b - n
    if x <= 0 and x.is_integer():
        return 0.0
    return (-1) ** (n % 2) * _gamma(a + b + 1) / (_gamma(1 + a + n) * _gamma(x))


def hr_moment(n: int, p, rule=None) -> complex:
    """Moment c_n of the HR weight.

    n >= 0 uses the closed form; n < 0 uses c_{-n}(alpha, beta) = c_n(beta, alpha)
    (the weight maps to the swapped one under z -> 1/z).  Integer alpha+beta
    falls back to quadrature.
    """
    p = as_params(p)
    if p.alpha + p.beta <= -1:
        raise ValueError("moments diverge unless alpha+beta > -1")
    if (p.alpha + p.beta).denominator == 1:
        from .quad import bilinear_form, de_rule
        rule = rule or de_rule(9)
        f = hr_weight(p) * LaurentPoly.monomial(n)
        return complex(bilinear_form(f, 1, rule))
    if n >= 0:
        return complex(moment_closed_form(n, p))
    return complex(moment_closed_form(-n, p.swap()))


# --------------------------------------------------------------------------
# classical identities (exact checks)
# --------------------------------------------------------------------------

def cd_identity_check(n: int, x, y, p) -> bool:
    """Christoffel-Darboux analog at rational points x, y (both nonzero)."""
    p = as_params(p)
    x, y = Q(x), Q(y)
    if x == 0 or y == 0:
        raise ValueError("CD identity needs x, y nonzero")
    ht = [h_tilde(k, p) for k in range(n + 1)]
    if any(h == 0 for h in ht):
        raise DegenerateParameterError("h~_k vanishes")
    P = lambda k, t: hr_poly(k, p)(t)
    Qp = lambda k, t: hr_partner(k, p)(t)
    lhs = (P(n + 1, x) * Qp(n, 1 / y) - (x / y) ** n * P(n + 1, y) * Qp(n, 1 / x)) / ht[n]
    rhs = (x - y) * sum(P(k, x) * Qp(k, 1 / y) / ht[k] for k in range(n + 1))
    return lhs == rhs


def lemma31_check(n: int, p) -> Dict[str, bool]:
    """The four parameter-shift/derivative identities for P_n."""
    p = as_params(p)
    a, b = p.alpha, p.beta
    z = RationalFunc.coerce(LaurentPoly.monomial(1))
    out = {}
    # z^n P_n(1/z; a, b) = (b)_n/(a+1)_n P_n(z; b-1, a+1)
    lhs = hr_poly(n, p).subs_inverse().shift(n)
    rhs = hr_poly(n, p.partner()) * (pochhammer(b, n) / pochhammer(a + 1, n))
    out["reflection"] = lhs == rhs
    # P_n' = n P_{n-1}(z; a+1, b)
    d = hr_poly(n, p).derivative()
    out["derivative"] = d == (hr_poly(n - 1, p.shifted(1, 0)) * n if n > 0 else LaurentPoly())
    # P_n'(b-1,a+1)/P_n(b-1,a+1) = n/z [1 - (1+a)/(n-1+b) P_{n-1}(b-1,a+2)/P_n(b-1,a+1)]
    if n > 0:
        if n - 1 + b == 0:
            raise DegenerateParameterError("n-1+beta = 0")
        Pn = RationalFunc.coerce(hr_poly(n, HRParams(b - 1, a + 1)))
        Pm = RationalFunc.coerce(hr_poly(n - 1, HRParams(b - 1, a + 2)))
        lhs = Pn.derivative() / Pn
        rhs = (1 - Pm / Pn * ((1 + a) / (n - 1 + b))) * n / z
        out["log_derivative_partner"] = lhs == rhs
        # P_n'(-a-1,1-b)/P_n(-a-1,1-b) = n/z [1 - P_{n-1}(1/z; 1-b, -a) / (z P_n(1/z; -b, -a))]
        Pn = RationalFunc.coerce(hr_poly(n, HRParams(-a - 1, 1 - b)))
        num = RationalFunc.coerce(hr_poly(n - 1, HRParams(1 - b, -a)).subs_inverse())
        den = RationalFunc.coerce(hr_poly(n, HRParams(-b, -a)).subs_inverse()) * z
        lhs = Pn.derivative() / Pn
        rhs = (1 - num / den) * n / z
        out["log_derivative_adjoint"] = lhs == rhs
    else:
        out["log_derivative_partner"] = True
        out["log_derivative_adjoint"] = True
    return out


def pearson_check(p) -> bool:
    """w'/w = (B1 - A1')/A1 = -(alpha z + beta)/(z(1-z))."""
    p = as_params(p)
    L1 = hr_pencil(p).L1
    lhs = hr_weight(p).log_derivative()
    mid = (L1.B - L1.A.derivative()) / L1.A
    rhs = RationalFunc(LaurentPoly({0: -p.beta, 1: -p.alpha}), LaurentPoly({1: 1, 2: -1}))
    return lhs == mid == rhs


def square_integral_closed(n: int, p) -> Fraction:
    """(1/2pi) int |P_n(e^{ix})|^2 dx via the 2F1 coefficient sum."""
    p = as_params(p)
    a, b = p.alpha, p.beta
    pref = pochhammer(b, n) / pochhammer(a + 1, n)
    total = Fraction(0)
    for k in range(n + 1):
        t = pochhammer(-n, k) * pochhammer(a + 1, k) / (math.factorial(k) * pochhammer(1 - b - n, k))
        total += t * t
    return pref * pref * total
