"""Unit-circle evaluation and quadrature for quasi-rational functions.

Points are z = e^{ix} with x in (0, 2pi); the only place a gauge can be
singular is z = 1, which sits at both ends of the interval.  Branches:

    (-z)^a  = exp(i a (x - pi))
    (1-z)^b = (2 sin(x/2))^b exp(i b (x - pi)/2)

Integrals use a tanh-sinh (double exponential) rule on (0, 2pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Sequence

import numpy as np

from .exact import LaurentPoly, QuasiRationalFunc, RationalFunc

QRF = QuasiRationalFunc

_T_MAX = 6.0   # x = 2pi/(1+e^{-2u}) stays above ~1e-275 at |t| = 6


class NonIntegrableError(ValueError):
    """Integrand exponent at z = 1 is <= -1, or a pole lies on the circle."""


@dataclass(frozen=True)
class CirclePoint:
    x: float

    def __post_init__(self):
        if not (0.0 < self.x < 2 * math.pi):
            raise ValueError("circle points need x strictly inside (0, 2pi)")

    @property
    def z(self) -> complex:
        return complex(math.cos(self.x), math.sin(self.x))


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes x in (0, 2pi) with positive weights.

    ``y = 2pi - x`` is stored alongside so quantities near x = 2pi are
    computed without cancellation.
    """

    x: np.ndarray
    y: np.ndarray
    weights: np.ndarray
    scheme: str
    level: int

    @property
    def size(self) -> int:
        return len(self.x)

    @property
    def nodes(self):
        return list(zip(self.x.tolist(), self.weights.tolist()))


def de_rule(level: int) -> QuadratureRule:
    """tanh-sinh rule on (0, 2pi) with step 2^(3-level) in t, |t| <= 6."""
    if not 4 <= level <= 12:
        raise ValueError("quadrature level must be in [4, 12]")
    h = 2.0 ** (3 - level)
    k = int(round(_T_MAX / h))
    t = h * np.arange(-k, k + 1)
    u = 0.5 * math.pi * np.sinh(t)
    e_pos = np.exp(-2.0 * np.abs(u))
    # x = 2pi / (1 + e^{-2u}), y = 2pi / (1 + e^{2u})
    small = 2 * math.pi * e_pos / (1 + e_pos)
    large = 2 * math.pi / (1 + e_pos)
    x = np.where(u >= 0, large, small)
    y = np.where(u >= 0, small, large)
    # dx/dt = pi (pi/2) cosh t / cosh^2 u, written with e^{-2|u|}
    sech2 = 4 * e_pos / (1 + e_pos) ** 2
    w = h * math.pi * 0.5 * math.pi * np.cosh(t) * sech2
    keep = (x > 0) & (y > 0) & (w > 0)
    return QuadratureRule(x[keep], y[keep], w[keep], "double-exponential", level)


def uniform_rule(n: int) -> QuadratureRule:
    """Midpoint trapezoid rule; spectrally accurate for smooth periodic integrands."""
    x = (np.arange(n) + 0.5) * (2 * math.pi / n)
    return QuadratureRule(x, 2 * math.pi - x, np.full(n, 2 * math.pi / n), "uniform-trapezoid", n)


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

def _one_exponent(f: QuasiRationalFunc):
    """Total exponent of (1-z) at z = 1 and the rational part with it removed."""
    r = f.r
    mn = r.num.root_multiplicity(1)
    md = r.den.root_multiplicity(1)
    num = r.num.deflate(1, mn) if mn else r.num
    den = r.den.deflate(1, md) if md else r.den
    # (z-1)^k = (-1)^k (1-z)^k
    sign = -1 if (mn - md) % 2 else 1
    return f.b + (mn - md), num * sign, den


def exponent_at_one(f: QuasiRationalFunc) -> Fraction:
    if f.is_zero():
        return Fraction(10 ** 6)
    return _one_exponent(f)[0]


def _z_of(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.where(x < math.pi, np.exp(1j * x), np.exp(-1j * y))


def _check_circle_poles(den: LaurentPoly, tol: float = 1e-9) -> None:
    lo, c = den.dense()
    if len(c) <= 1:
        return
    roots = np.roots([float(v) for v in reversed(c)])
    bad = [r for r in roots if abs(abs(r) - 1.0) < tol]
    if bad:
        raise NonIntegrableError(f"rational factor {den!r} has a zero on |z| = 1 near {bad[0]:.6g}")


def eval_on_circle(f, x, y=None) -> np.ndarray:
    """f(e^{ix}) with the package branch convention.  ``y`` = 2pi - x if known."""
    f = QRF.coerce(f)
    x = np.asarray(x, dtype=float)
    y = 2 * math.pi - x if y is None else np.asarray(y, dtype=float)
    if f.is_zero():
        return np.zeros(x.shape, dtype=complex)
    b, num, den = _one_exponent(f)
    z = _z_of(x, y)
    dist = np.where(x < math.pi, x, y)       # distance to the singular point
    phase_shift = np.where(x < math.pi, x - math.pi, math.pi - y)   # x - pi
    val = num(z) / den(z)
    if f.a:
        val = val * np.exp(1j * float(f.a) * phase_shift)
    if b:
        val = val * (2 * np.sin(dist / 2)) ** float(b) * np.exp(0.5j * float(b) * phase_shift)
    return val


def integrability_check(f: QuasiRationalFunc) -> None:
    """Reject integrands that are not integrable on the circle."""
    e = exponent_at_one(f)
    if e <= -1:
        raise NonIntegrableError(f"exponent of (1-z) at z = 1 is {e} <= -1")
    _, _, den = _one_exponent(f)
    _check_circle_poles(den)


def integrate(f, rule: QuadratureRule) -> complex:
    """(1/2pi) int_0^{2pi} f(e^{ix}) dx."""
    f = QRF.coerce(f)
    integrability_check(f)
    vals = eval_on_circle(f, rule.x, rule.y)
    return complex(np.dot(rule.weights, vals) / (2 * math.pi))


def bilinear_form(f, g, rule: QuadratureRule) -> complex:
    """<f, g> = (1/2pi) int f(e^{ix}) g(e^{-ix}) dx, formed exactly then integrated."""
    f, g = QRF.coerce(f), QRF.coerce(g)
    return integrate(f * g.subs_inverse(), rule)


def gram_matrix(
    family_P: Callable[[int], LaurentPoly],
    family_Q: Callable[[int], LaurentPoly],
    weight: QuasiRationalFunc,
    indices: Sequence[int],
    rule: QuadratureRule,
) -> np.ndarray:
    """G[m][n] = (1/2pi) int weight(e^{ix}) P_m(e^{ix}) Q_n(e^{-ix}) dx."""
    weight = QRF.coerce(weight)
    integrability_check(weight)
    wv = eval_on_circle(weight, rule.x, rule.y) * rule.weights / (2 * math.pi)
    z = _z_of(rule.x, rule.y)
    zc = np.conj(z)
    Pv = np.array([RationalFunc.coerce(family_P(m))(z) for m in indices])
    Qv = np.array([RationalFunc.coerce(family_Q(n))(zc) for n in indices])
    return (Pv * wv) @ Qv.T


def moment_gram(P: Iterable[LaurentPoly], Qs: Iterable[LaurentPoly], moment: Callable[[int], complex]) -> np.ndarray:
    """sum_{i,j} p_i q_j c_{i-j}: the Gram matrix from moments alone."""
    P, Qs = list(P), list(Qs)
    cache = {}

    def c(k):
        if k not in cache:
            cache[k] = moment(k)
        return cache[k]

    G = np.zeros((len(P), len(Qs)), dtype=complex)
    for m, p in enumerate(P):
        for n, q in enumerate(Qs):
            s = 0j
            for i, pi in p.items():
                for j, qj in q.items():
                    s += float(pi) * float(qj) * c(i - j)
            G[m, n] = s
    return G


def offdiag_relative(G: np.ndarray) -> float:
    """max |G[m][n]| / sqrt(|G[m][m]| |G[n][n]|) over m != n."""
    d = np.sqrt(np.abs(np.diag(G)))
    scale = np.outer(d, d)
    R = np.abs(G) / scale
    np.fill_diagonal(R, 0.0)
    return float(R.max()) if R.size else 0.0
