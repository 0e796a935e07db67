"""Second-order differential operators with rational coefficients.

A ``DiffOp2`` is ``A d^2 + B d + C``; a ``DiffOp1`` is the factored first
order operator ``f -> pre * d(post * f) + c f`` used for the Darboux factors.
All coefficients are exact, and operator identities are checked by comparing
canonical coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import Q, LaurentPoly, QuasiRationalFunc, RationalFunc, Z

RF = RationalFunc.coerce
QRF = QuasiRationalFunc


@dataclass(frozen=True)
class DiffOp2:
    A: RationalFunc
    B: RationalFunc
    C: RationalFunc

    def __post_init__(self):
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, RF(getattr(self, name)))

    @classmethod
    def identity(cls) -> "DiffOp2":
        return cls(0, 0, 1)

    @classmethod
    def multiplication(cls, c) -> "DiffOp2":
        return cls(0, 0, c)

    def __call__(self, f) -> QuasiRationalFunc:
        f = QRF.coerce(f)
        out = f * self.C
        d1 = f.derivative()
        if not self.B.is_zero():
            out = out + d1 * self.B
        if not self.A.is_zero():
            out = out + d1.derivative() * self.A
        return out

    def __add__(self, other: "DiffOp2") -> "DiffOp2":
        return DiffOp2(self.A + other.A, self.B + other.B, self.C + other.C)

    def __sub__(self, other: "DiffOp2") -> "DiffOp2":
        return DiffOp2(self.A - other.A, self.B - other.B, self.C - other.C)

    def scale(self, s) -> "DiffOp2":
        """Left multiplication by a scalar or a rational function."""
        s = RF(s)
        return DiffOp2(self.A * s, self.B * s, self.C * s)

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero() and self.C.is_zero()


@dataclass(frozen=True)
class DiffOp1:
    """f -> pre * (post * f)' + c * f.

    ``pre * post`` must be rational so the expanded operator has rational
    coefficients; ``coeffs()`` returns that expansion ``(p, q)`` with the
    operator equal to ``p d + q``.
    """

    pre: QuasiRationalFunc
    post: QuasiRationalFunc
    c: RationalFunc = RationalFunc.coerce(0)

    def __post_init__(self):
        object.__setattr__(self, "pre", QRF.coerce(self.pre))
        object.__setattr__(self, "post", QRF.coerce(self.post))
        object.__setattr__(self, "c", RF(self.c))
        if self.post.is_zero():
            raise ValueError("DiffOp1 with zero inner multiplier")

    @classmethod
    def from_coeffs(cls, p, q) -> "DiffOp1":
        """The operator p d + q."""
        return cls(QRF.coerce(p), QRF.coerce(1), RF(q))

    def coeffs(self):
        p = (self.pre * self.post).as_rational()
        q = (self.pre * self.post.derivative()).as_rational() + self.c
        return p, q

    def __call__(self, f) -> QuasiRationalFunc:
        f = QRF.coerce(f)
        p, q = self.coeffs()
        return f.derivative() * p + f * q

    def as_op2(self) -> DiffOp2:
        p, q = self.coeffs()
        return DiffOp2(0, p, q)

    def __mul__(self, s) -> "DiffOp1":
        p, q = self.coeffs()
        s = RF(s)
        return DiffOp1.from_coeffs(p * s, q * s)

    __rmul__ = __mul__

    def __sub__(self, other: "DiffOp1") -> "DiffOp1":
        p1, q1 = self.coeffs()
        p2, q2 = other.coeffs()
        return DiffOp1.from_coeffs(p1 - p2, q1 - q2)

    def __add__(self, other: "DiffOp1") -> "DiffOp1":
        p1, q1 = self.coeffs()
        p2, q2 = other.coeffs()
        return DiffOp1.from_coeffs(p1 + p2, q1 + q2)

    def then_multiply(self, g) -> "DiffOp1":
        """The operator f -> self(g * f)."""
        g = RF(g)
        p, q = self.coeffs()
        return DiffOp1.from_coeffs(p * g, p * g.derivative() + q * g)


def compose(outer: DiffOp1, inner: DiffOp1) -> DiffOp2:
    """outer o inner expanded by the product rule."""
    p1, q1 = outer.coeffs()
    p2, q2 = inner.coeffs()
    return DiffOp2(
        p1 * p2,
        p1 * p2.derivative() + p1 * q2 + q1 * p2,
        p1 * q2.derivative() + q1 * q2,
    )


@dataclass(frozen=True)
class Pencil:
    L1: DiffOp2
    L2: DiffOp2

    def __post_init__(self):
        if self.L1.is_zero() and self.L2.is_zero():
            raise ValueError("pencil with both operators zero")

    def at(self, lam) -> DiffOp2:
        """L1 - lam L2."""
        return self.L1 - self.L2.scale(Q(lam))

    def adjoint(self) -> "Pencil":
        return Pencil(circle_adjoint(self.L1), circle_adjoint(self.L2))


def pencil_residual(P: Pencil, lam, f) -> QuasiRationalFunc:
    """(L1 - lam L2) f, exactly."""
    f = QRF.coerce(f)
    return P.L1(f) - P.L2(f) * Q(lam)


def apply_op2(L: DiffOp2, f) -> QuasiRationalFunc:
    return L(f)


# --------------------------------------------------------------------------
# adjoints with respect to <f, g> = (1/2pi) int f(e^{ix}) g(e^{-ix}) dx
# --------------------------------------------------------------------------

def circle_adjoint(L: DiffOp2) -> DiffOp2:
    """Conjugate adjoint on the unit circle.

    C I -> C(1/z) I,  B d -> z d B(1/z) z,  A d^2 -> z^2 d^2 A(1/z) z^2,
    each expanded into plain coefficients.
    """
    z = RF(Z)
    z2 = z * z
    g = L.A.subs_inverse() * z2          # A(1/z) z^2
    k = L.B.subs_inverse() * z           # B(1/z) z
    dg = g.derivative()
    A = z2 * g
    B = z2 * dg * 2 + z * k
    C = L.C.subs_inverse() + z2 * dg.derivative() + z * k.derivative()
    return DiffOp2(A, B, C)


def circle_adjoint1(D: DiffOp1) -> DiffOp1:
    """Circle adjoint of p d + q: z d p(1/z) z + q(1/z)."""
    p, q = D.coeffs()
    z = RF(Z)
    k = p.subs_inverse() * z
    return DiffOp1.from_coeffs(z * k, z * k.derivative() + q.subs_inverse())


# --------------------------------------------------------------------------
# single-step Darboux factorization
# --------------------------------------------------------------------------

class NotAnEigenpairError(ValueError):
    pass


@dataclass(frozen=True)
class DarbouxFactors:
    """F, G1, G2 for a seed eigenpair (phi, kappa) and decoupling factor eps.

    ``kG1`` is kappa * G1, which stays defined when kappa = 0.
    """

    F: DiffOp1
    G1: Optional[DiffOp1]
    G2: DiffOp1
    kG1: DiffOp1
    phi_tilde: RationalFunc        # L2 phi / phi
    phi: QuasiRationalFunc
    kappa: Fraction
    eps: RationalFunc

    @property
    def phi_tilde1(self) -> RationalFunc:
        return self.phi_tilde * self.kappa

    def backward(self, lam) -> DiffOp1:
        """kappa G1 - lam G2."""
        return self.kG1 - self.G2 * Q(lam)


def _g_operator(A: RationalFunc, B: RationalFunc, pt: RationalFunc,
                phi: QuasiRationalFunc, eps: RationalFunc) -> DiffOp1:
    # (1/(pt phi)) (A d + B) (phi eps f)
    p = A * eps / pt
    q = B * eps / pt
    if not A.is_zero():
        q = q + A * (phi * eps).log_derivative() * eps / pt
    return DiffOp1.from_coeffs(p, q)


def darboux_ops(P: Pencil, seed, kappa, eps) -> DarbouxFactors:
    phi = QRF.coerce(seed)
    kappa = Q(kappa)
    eps = RF(eps)
    if eps.is_zero():
        raise ValueError("decoupling factor must be nonzero")
    if not pencil_residual(P, kappa, phi).is_zero():
        raise NotAnEigenpairError(f"seed is not an eigenfunction for kappa={kappa}")
    pt = (P.L2(phi) / phi).as_rational()
    if pt.is_zero():
        raise ValueError("L2 phi vanishes identically; the factorization is undefined")
    u = phi.log_derivative()
    F = DiffOp1.from_coeffs(eps.inverse(), -u / eps)
    G2 = _g_operator(P.L2.A, P.L2.B, pt, phi, eps)
    kG1 = _g_operator(P.L1.A, P.L1.B, pt, phi, eps)
    G1 = kG1 * (1 / kappa) if kappa != 0 else None
    return DarbouxFactors(F, G1, G2, kG1, pt, phi, kappa, eps)


def reassemble(P: Pencil, fac: DarbouxFactors) -> Pencil:
    """phi~_j (G_j F + I), expanded; must reproduce P."""
    pt = fac.phi_tilde
    L1 = compose(fac.kG1, fac.F).scale(pt) + DiffOp2.multiplication(pt * fac.kappa)
    L2 = compose(fac.G2, fac.F).scale(pt) + DiffOp2.multiplication(pt)
    return Pencil(L1, L2)


def transformed_pencil(P: Pencil, seed, kappa, eps) -> Pencil:
    """(kappa (F G1 + I), F G2 + I) by operator composition."""
    fac = darboux_ops(P, seed, kappa, eps)
    return transformed_from_factors(fac)


def transformed_from_factors(fac: DarbouxFactors) -> Pencil:
    L1 = compose(fac.F, fac.kG1) + DiffOp2.multiplication(fac.kappa)
    L2 = compose(fac.F, fac.G2) + DiffOp2.identity()
    return Pencil(L1, L2)


def closed_form_transformed(P: Pencil, seed, kappa, eps) -> Pencil:
    """Transformed pencil from the closed-form coefficient formulas.

    With a_j = A_j/phi~_j, b_j = B_j/phi~_j, u = phi'/phi, e = eps'/eps:
        A^_j = a_j
        B^_j = b_j + 2 e a_j + a_j'
        C^_j = 1 + b_j' + b_j (e - u) + (a_j (u eps + eps'))'/eps - a_j u (u + e)
    and L^_1 carries the factor kappa.  Gauge cancellation in a_j, b_j is
    asserted (``as_rational`` raises otherwise).
    """
    phi = QRF.coerce(seed)
    kappa = Q(kappa)
    eps = RF(eps)
    pt = (P.L2(phi) / phi).as_rational()
    u = phi.log_derivative()
    e = eps.derivative() / eps
    ops = []
    for L, ptj in ((P.L1, pt * kappa), (P.L2, pt)):
        a = L.A / ptj
        b = L.B / ptj
        Ah = a
        Bh = b + e * a * 2 + a.derivative()
        Ch = (1 + b.derivative() + b * (e - u)
              + (a * (u * eps + eps.derivative())).derivative() / eps
              - a * u * (u + e))
        ops.append(DiffOp2(Ah, Bh, Ch))
    return Pencil(ops[0].scale(kappa), ops[1])


def literal_c_hat(P: Pencil, seed, kappa, eps, j: int) -> RationalFunc:
    """Uncorrected constant-term formula for C^_j, kept for comparison.

    1 + (B/phi~)' - 2 (A/phi~) u^2 + (A (eps' + phi')/phi~)' + (B/phi~)(e - u)
    Here phi' is read as phi'/phi * phi; only meaningful when phi is rational.
    """
    phi = QRF.coerce(seed)
    pt = (P.L2(phi) / phi).as_rational() * (Q(kappa) if j == 1 else 1)
    L = P.L1 if j == 1 else P.L2
    u = phi.log_derivative()
    e = eps.derivative() / eps
    a, b = L.A / pt, L.B / pt
    dphi = phi.derivative().as_rational()
    return (1 + b.derivative() - a * u * u * 2
            + (a * (eps.derivative() + dphi)).derivative() + b * (e - u))
