"""Exact algebra over the rationals.

Three value types live here, each immutable:

* ``LaurentPoly``  -- finite sums ``sum c_k z^k`` with ``k`` possibly negative.
* ``RationalFunc`` -- quotients of Laurent polynomials in a canonical form.
* ``QuasiRationalFunc`` -- ``(-z)^a (1-z)^b r(z)`` with rational ``a, b``.

The quasi-rational class is closed under products, quotients and d/dz, which
is all the operator calculus in this package ever needs.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import numpy as np

Scalar = Union[int, Fraction]


def Q(x) -> Fraction:
    """Coerce to an exact ``Fraction``; floats and decimal strings are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"not an exact rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def pochhammer(x, k: int) -> Fraction:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1), with (x)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    x = Q(x)
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


# --------------------------------------------------------------------------
# dense polynomial helpers (index == power, no trailing zeros)
# --------------------------------------------------------------------------

def _trim(c: List[Fraction]) -> List[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pdivmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) <= db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        c = c / lead
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _pmonic(a: List[Fraction]) -> List[Fraction]:
    lead = a[-1]
    if lead == 1:
        return a
    return [c / lead for c in a]


def _pgcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Monic gcd over Q by the Euclidean algorithm."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, (_pmonic(r) if r else r)
    return _pmonic(a) if a else a


def _pmul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


# --------------------------------------------------------------------------
# LaurentPoly
# --------------------------------------------------------------------------

class LaurentPoly:
    """Exact Laurent polynomial: a map exponent -> nonzero Fraction."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c: Dict[int, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Q(v)
                if v != 0:
                    c[int(k)] = v
        self._c = c
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def _raw(cls, c: Dict[int, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def from_dense(cls, coeffs: Iterable[Scalar], shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return cls.const(x)

    # inspection -----------------------------------------------------------
    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    @property
    def low_degree(self) -> int:
        if not self._c:
            raise ValueError("low degree of the zero polynomial")
        return min(self._c)

    def coeff(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    @property
    def leading_coeff(self) -> Fraction:
        return self._c[self.degree]

    def is_polynomial(self) -> bool:
        return not self._c or self.low_degree >= 0

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def dense(self) -> Tuple[int, List[Fraction]]:
        """(low, [c_low, ..., c_high]) with no trailing zeros."""
        if not self._c:
            return 0, []
        lo, hi = self.low_degree, self.degree
        return lo, [self._c.get(k, Fraction(0)) for k in range(lo, hi + 1)]

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(other)
            except TypeError:
                return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            c: Dict[int, Fraction] = {}
            for i, x in self._c.items():
                for j, y in other._c.items():
                    c[i + j] = c.get(i + j, 0) + x * y
            return LaurentPoly._raw({k: v for k, v in c.items() if v})
        try:
            s = Q(other)
        except TypeError:
            return NotImplemented
        if s == 0:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({k: v * s for k, v in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            return NotImplemented
        s = Q(other)
        return LaurentPoly._raw({k: v / s for k, v in self._c.items()})

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                (k, v), = self._c.items()
                return LaurentPoly._raw({k * n: v ** n})
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by z^k."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly._raw({k - 1: k * v for k, v in self._c.items() if k != 0})

    def subs_inverse(self) -> "LaurentPoly":
        """p(1/z)."""
        return LaurentPoly._raw({-k: v for k, v in self._c.items()})

    def root_multiplicity(self, x: Scalar = 1) -> int:
        """Multiplicity of (z - x) as a factor."""
        if not self._c:
            raise ValueError("multiplicity in the zero polynomial")
        x = Q(x)
        lo, c = self.dense()
        m = 0
        while len(c) > 1:
            q, r = _pdivmod(c, [-x, Fraction(1)])
            if r:
                break
            c = q
            m += 1
        return m

    def deflate(self, x: Scalar, m: int) -> "LaurentPoly":
        """Exact quotient by (z - x)^m."""
        lo, c = self.dense()
        for _ in range(m):
            c, r = _pdivmod(c, [-Q(x), Fraction(1)])
            if r:
                raise ValueError("not divisible")
        return LaurentPoly.from_dense(c, lo)

    # evaluation -----------------------------------------------------------
    def __call__(self, x):
        if not self._c:
            return 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            if x == 0 and self.low_degree < 0:
                raise ZeroDivisionError("Laurent polynomial evaluated at 0")
            return sum((v * x ** k for k, v in self._c.items()), Fraction(0))
        # floating / complex / array: Horner on the dense part
        lo, c = self.dense()
        xa = np.asarray(x, dtype=complex)
        acc = np.zeros_like(xa)
        for v in reversed(c):
            acc = acc * xa + float(v)
        if lo:
            acc = acc * xa ** lo
        return acc

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        try:
            return self._c == LaurentPoly.const(other)._c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        if not self._c:
            return "LaurentPoly(0)"
        terms = []
        for k, v in sorted(self._c.items(), reverse=True):
            if k == 0:
                terms.append(f"{v}")
            elif k == 1:
                terms.append(f"{v}*z")
            else:
                terms.append(f"{v}*z^{k}")
        return "LaurentPoly(" + " + ".join(terms) + ")"


Z = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)


# --------------------------------------------------------------------------
# RationalFunc
# --------------------------------------------------------------------------

class RationalFunc:
    """Quotient of Laurent polynomials, stored canonically.

    Canonical form: ``den`` is an ordinary monic polynomial with nonzero
    constant term, every power of ``z`` lives in ``num``, and
    ``gcd(num, den) = 1``.  Equality is therefore structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        den = ONE if den is None else LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "RationalFunc":
        if isinstance(x, RationalFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls._raw(x, ONE)
        return cls._raw(LaurentPoly.const(x), ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self!r} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        try:
            other = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den)
        return RationalFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalFunc._raw(LaurentPoly(), ONE)
            return RationalFunc._raw(self.num * other, self.den)
        try:
            other = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == ONE and other.den == ONE:
            return RationalFunc._raw(self.num * other.num, ONE)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunc._raw(self.num / other, self.den)
        try:
            other = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunc._raw(self.num ** n, self.den ** n)

    def derivative(self) -> "RationalFunc":
        if self.den == ONE:
            return RationalFunc._raw(self.num.derivative(), ONE)
        n, d = self.num, self.den
        return RationalFunc(n.derivative() * d - n * d.derivative(), d * d)

    def subs_inverse(self) -> "RationalFunc":
        """r(1/z)."""
        return RationalFunc(self.num.subs_inverse(), self.den.subs_inverse())

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            d = self.den(x)
            if d == 0:
                raise ZeroDivisionError(f"pole of {self!r} at {x}")
            return self.num(x) / d
        return self.num(x) / self.den(x)

    def __eq__(self, other):
        if isinstance(other, RationalFunc):
            return self.num == other.num and self.den == other.den
        try:
            return self == RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        if self.den == ONE:
            return f"RationalFunc({self.num!r})"
        return f"RationalFunc({self.num!r} / {self.den!r})"


def _canonical(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return num, ONE
    nlo, nc = num.dense()
    dlo, dc = den.dense()
    shift = nlo - dlo
    if len(dc) > 1:
        g = _pgcd(nc, dc)
        if len(g) > 1:
            nc, _ = _pdivmod(nc, g)
            dc, _ = _pdivmod(dc, g)
    lead = dc[-1]
    if lead != 1:
        nc = [c / lead for c in nc]
        dc = [c / lead for c in dc]
    return LaurentPoly.from_dense(nc, shift), LaurentPoly.from_dense(dc)


def neg_z_power(k: int) -> LaurentPoly:
    """(-z)^k for integer k."""
    return LaurentPoly.monomial(k, (-1) ** (k % 2))


def one_minus_z_power(k: int) -> RationalFunc:
    """(1-z)^k for integer k."""
    base = LaurentPoly({0: 1, 1: -1})
    if k >= 0:
        return RationalFunc._raw(base ** k, ONE)
    return RationalFunc(ONE, base ** (-k))


# --------------------------------------------------------------------------
# QuasiRationalFunc
# --------------------------------------------------------------------------

def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


class QuasiRationalFunc:
    """``(-z)^a (1-z)^b r(z)`` with exact rational gauge exponents.

    ``a`` and ``b`` are kept as supplied (they name the gauge the caller
    meant), except that an integer exponent is always absorbed into ``r``.
    Equality and addition work modulo integer shifts of the exponents, which
    is exact on the principal branch used everywhere in this package.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a: Scalar = 0, b: Scalar = 0, r=1):
        a, b = Q(a), Q(b)
        r = RationalFunc.coerce(r)
        if r.is_zero():
            a = b = Fraction(0)
        if a.denominator == 1 and a != 0:
            r = r * neg_z_power(int(a))
            a = Fraction(0)
        if b.denominator == 1 and b != 0:
            r = r * one_minus_z_power(int(b))
            b = Fraction(0)
        self.a, self.b, self.r = a, b, r

    @classmethod
    def coerce(cls, x) -> "QuasiRationalFunc":
        if isinstance(x, QuasiRationalFunc):
            return x
        return cls(0, 0, RationalFunc.coerce(x))

    @classmethod
    def gauge(cls, a: Scalar = 0, b: Scalar = 0) -> "QuasiRationalFunc":
        return cls(a, b, 1)

    @classmethod
    def zero(cls) -> "QuasiRationalFunc":
        return cls(0, 0, 0)

    def is_zero(self) -> bool:
        return self.r.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.a == 0 and self.b == 0

    def as_rational(self) -> RationalFunc:
        if not self.is_rational():
            raise ValueError(f"gauge (a={self.a}, b={self.b}) does not cancel")
        return self.r

    def canonical(self) -> Tuple[Fraction, Fraction, RationalFunc]:
        """Exponents reduced into [0, 1) with the integer parts moved into r."""
        if self.is_zero():
            return Fraction(0), Fraction(0), self.r
        ka, kb = _floor(self.a), _floor(self.b)
        r = self.r
        if ka:
            r = r * neg_z_power(ka)
        if kb:
            r = r * one_minus_z_power(kb)
        return self.a - ka, self.b - kb, r

    def same_gauge_class(self, other: "QuasiRationalFunc") -> bool:
        return (self.a - other.a).denominator == 1 and (self.b - other.b).denominator == 1

    # arithmetic -----------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuasiRationalFunc(self.a, self.b, self.r * other)
        if isinstance(other, (LaurentPoly, RationalFunc)):
            return QuasiRationalFunc(self.a, self.b, self.r * RationalFunc.coerce(other))
        if isinstance(other, QuasiRationalFunc):
            return QuasiRationalFunc(self.a + other.a, self.b + other.b, self.r * other.r)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "QuasiRationalFunc":
        return QuasiRationalFunc(-self.a, -self.b, self.r.inverse())

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, RationalFunc)):
            return QuasiRationalFunc(self.a, self.b, self.r / RationalFunc.coerce(other))
        if isinstance(other, QuasiRationalFunc):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return QuasiRationalFunc.coerce(other) * self.inverse()

    def __neg__(self):
        return QuasiRationalFunc(self.a, self.b, -self.r)

    def __add__(self, other):
        if not isinstance(other, QuasiRationalFunc):
            try:
                other = QuasiRationalFunc.coerce(other)
            except TypeError:
                return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if not self.same_gauge_class(other):
            raise ValueError(
                f"cannot add quasi-rational functions with gauges "
                f"({self.a}, {self.b}) and ({other.a}, {other.b})"
            )
        da, db = int(other.a - self.a), int(other.b - self.b)
        r2 = other.r
        if da:
            r2 = r2 * neg_z_power(da)
        if db:
            r2 = r2 * one_minus_z_power(db)
        return QuasiRationalFunc(self.a, self.b, self.r + r2)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-QuasiRationalFunc.coerce(other))

    def __rsub__(self, other):
        return QuasiRationalFunc.coerce(other) - self

    def __pow__(self, n: int):
        return QuasiRationalFunc(self.a * n, self.b * n, self.r ** n)

    def log_derivative_of_gauge(self) -> RationalFunc:
        """a/z + b/(z-1)."""
        out = RationalFunc.coerce(0)
        if self.a:
            out = out + RationalFunc(LaurentPoly.monomial(-1, self.a))
        if self.b:
            out = out + RationalFunc(LaurentPoly.const(self.b), LaurentPoly({0: -1, 1: 1}))
        return out

    def derivative(self) -> "QuasiRationalFunc":
        if self.is_zero():
            return self
        r = self.r.derivative()
        if self.a or self.b:
            r = r + self.r * self.log_derivative_of_gauge()
        return QuasiRationalFunc(self.a, self.b, r)

    def log_derivative(self) -> RationalFunc:
        """f'/f as a rational function."""
        return self.derivative().r / self.r

    def subs_inverse(self) -> "QuasiRationalFunc":
        """f(1/z) on the unit circle (principal branches, z != 1).

        Uses (-1/z)^a = (-z)^(-a) and (1 - 1/z)^b = (1-z)^b (-z)^(-b); both
        hold for arg(-z) in (-pi, pi).
        """
        return QuasiRationalFunc(-self.a - self.b, self.b, self.r.subs_inverse())

    def __eq__(self, other):
        if not isinstance(other, QuasiRationalFunc):
            try:
                other = QuasiRationalFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"QuasiRationalFunc(a={self.a}, b={self.b}, r={self.r!r})"


QRF = QuasiRationalFunc


def gauge_split(a: Scalar, b: Scalar) -> Tuple[LaurentPoly, LaurentPoly]:
    """``(P, Q)`` with ``d/dz log((-z)^a (1-z)^b) = P/Q``.

    ``Q`` is one of ``1``, ``1-z``, ``z``, ``z(z-1)`` depending on which
    exponents are nonzero.  Works on raw exponents, so integer values are
    handled the same way as fractional ones.
    """
    a, b = Q(a), Q(b)
    if a and b:
        # a/z + b/(z-1) = (a(z-1) + b z) / (z(z-1))
        return LaurentPoly({0: -a, 1: a + b}), LaurentPoly({1: -1, 2: 1})
    if b:
        # b/(z-1) = -b/(1-z)
        return LaurentPoly.const(-b), LaurentPoly({0: 1, 1: -1})
    if a:
        return LaurentPoly.const(a), LaurentPoly.monomial(1)
    return LaurentPoly(), ONE


def logderiv_split(f: QuasiRationalFunc) -> Tuple[LaurentPoly, LaurentPoly]:
    """Split the log-derivative of a pure gauge into numerator/denominator."""
    if f.r != RationalFunc.coerce(1):
        raise ValueError("logderiv_split needs a pure gauge (r = 1)")
    return gauge_split(f.a, f.b)


def wronskian(funcs: List[QuasiRationalFunc]) -> QuasiRationalFunc:
    """Exact Wronskian det[f_j^(i)] of quasi-rational functions.

    Every column shares one gauge, so the determinant is the product of the
    gauges times a determinant of rational functions.
    """
    n = len(funcs)
    gauge = QuasiRationalFunc.gauge(0, 0)
    cols: List[List[RationalFunc]] = []
    for f in funcs:
        g = QuasiRationalFunc.gauge(f.a, f.b)
        gauge = gauge * g
        rows = []
        cur = f
        for _ in range(n):
            rows.append(cur.r)
            cur = cur.derivative()
        cols.append(rows)
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    return gauge * _det(mat)


def _det(m: List[List[RationalFunc]]) -> RationalFunc:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    out = RationalFunc.coerce(0)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out
