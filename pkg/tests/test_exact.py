from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from xhr.exact import (
    Q,
    LaurentPoly,
    QuasiRationalFunc,
    RationalFunc,
    gauge_split,
    logderiv_split,
    pochhammer,
    wronskian,
)

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)
nonint_q = small_q.filter(lambda x: x.denominator != 1)
laurent = st.dictionaries(st.integers(-4, 5), small_q, max_size=5).map(LaurentPoly)
nonzero_laurent = laurent.filter(lambda p: not p.is_zero())
points = small_q.filter(lambda x: x not in (0, 1))


def test_rational_coercion_rejects_decimals():
    assert Q("3/4") == Fraction(3, 4)
    assert Q(2) == Fraction(2)
    for bad in ("0.5", "1e-3", 0.5):
        with pytest.raises((ValueError, TypeError)):
            Q(bad)


def test_pochhammer():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2)
    assert pochhammer(5, 0) == 1
    assert pochhammer(-2, 3) == 0


@given(laurent, laurent, points)
def test_ring_ops_commute_with_evaluation(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)


@given(laurent, laurent)
def test_leibniz(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(nonzero_laurent, nonzero_laurent)
def test_degree_arithmetic(p, q):
    r = p * q
    assert r.degree == p.degree + q.degree
    assert r.low_degree == p.low_degree + q.low_degree


@given(laurent)
def test_subs_inverse_is_involution(p):
    assert p.subs_inverse().subs_inverse() == p


@given(laurent, nonzero_laurent, points)
def test_rational_round_trip(p, q, x):
    r = RationalFunc(p, q)
    if q(x) != 0:
        assert r(x) == p(x) / q(x)
    assert r * RationalFunc(q) == RationalFunc(p)


@given(laurent, nonzero_laurent)
def test_rational_derivative_quotient_rule(p, q):
    r = RationalFunc(p, q)
    expected = RationalFunc(p.derivative() * q - p * q.derivative(), q * q)
    assert r.derivative() == expected


@given(nonint_q, nonint_q, st.integers(-3, 3), st.integers(-3, 3))
def test_gauge_absorbs_integer_shifts(a, b, i, j):
    f = QuasiRationalFunc(a + i, b + j, 1)
    g = QuasiRationalFunc(a, b, 1) * QuasiRationalFunc(i, j, 1)
    assert f == g
    assert f.log_derivative() == g.log_derivative()


@given(small_q, small_q)
def test_gauge_split_matches_log_derivative(a, b):
    P, Qd = gauge_split(a, b)
    g = QuasiRationalFunc(a, b, 1)
    assert g.log_derivative() == RationalFunc(P, Qd)


def test_logderiv_split_denominators():
    a, b = Fraction(-2, 3), Fraction(1, 5)
    assert logderiv_split(QuasiRationalFunc.gauge(a, b))[1] == LaurentPoly({1: -1, 2: 1})
    assert logderiv_split(QuasiRationalFunc.gauge(0, b))[1] == LaurentPoly({0: 1, 1: -1})
    assert logderiv_split(QuasiRationalFunc.gauge(a, 0))[1] == LaurentPoly.monomial(1)


@given(nonint_q, nonint_q, laurent, laurent)
@settings(max_examples=40)
def test_qrf_leibniz(a, b, p, q):
    f = QuasiRationalFunc(a, b, p)
    g = QuasiRationalFunc(-b, a, q)
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


def test_adding_different_gauges_is_an_error():
    with pytest.raises(ValueError):
        QuasiRationalFunc.gauge(Fraction(1, 2)) + QuasiRationalFunc.gauge(Fraction(1, 3))


@given(nonint_q, nonint_q, laurent)
def test_qrf_subs_inverse_is_involution(a, b, p):
    f = QuasiRationalFunc(a, b, p)
    assert f.subs_inverse().subs_inverse() == f


def test_wronskian_of_monomials():
    z = LaurentPoly.monomial(1)
    W = wronskian([QuasiRationalFunc.coerce(LaurentPoly.const(1)), QuasiRationalFunc.coerce(z),
                   QuasiRationalFunc.coerce(z * z)])
    assert W == QuasiRationalFunc.coerce(2)


@given(nonint_q, laurent.filter(lambda p: not p.is_zero()), laurent)
@settings(max_examples=30)
def test_wronskian_scaling(a, p, q):
    # Wr[g f1, g f2] = g^2 Wr[f1, f2]
    g = QuasiRationalFunc.gauge(a, 0)
    f1, f2 = QuasiRationalFunc.coerce(p), QuasiRationalFunc.coerce(q)
    assert wronskian([g * f1, g * f2]) == g * g * wronskian([f1, f2])
