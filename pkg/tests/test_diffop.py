from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from xhr.darboux import SeedSpec, decoupling_factor, seed_factors
from xhr.diffop import (
    DiffOp1,
    DiffOp2,
    Pencil,
    apply_op2,
    circle_adjoint,
    circle_adjoint1,
    closed_form_transformed,
    compose,
    literal_c_hat,
    pencil_residual,
    reassemble,
    transformed_from_factors,
)
from xhr.exact import LaurentPoly, QuasiRationalFunc as QRF, RationalFunc
from xhr.hr import HRParams, eigen_family, hr_pencil, hr_poly

F = Fraction
RF = RationalFunc.coerce
z = LaurentPoly.monomial(1)
small_q = st.fractions(-4, 4, max_denominator=6)
laurent = st.dictionaries(st.integers(-3, 4), small_q, max_size=4).map(LaurentPoly)
rational = st.tuples(laurent, laurent.filter(lambda p: not p.is_zero())).map(lambda t: RationalFunc(*t))
op2 = st.builds(DiffOp2, rational, rational, rational)


def test_l2_on_constant():
    p = HRParams(F(1, 2), F(1, 3))
    assert apply_op2(hr_pencil(p).L2, 1) == QRF.coerce(-F(3, 2))


@pytest.mark.parametrize("which", ["L1", "L2"])
def test_operators_on_polynomials(which):
    p = HRParams(F(1, 2), F(1, 3))
    n = 3
    L = getattr(hr_pencil(p), which)
    shifted = hr_poly(n, p.shifted(1, -1))
    c = -(n + p.alpha + 1) * (n if which == "L1" else 1)
    assert apply_op2(L, hr_poly(n, p)) == QRF.coerce(shifted * c)


def test_pencil_residuals():
    p = HRParams(F(2, 5), F(1, 3))
    P = hr_pencil(p)
    for n in range(9):
        assert pencil_residual(P, n, hr_poly(n, p)).is_zero()
    assert not pencil_residual(P, 2, hr_poly(1, p)).is_zero()
    fam = eigen_family(3, "primal", p)
    assert pencil_residual(P, -2 - 1 - p.alpha - p.beta, fam.function(2)).is_zero()


def test_circle_adjoint_of_hr_pencil():
    a, b = F(1, 2), F(1, 3)
    P = hr_pencil((a, b))
    L1s = circle_adjoint(P.L1)
    assert L1s.A == RF(LaurentPoly({2: -1, 3: 1}))
    assert L1s.B == RF(LaurentPoly({1: -(2 + a), 2: -(b - 3)}))
    assert L1s.C == RF(LaurentPoly({1: 1 - b}))
    L2s = circle_adjoint(P.L2)
    assert L2s.A.is_zero()
    assert L2s.B == RF(LaurentPoly({1: -1, 2: 1}))
    assert L2s.C == RF(LaurentPoly({0: -1 - a, 1: 1}))


def test_circle_adjoint_of_multiplication():
    assert circle_adjoint(DiffOp2.multiplication(RF(z))) == DiffOp2.multiplication(RF(z.subs_inverse()))


@given(op2)
@settings(max_examples=40, deadline=None)
def test_double_adjoint_is_identity(L):
    assert circle_adjoint(circle_adjoint(L)) == L


@given(rational, rational)
@settings(max_examples=40, deadline=None)
def test_first_order_adjoint_matches_second_order(p, q):
    D = DiffOp1.from_coeffs(p, q)
    assert circle_adjoint1(D).as_op2() == circle_adjoint(D.as_op2())


@given(rational, rational, rational, rational, laurent)
@settings(max_examples=30, deadline=None)
def test_compose_agrees_with_sequential_application(p1, q1, p2, q2, f):
    outer, inner = DiffOp1.from_coeffs(p1, q1), DiffOp1.from_coeffs(p2, q2)
    assert apply_op2(compose(outer, inner), f) == outer(inner(f))


def test_f_annihilates_its_seed():
    for l0 in (1, 2, 3):
        seed = SeedSpec(1, l0, (F(1, 2), F(1, 3)))
        assert seed_factors(seed).F(seed.phi()).is_zero()


@pytest.mark.parametrize("j0", [1, 2, 3, 4])
def test_factorization_reassembles_pencil(j0):
    seed = SeedSpec(j0, 2, (F(1, 2), F(3, 4)))
    P = seed.pencil()
    R = reassemble(P, seed_factors(seed))
    assert R.L1 == P.L1 and R.L2 == P.L2


def test_phi_tilde_two_for_type_one():
    p = HRParams(F(1, 2), F(1, 3))
    l0 = 2
    fac = seed_factors(SeedSpec(1, l0, p))
    ref = RationalFunc(hr_poly(l0, p.shifted(1, -1)), hr_poly(l0, p)) * (-(l0 + p.alpha + 1))
    assert fac.phi_tilde == ref


@pytest.mark.parametrize("j0,l0", [(1, 1), (1, 2), (2, 1), (3, 2), (4, 1), (4, 3)])
def test_closed_form_transformed_pencil(j0, l0):
    seed = SeedSpec(j0, l0, (F(1, 2), F(1, 3)))
    eps = decoupling_factor(seed)
    comp = transformed_from_factors(seed_factors(seed))
    closed = closed_form_transformed(seed.pencil(), seed.phi(), seed.kappa, eps)
    assert comp.L1 == closed.L1 and comp.L2 == closed.L2
    assert closed.L2.A.is_zero()


def test_transformed_pencil_has_polynomial_eigenfunctions():
    seed = SeedSpec(1, 1, (F(1, 2), F(1, 3)))
    fac = seed_factors(seed)
    T = transformed_from_factors(fac)
    for n in range(7):
        if n != 1:
            assert pencil_residual(T, n, fac.F(hr_poly(n, seed.params))).is_zero()


def test_literal_constant_term_differs_from_composition():
    # the literal constant-term display for C^_1 does not reproduce the
    # composed operator; the corrected closed form does (checked above)
    seed = SeedSpec(1, 1, (F(1, 2), F(1, 3)))
    eps = decoupling_factor(seed)
    comp = transformed_from_factors(seed_factors(seed))
    lit = literal_c_hat(seed.pencil(), seed.phi(), seed.kappa, eps, 1)
    assert lit * seed.kappa != comp.L1.C
    # L2 has A = 0, where both versions coincide
    assert literal_c_hat(seed.pencil(), seed.phi(), seed.kappa, eps, 2) == comp.L2.C


def test_pencil_requires_an_operator():
    with pytest.raises(ValueError):
        Pencil(DiffOp2(0, 0, 0), DiffOp2(0, 0, 0))
