from fractions import Fraction

import numpy as np
import pytest

from xhr.darboux import (
    ExceptionalFamily,
    IndexNotInSetError,
    InvalidSeedError,
    MultistepTransform,
    SeedSpec,
    VanishingWronskianError,
    closed_form_poly,
    decoupling_factor,
    hpsi,
    l0_one_coincidences,
    multistep_transform,
    seed_factors,
    state_function,
    state_function_table,
    state_is_annihilated,
    transformed_gevp_residual,
    weight_from_adjoint,
)
from xhr.exact import LaurentPoly, QuasiRationalFunc as QRF, RationalFunc, pochhammer
from xhr.hr import DegenerateParameterError, HRParams, eigen_family, hr_norm, hr_poly, hr_weight
from xhr.quad import de_rule, gram_matrix

F = Fraction
AB = HRParams(F(1, 2), F(1, 3))


def test_decoupling_factors():
    l0 = 2
    P = hr_poly(l0, AB)
    Pd = hr_poly(l0, HRParams(-AB.beta, -AB.alpha))
    assert decoupling_factor(SeedSpec(1, l0, AB)) == RationalFunc(1, P)
    assert decoupling_factor(SeedSpec(2, l0, AB)) == RationalFunc(1, LaurentPoly({0: 1, 1: -1}) * Pd)
    assert decoupling_factor(SeedSpec(4, l0, AB)) == RationalFunc(1, LaurentPoly({1: -1, 2: 1}) * Pd.subs_inverse())


def test_first_exceptional_example():
    fam = ExceptionalFamily.of(1, 1, AB)
    assert fam.P(0) == LaurentPoly.const(-1)
    assert fam.degree(0) == 0
    assert fam.Q(0) == LaurentPoly.const(-1)


def test_state_deletion_index_rejected():
    fam = ExceptionalFamily.of(1, 2, AB)
    assert hpsi(fam.seed, 2).is_zero()
    with pytest.raises(IndexNotInSetError):
        fam.P(2)


def test_type_four_degrees_and_added_index():
    fam = ExceptionalFamily.of(4, 1, AB)
    assert fam.P(0).degree == 2
    assert fam.indices(3) == [-2, 0, 1]
    assert fam.Q(-2) == LaurentPoly.const(1)
    assert fam.P(-2).degree == 0


@pytest.mark.parametrize("j0", [1, 2, 3, 4])
@pytest.mark.parametrize("l0", [1, 2, 3])
def test_routes_agree_and_degrees(j0, l0):
    fam = ExceptionalFamily.of(j0, l0, AB)
    for n in fam.indices(6):
        P = fam.P(n)
        assert P.degree == fam.degree(n) and P.low_degree >= 0
        assert fam.Q(n).degree == P.degree
        if n >= 0:
            ref = hpsi(fam.seed, n)
            ref = ref.shift(l0) if j0 in (3, 4) else ref
            assert P == ref == closed_form_poly(fam.seed, n)
        assert transformed_gevp_residual(fam, n).is_zero()


@pytest.mark.parametrize("j0", [1, 2, 3, 4])
def test_weight_equals_adjoint_construction(j0):
    fam = ExceptionalFamily.of(j0, 2, AB)
    for n in fam.indices(3):
        if n >= 0:
            assert weight_from_adjoint(fam, n) == fam.weight()


def test_weight_prefactor_type_three():
    # ratio of type-3 weight to the HR weight times its polynomial factor
    fam = ExceptionalFamily.of(3, 2, AB)
    D = hr_poly(2, HRParams(AB.beta - 1, AB.alpha + 1))
    rest = fam.weight() / hr_weight(AB) * (D * D)
    c = pochhammer(1 + AB.alpha, 2) / pochhammer(AB.beta, 2)
    assert rest == QRF.coerce(LaurentPoly.monomial(2) * LaurentPoly({0: -1, 1: 1}) * c)


def test_norm_example_type_three():
    fam = ExceptionalFamily.of(3, 2, AB)
    assert abs(fam.norm(0) - float(-F(1, 3) * F(23, 6)) * hr_norm(0, AB)) < 1e-15


@pytest.mark.parametrize("j0", [1, 2, 3, 4])
def test_transport_ratio(j0):
    fam = ExceptionalFamily.of(j0, 2, AB)
    for n in fam.indices(8):
        if n >= 0:
            assert fam.transport_ratio_holds(n)


def test_sign_pattern_types_three_and_four():
    for j0 in (3, 4):
        fam = ExceptionalFamily.of(j0, 2, (F(1, 2), F(3, 4)))
        assert fam.seed.positive_definite
        assert all(-fam.norm(n) > 0 for n in range(8))


@pytest.mark.parametrize("j0,ab", [(1, (F(1, 2), F(1, 3))), (3, (F(1, 2), F(3, 4)))])
def test_exceptional_gram_by_quadrature(j0, ab):
    fam = ExceptionalFamily.of(j0, 2, ab)
    idx = fam.indices(5)
    G = gram_matrix(fam.P, fam.Q, fam.weight(), idx, de_rule(9))
    ref = np.diag([fam.norm(n) for n in idx])
    assert np.max(np.abs(G - ref)) < 1e-10 * np.max(np.abs(ref))


def test_invalid_seeds():
    s = SeedSpec(1, 2, (F(-1, 2), F(-3, 2)))
    assert s.violations() and "alpha+beta = -2" in s.violations()[0]
    with pytest.raises(InvalidSeedError):
        ExceptionalFamily(s).weight()
    assert SeedSpec(2, 1, (F(1, 3), F(2, 3))).violations()
    assert SeedSpec(1, 1, (F(1, 3), F(4, 3))).violations()
    with pytest.raises(ValueError):
        SeedSpec(5, 1, AB)
    with pytest.raises(ValueError):
        SeedSpec(1, 0, AB)


@pytest.mark.parametrize("j0", [1, 2, 3, 4])
@pytest.mark.parametrize("l0", [1, 2, 3])
def test_state_functions(j0, l0):
    seed = SeedSpec(j0, l0, AB)
    f = state_function(seed)
    assert f == state_function_table(seed)
    assert state_is_annihilated(seed, f)


def test_state_function_examples():
    assert state_function(SeedSpec(4, 3, AB)) == QRF.coerce(LaurentPoly.monomial(-3))
    f = state_function(SeedSpec(1, 2, AB))
    assert f.log_derivative() == QRF(AB.beta - 1 + 2, -1 - AB.alpha - AB.beta, 1).log_derivative()


@pytest.mark.parametrize("ab", [(F(1, 2), F(1, 3)), (F(2, 5), F(1, 4))])
def test_l0_one_coincidences(ab):
    res = l0_one_coincidences(ab, 6)
    assert all(res["type4_vs_type1"]) and all(res["type2_vs_type3"])


def test_l0_one_rejects_beta_one():
    with pytest.raises(DegenerateParameterError):
        l0_one_coincidences((F(1, 2), 1))


def test_single_step_wronskian_is_f():
    T = MultistepTransform(AB, [(1, 1)])
    psi = hr_poly(4, AB)
    assert T.wronskian_route(psi, 4) == seed_factors(SeedSpec(1, 1, AB)).F(QRF.coerce(psi))


def test_two_step_routes_agree():
    T = MultistepTransform(AB, [(1, 1), (1, 2)])
    psi = hr_poly(4, AB)
    assert T.sequential(psi, 4) == T.wronskian_route(psi, 4)
    assert multistep_transform(AB, [(1, 1), (1, 2)], psi, 4) == T.sequential(psi, 4)
    # adjoint side: M-chain image equals the adjoint of the final L2
    phi_star = eigen_family(1, "adjoint", AB).function(4)
    assert T.l2_adjoint_image(phi_star, 4) == T.l2_adjoint_direct(phi_star, 4)


def test_repeated_seed_has_vanishing_wronskian():
    with pytest.raises(VanishingWronskianError):
        MultistepTransform(AB, [(1, 1), (1, 1)])


def test_multistep_rejects_seed_eigenvalue():
    T = MultistepTransform(AB, [(1, 1), (1, 2)])
    with pytest.raises(ValueError):
        T.wronskian_route(hr_poly(2, AB), 2)
    with pytest.raises(ValueError):
        MultistepTransform(AB, [])
