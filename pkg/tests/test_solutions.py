import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lauricella_pade import Instance
from lauricella_pade.exact import LaurentSeries, Poly, adjoint, ord_inf
from lauricella_pade.exact.rational import general_binomial, pochhammer
from lauricella_pade.solutions import (
    apply_L,
    binomial_series_model,
    build_by_recurrence,
    build_closed_form,
    build_family,
    canonical_seeds,
    jp_expand,
    lauricella_coeff,
    linear_independence_witness,
    operator_L,
    phi_f,
    phi_f_bivariate,
)

from conftest import rationals

z = Poly.z()


def _hyp_oracle(K):
    """Coefficients of (1 - x)^(1/2) * 2F1(2, 3/2; 3; x) in x = 1/z."""
    sq = [general_binomial(F(1, 2), k) * (-1) ** k for k in range(K)]
    hg = [pochhammer(F(2), k) * pochhammer(F(3, 2), k) / (pochhammer(F(3), k) * math.factorial(k)) for k in range(K)]
    return [sum(sq[i] * hg[k - i] for i in range(k + 1)) for k in range(K)]


def test_I1_first_coefficients(I1):
    fam = build_family(I1, 8)
    assert list(fam.f[0].coeffs[:5]) == [1, F(1, 2), F(5, 16), F(7, 32), F(21, 128)]


def test_I1_agrees_with_hypergeometric_oracle(I1):
    fam = build_family(I1, 201)
    assert list(fam.f[0].coeffs) == _hyp_oracle(201)
    assert all(lauricella_coeff(I1, 0, k) == fam.coeff(0, k) for k in range(0, 201, 20))


def test_seeds_only(I1, I2):
    for inst in (I1, I2):
        fam = build_by_recurrence(inst, inst.w + 1)
        assert [list(f.coeffs) for f in fam.f] == canonical_seeds(inst)


@pytest.mark.parametrize("name", ["I1", "I2"])
def test_recurrence_equals_closed_form(name, request):
    inst = request.getfixturevalue(name)
    T = 120
    assert build_by_recurrence(inst, T).f == build_closed_form(inst, T).f


@pytest.mark.parametrize("name", ["I1", "I2"])
def test_family_invariants(name, request):
    inst = request.getfixturevalue(name)
    fam = build_family(inst, 60)
    assert linear_independence_witness(fam) != 0
    for j, f in enumerate(fam.f):
        assert ord_inf(f) == j + 1
        A, tail = apply_L(inst, f)
        assert all(c == 0 for c in tail.coeffs)
        assert A.degree <= inst.m - j - 2
        # leading form of L.f_j
        assert A == Poly.monomial(inst.m - j - 2, inst.b_top + j + 1)


def test_L_f_explicit_values(I2):
    fam = build_family(I2, 30)
    assert apply_L(I2, fam.f[0])[0] == F(107, 60) * z
    assert apply_L(I2, fam.f[1])[0] == F(167, 60)


def test_apply_L_matches_generic_operator(I2):
    f = build_family(I2, 30).f[0]
    poly, tail = operator_L(I2).apply_series(f)
    mine_poly, mine_tail = apply_L(I2, f)
    assert poly == mine_poly
    n = min(tail.T, mine_tail.T)
    assert tail.coeffs[:n] == mine_tail.coeffs[:n]


def test_perturbation_shows_in_tail(I1):
    f = build_family(I1, 20).f[0]
    cs = list(f.coeffs)
    cs[7] += 1
    _, tail = apply_L(I1, LaurentSeries(cs))
    # f_7 enters the K-th tail coefficient through a_i (K+i) f_{K+i-1} and b_j f_{K+j}
    nonzero = [K for K, c in enumerate(tail.coeffs) if c]
    assert nonzero == [6, 7]
    assert tail.coeffs[6] == I1.a.coeff(2) * 8 + I1.b.coeff(1)
    assert tail.coeffs[7] == I1.a.coeff(1) * 8 + I1.b.coeff(0)


def test_b_top_minus_one_is_binomial_product():
    inst = Instance.from_roots([0, 1], ["-1/2", "-1/2"])
    assert inst.b_top == -1
    fam = build_family(inst, 40)
    assert fam.f[0] == binomial_series_model(inst, 40)


def test_hypothesis_violation_aborts():
    from lauricella_pade import HypothesisViolation

    with pytest.raises(HypothesisViolation):
        build_family(Instance.from_roots([0, 1], ["-3/2", "-1/2"]), 10)


# -- phi_f ------------------------------------------------------------------------


def test_phi_f_basics(I1):
    f = build_family(I1, 10).f[0]
    for k in range(10):
        assert phi_f(f, Poly.monomial(k)) == f.coeffs[k]
    assert phi_f(f, Poly()) == 0
    with pytest.raises(ValueError):
        phi_f(f, Poly.monomial(10))


@pytest.mark.parametrize("name", ["I1", "I2"])
def test_phi_kills_adjoint_image(name, request):
    inst = request.getfixturevalue(name)
    fam = build_family(inst, 50)
    Lstar = adjoint(operator_L(inst))
    for f in fam.f:
        for k in range(50 - inst.m):
            assert phi_f(f, Lstar.apply(Poly.monomial(k))) == 0


def test_phi_bivariate_examples(I1):
    f = build_family(I1, 10).f[0]
    assert phi_f_bivariate(f, Poly([1])).is_zero()
    assert phi_f_bivariate(f, z**2) == f.coeffs[0] * z + f.coeffs[1]


@given(st.lists(rationals, min_size=1, max_size=8))
def test_phi_bivariate_cancels_polynomial_part(pc):
    from lauricella_pade import instance_I2

    f = build_family(instance_I2(), 20).f[1]
    P = Poly(pc)
    Q = phi_f_bivariate(f, P)
    poly, tail = f.mul_poly(P)
    assert poly == Q  # P f - Q has no polynomial part
    if not P.is_zero():
        assert Q.degree <= max(P.degree - 1, 0) or Q.is_zero()


# -- Jordan-Pochhammer ------------------------------------------------------------------


@pytest.mark.parametrize("name", ["I1", "I2"])
def test_jordan_pochhammer(name, request):
    inst = request.getfixturevalue(name)
    jp = jp_expand(inst)
    assert jp.equal
    assert jp.composed.coeff(inst.m) == inst.a
    assert jp.composed.coeff(0) == -inst.b.derivative(inst.m - 1)


def test_jordan_pochhammer_I1_table(I1):
    # D o (a D - b) = a D^2 + (a' - b) D - b'
    jp = jp_expand(I1)
    assert jp.composed.coeffs == (Poly([-1]), z - F(1, 2), z**2 - z)
    assert len(jp.table()) == 3
