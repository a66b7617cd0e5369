import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lauricella_pade import Instance
from lauricella_pade.exact import den
from lauricella_pade.exact.rational import pochhammer
from lauricella_pade.heights import (
    INF,
    A_v,
    F_v,
    LogLinear,
    Place,
    U_v,
    V_threshold,
    V_v,
    abs_v_exceeds_one,
    convergence_condition,
    d_n,
    d_n_growth_constant,
    d_n_sequence,
    height,
    height_v,
    log_abs_v,
    log_mu_alpha,
    log_mu_v,
    measure,
    mu_n,
    product_formula_sum,
)

L = LogLinear.log
P2, P5 = Place(2), Place(5)

nonneg_b = st.builds(F, st.integers(-9, 60), st.integers(1, 30)).filter(lambda b: not (b.denominator == 1 and b <= -1))
small_s = st.builds(F, st.integers(-40, 40), st.integers(1, 30))


# -- places and heights --------------------------------------------------------------


def test_place_parse():
    assert Place.parse("inf") == INF and INF.archimedean
    assert Place.parse(5) == P5 and str(P5) == "5"
    for bad in ("4", "x", 1, "-3"):
        with pytest.raises(ValueError):
            Place.parse(bad)


def test_den_examples():
    assert den([F(1, 2), F(1, 3)]) == 6
    assert den(2) == 1
    assert den([F(1, 2), F(3, 4)]) == 4


def test_height_examples():
    assert height(F(1, 2)) == L(2)
    assert height(F(3, 2)) == L(3)
    assert height_v(F(3, 2), INF) == L(F(3, 2))
    assert height_v(F(3, 2), P2) == L(2)
    for v in (INF, P2, P5):
        assert height_v([0, 0], v).is_zero()


@given(st.builds(F, st.integers(1, 10**6), st.integers(1, 10**6)).map(lambda x: x * (-1) ** int(x.numerator)))
def test_product_formula(x):
    assert product_formula_sum(x).is_zero()


@given(st.builds(F, st.integers(-500, 500), st.integers(1, 500)))
def test_global_height_formula(x):
    assert height(x) == L(max(abs(x.numerator), x.denominator)) if x else height(x).is_zero()


def test_loglinear_sign_is_decided():
    assert (L(2) * 10 - L(1000)).sign() > 0  # 1024 > 1000
    assert (L(3) - F(10986, 10000)).sign() > 0  # log 3 = 1.09861...
    assert LogLinear().sign() == 0
    assert str(L(F(4, 5))) == "2*log(2) - log(5)"


# -- mu, mu_n, d_n -------------------------------------------------------------------------


def test_mu_alpha():
    assert log_mu_alpha(F(1, 2)) == L(4)
    assert log_mu_alpha(3).is_zero()
    assert log_mu_alpha(F(1, 6)) == L(12) + L(3) / 2


def test_mu_n_examples():
    assert mu_n(F(1, 2), 2) == 16
    assert mu_n(5, 7) == 1
    # the other reading of the exponent, floor(n/q - 1), would give 4 here and fail integrality
    assert mu_n(F(1, 2), 2) * pochhammer(F(1, 2), 2) / 2 == 6


@given(small_s, st.integers(0, 50))
def test_mu_n_integrality(s, n):
    m = mu_n(s, n)
    for k in range(n + 1):
        assert (m * pochhammer(s, k) / math.factorial(k)).denominator == 1


@given(small_s, st.integers(0, 30), st.integers(-10, 10))
def test_mu_n_shift_invariant(s, n, k):
    assert mu_n(s + k, n) == mu_n(s, n)


@given(small_s, st.integers(0, 20), st.integers(0, 20))
def test_mu_n_divisibility(s, n1, n2):
    assert mu_n(s, n1 + n2) % (mu_n(s, n1) * mu_n(s, n2)) == 0


def test_d_n_examples():
    assert d_n(0, 2) == 6
    assert d_n(F(1, 2), 0) == 3
    with pytest.raises(ValueError):
        d_n(-2, 3)
    assert d_n_sequence(F(1, 3), 6) == [d_n(F(1, 3), k) for k in range(7)]


@given(nonneg_b, st.integers(0, 30), st.integers(0, 30))
def test_d_n_monotone_divisibility(b, n, extra):
    assert d_n(b, n + extra) % d_n(b, n) == 0


@given(nonneg_b, st.integers(2, 3), st.integers(0, 8), st.integers(0, 8))
def test_d_n_block_divisibility(b, m, n, k):
    lhs = d_n(b, m * n + k + m)
    rhs = d_n(b, m * (n + 1)) * d_n(b + m * (n + 1), k)
    assert rhs % lhs == 0


def test_d_n_growth():
    seq = d_n_sequence(1, 10_000)
    assert abs(math.log(seq[-1]) / 10_000 - 1) < 0.1
    assert d_n_growth_constant(1) == 1
    assert d_n_growth_constant(F(1, 2)) == 2  # 2/phi(2) * 1


@pytest.mark.parametrize("b, p", [(F(1, 2), 3), (F(1, 2), 5), (F(2, 3), 2), (1, 7)])
def test_d_n_p_part_is_subexponential(b, p):
    d = d_n(b, 10_000)
    vp = 0
    while d % p == 0:
        d //= p
        vp += 1
    assert vp * math.log(p) / 10_000 < 0.01


def test_mu_v():
    assert log_mu_v(F(1, 2), INF, 10**5).is_zero()
    assert log_mu_v(F(1, 2), P2, F(1, 2)) == L(F(1, 4))
    assert log_mu_v(F(1, 2), P2, 2).is_zero()  # |2|_2 <= 1
    assert log_mu_v(3, P5, F(1, 5)) == -L(5) / 4  # den 1
    assert log_mu_v(F(1, 2), P5, F(1, 125)) == -L(5) / 4


# -- V, A, U, F -----------------------------------------------------------------------------


def test_V_examples(I1):
    assert V_v(I1, 10**4, INF) == L(10**4) - L(4) * 6 - 1
    assert V_v(I1, 10**4, INF).sign() < 0
    assert V_v(I1, 10**5, INF).sign() > 0
    assert V_v(I1, 1, INF).sign() < 0
    assert abs(float(V_v(I1, 10**5, INF)) - 2.195) < 1e-3


def test_V_integer_b_top_term():
    inst = Instance.from_roots([0, 1], ["1/2", "1/2"])
    base = V_v(inst, 7, INF) + (inst.m - 1) * d_n_growth_constant(inst.b_top)
    assert base - V_v(inst, 7, INF) == LogLinear.const_(1)


def test_V_threshold(I1):
    t = V_threshold(I1)
    assert t == 11135
    assert V_v(I1, t, INF).sign() > 0 and V_v(I1, t - 1, INF).sign() < 0


def test_A_U_archimedean(I1, I2):
    assert A_v(I1, 10**5, INF) == L(10**5) - L(2) * 2
    assert U_v(I1, 10**5, INF) == L(10**5)
    beta = F(7, 3)
    h = height_v(I2.alpha, INF)
    assert A_v(I2, beta, INF) == L(beta) - sum((height_v(a, INF) for a in I2.alpha), LogLinear()) - h * 3 - L(2) * 3


def test_A_U_5adic(I1):
    beta = F(1, 125)
    assert A_v(I1, beta, P5) == L(25)
    assert U_v(I1, beta, P5) == L(25)
    assert V_v(I1, F(1, 5**6), P5).sign() > 0


def test_F_v(I1):
    assert F_v(I1, 10**5, Place(7), 1).is_zero()
    assert F_v(I1, 10**5, INF, 3) == L(10**5) * 3 + L(4) * 2
    assert F_v(I1, 10**5, INF, 3, log4_per_step=True) == L(10**5) * 3 + L(4) * 6


def test_F_over_n_tends_to_U_at_infinity(I1, I2):
    for inst, beta in ((I1, 10**5), (I2, F(50, 3))):
        n = 1000
        diff = F_v(inst, beta, INF, n) / n - U_v(inst, beta, INF)
        assert abs(float(diff)) <= inst.m * math.log(4) / n + 1e-12


def test_F_over_n_at_finite_place(I1):
    # at p = 5 the mu_v terms enter U with the opposite sign to their role in F
    beta, n = F(1, 125), 1000
    mu_terms = sum((log_mu_v(s, P5, beta) for s in I1.s), LogLinear()) * I1.m
    diff = F_v(I1, beta, P5, n) / n - (U_v(I1, beta, P5) - mu_terms)
    assert abs(float(diff)) < 0.02


# -- measure reports -------------------------------------------------------------------------


def test_measure_I1(I1):
    rep = measure(I1, 10**5, INF)
    assert rep.applicable and rep.V_positive and rep.convergence_ok
    assert abs(float(rep.mu) - 19.7157) < 1e-3
    assert abs(float(rep.log_C) + 35.305) < 1e-2
    assert 0 < rep.C.lower and rep.C.upper < 1
    assert rep.mu.width < F(1, 2**100)


def test_measure_not_applicable(I1):
    rep = measure(I1, 10**4, INF)
    assert not rep.applicable and rep.mu is None
    rep = measure(I1, 10**5, INF, epsilon=3)
    assert not rep.applicable


def test_mu_decreases_towards_four(I1):
    mus = [float(measure(I1, b, INF).mu) for b in (10**5, 10**6, 10**8, 10**12, 10**100)]
    assert mus == sorted(mus, reverse=True)
    assert abs(mus[-1] - 4) < 0.5


def test_5adic_convergence(I1):
    ok, detail = convergence_condition(I1, F(1, 125), P5)
    assert ok
    # |beta|_5 = 125 exceeds the literal bound sqrt(5)
    assert abs_v_exceeds_one(F(1, 125), P5)
    assert log_abs_v(F(1, 125), P5) == L(125)


def test_measure_json(I1):
    import json

    doc = json.loads(measure(I1, 10**5, INF).to_json())
    assert doc["A"]["expr"] == "3*log(2) + 5*log(5)"
    lo, hi = (float(x) for x in doc["mu"]["interval"])
    assert lo <= hi and abs(lo - 19.7157) < 1e-3
