from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lauricella_pade import HypothesisViolation, Instance, InstanceError
from lauricella_pade.exact import Poly
from lauricella_pade.solutions import check_sum_of_exponents

from conftest import rationals


def test_I1_data(I1):
    z = Poly.z()
    assert I1.a == z**2 - z
    assert I1.b == z - F(1, 2)
    assert I1.s == (F(1, 2), F(1, 2))
    assert (I1.m, I1.w, I1.b_top) == (2, 0, 1)
    assert I1.valid


def test_I2_data(I2):
    assert I2.a == Poly.from_roots([0, 1, -1])
    assert I2.w == 1
    assert I2.b_top == F(1, 3) + F(1, 4) + F(1, 5)
    assert I2.valid


def test_from_coeffs_matches_from_roots(I1):
    again = Instance.from_coeffs([0, -1, 1], ["-1/2", 1])
    assert again == I1
    assert again.fingerprint() == I1.fingerprint()


@pytest.mark.parametrize(
    "a, b, msg",
    [
        ([1, 0, 1], [0, 1], "does not split"),
        ([0, 2], [1], "m >= 2"),
        ([0, 0, 2], [1], "monic"),
        ([0, 0, 1], [0, 0, 1], "deg b"),
    ],
)
def test_from_coeffs_rejects(a, b, msg):
    with pytest.raises(InstanceError, match=msg):
        Instance.from_coeffs(a, b)


def test_double_root_fails_first():
    inst = Instance.from_coeffs([0, 0, 1], [0, 1])
    assert not inst.flags["first"]
    assert "repeated" in inst.witnesses["first"]
    assert inst.s == (None, None)
    assert not inst.flags["second"]


def test_negative_integer_exponent_fails_second():
    inst = Instance.from_roots([0, 1], [-2, "1/2"])
    assert not inst.flags["second"]
    assert inst.flags["third"]


def test_third():
    assert not Instance.from_roots([0, 1], ["-3/2", "-1/2"]).flags["third"]  # b_top = -2
    assert Instance.from_roots([0, 1], ["-1/2", "-1/2"]).flags["third"]  # b_top = -1 allowed
    with pytest.raises(HypothesisViolation):
        Instance.from_roots([0, 1], ["-3/2", "-1/2"]).require("third")


distinct_roots = st.lists(rationals, min_size=2, max_size=4, unique=True)


@given(distinct_roots, st.data())
def test_sum_of_exponents(alpha, data):
    s = data.draw(st.lists(rationals, min_size=len(alpha), max_size=len(alpha)))
    inst = Instance.from_roots(alpha, s)
    assert inst.s == tuple(s)  # b(alpha_i)/a'(alpha_i) recovers the input
    assert check_sum_of_exponents(inst)
