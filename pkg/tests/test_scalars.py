"""Exact arithmetic in the multi-quadratic tower."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realforms.errors import FieldExtensionUnsupported
from realforms.scalars import C_I, C_ONE, ComplexScalar, FieldScalar, Rational


def fs(text):
    return FieldScalar.parse(text)


# -- construction and parsing ------------------------------------------------


def test_rational_construction():
    assert FieldScalar(3).is_rational()
    assert FieldScalar(Rational(2, 4)).rational_value() == Rational(1, 2)
    assert FieldScalar(0) == 0
    assert FieldScalar(5) == 5


def test_parse_round_trip():
    samples = ["0", "1", "-3/4", "sqrt(2)", "1/2 + 3*sqrt(5)", "sqrt(6)/2 - 7"]
    for text in samples:
        v = fs(text)
        assert fs(str(v)) == v


def test_radicands_reduced_to_squarefree():
    assert fs("sqrt(8)") == fs("2*sqrt(2)")
    assert fs("sqrt(9)") == 3
    assert fs("sqrt(12)+sqrt(3)") == fs("3*sqrt(3)")


def test_complex_parse_round_trip():
    samples = ["i", "2-3*i", "sqrt(2)*i + 1/2", "-i*sqrt(3)"]
    for text in samples:
        v = ComplexScalar.parse(text)
        assert ComplexScalar.parse(str(v)) == v


# -- field operations --------------------------------------------------------


def test_product_of_distinct_roots():
    assert fs("sqrt(2)") * fs("sqrt(3)") == fs("sqrt(6)")
    assert fs("sqrt(2)") * fs("sqrt(2)") == 2


def test_inverse_rationalizes():
    v = fs("1 + sqrt(2)")
    assert v * v.inverse() == 1
    w = fs("sqrt(2) + sqrt(3)")
    assert w * w.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        FieldScalar(0).inverse()


def test_power():
    v = fs("1 + sqrt(5)")
    assert v ** 3 == v * v * v
    assert v ** 0 == 1


def test_sign_is_exact():
    # 3*sqrt(2) - 2*sqrt(3) is about 0.778e-1, far too close for float-free guessing
    assert fs("3*sqrt(2) - 2*sqrt(3)").sign() == 1
    assert fs("2*sqrt(3) - 3*sqrt(2)").sign() == -1
    assert fs("sqrt(2) + sqrt(3) - sqrt(5) - 1/1000").sign() == 1
    assert FieldScalar(0).sign() == 0


def test_comparisons():
    assert fs("sqrt(2)") < fs("sqrt(3)")
    assert fs("7/5") < fs("sqrt(2)") < fs("3/2")


def test_sqrt_of_rational():
    assert fs("2").sqrt() == fs("sqrt(2)")
    assert fs("9/4").sqrt() == fs("3/2")
    assert fs("1/2").sqrt() * fs("1/2").sqrt() == fs("1/2")


def test_sqrt_rejects_what_the_tower_cannot_hold():
    with pytest.raises(FieldExtensionUnsupported):
        fs("sqrt(2)").sqrt()  # nested radical
    with pytest.raises(ValueError):
        fs("-4").sqrt()  # not real


def test_complex_inverse_and_conjugate():
    z = ComplexScalar.parse("1/2 + sqrt(3)*i")
    assert z * z.inverse() == C_ONE
    assert z * z.conjugate() == ComplexScalar(z.re * z.re + z.im * z.im)
    assert C_I * C_I == ComplexScalar(-1)


# -- axioms on random tower elements -----------------------------------------

rationals = st.builds(
    Rational,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=12),
)


@st.composite
def field_scalars(draw):
    a = draw(rationals)
    b = draw(rationals)
    c = draw(rationals)
    d = draw(st.sampled_from([2, 3, 5, 6]))
    e = draw(st.sampled_from([2, 3, 5, 6]))
    return (
        FieldScalar(a)
        + FieldScalar.root_term(d, b)
        + FieldScalar.root_term(e, c)
    )


@given(field_scalars(), field_scalars(), field_scalars())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@given(field_scalars())
@settings(max_examples=60, deadline=None)
def test_inverse_axiom(x):
    if x:
        assert x * x.inverse() == 1
    assert x + (-x) == 0


@given(field_scalars())
@settings(max_examples=60, deadline=None)
def test_sign_consistency(x):
    s = x.sign()
    assert s in (-1, 0, 1)
    assert (s == 0) == (not x)
    assert (-x).sign() == -s
    if s:
        assert (x * x).sign() == 1
