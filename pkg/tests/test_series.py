from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropcount.errors import PrecisionError
from tropcount.series import INF, TSeries, parse_series

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@st.composite
def series(draw, e=2):
    terms = draw(st.dictionaries(st.integers(-4, 8), coeff, max_size=5))
    prec = draw(st.sampled_from([INF, 12, 15]))
    return TSeries(terms, prec, e)


def test_exact_arithmetic():
    t = TSeries.pi_power(1)
    one_minus_t = 1 - t
    inv = one_minus_t.invert(prec=6)
    assert inv == TSeries({k: 1 for k in range(6)}, 6)
    assert (one_minus_t * inv).agrees(1, 6)
    assert (t ** 3).valuation() == 3
    assert (t ** -2) == TSeries.monomial(1, -2)
    half = TSeries.pi_power(1, e=2)
    assert half.valuation() == Fraction(1, 2)
    assert (half * half).valuation() == 1
    assert str(TSeries({0: 2, 3: Fraction(-1, 2)}, 5, 2)) == "2*t^(0/2) + -1/2*t^(3/2) + O(t^(5/2))"


def test_precision_tracking():
    a = TSeries({0: 1, 1: 1}, 4)
    b = TSeries({2: 1}, 3)
    assert (a + b).prec == 3
    assert (a * b).prec == min(4 + 2, 3 + 0)
    assert (a * TSeries.pi_power(2)).prec == 6
    with pytest.raises(PrecisionError):
        a.coefficient(4)
    with pytest.raises(PrecisionError):
        TSeries({}, 5).invert()
    with pytest.raises(PrecisionError):
        TSeries({0: 1, 1: 1}).invert()
    with pytest.raises(PrecisionError):
        a.agrees(b, 5)


def test_mixed_ramification_rejected():
    with pytest.raises(ValueError):
        TSeries.pi_power(1, 2) + TSeries.pi_power(1, 3)


@settings(max_examples=80, deadline=None)
@given(series(), series())
def test_valuation_is_ultrametric_and_multiplicative(a, b):
    s = a + b
    if not s.is_zero():
        assert s.valuation() >= min(a.valuation(), b.valuation())
    if a.valuation() != b.valuation() and not (a.is_zero() or b.is_zero()):
        if min(a.order, b.order) < s.prec:
            assert s.valuation() == min(a.valuation(), b.valuation())
    p = a * b
    if not (a.is_zero() or b.is_zero()) and a.order + b.order < p.prec:
        assert p.valuation() == a.valuation() + b.valuation()


@settings(max_examples=80, deadline=None)
@given(series())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(PrecisionError):
            a.invert(prec=10)
        return
    inv = a.invert(prec=10)
    prod = a * inv
    upto = min(prod.prec, 10 + a.order)
    assert prod.agrees(1, upto)


@settings(max_examples=80, deadline=None)
@given(series(e=3))
def test_string_round_trip(a):
    b = parse_series(str(a))
    assert b.coeffs == a.coeffs and b.prec == a.prec
    if a.coeffs or a.prec != INF:
        assert b.e == a.e
