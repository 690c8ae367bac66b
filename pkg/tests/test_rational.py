from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slope_lab.rational import fmt, to_fraction


@pytest.mark.parametrize("value, text", [
    (Fraction(3, 6), "1/2"), (Fraction(-4, 2), "-2"), (0, "0"), (Fraction(5, -15), "-1/3"),
])
def test_fmt_lowest_terms(value, text):
    assert fmt(value) == text


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", True, None, "x/2"])
def test_inexact_or_garbage_rejected(bad):
    with pytest.raises((TypeError, ValueError)):
        to_fraction(bad)


@given(st.fractions())
def test_round_trip(x):
    assert to_fraction(fmt(x)) == x
    assert fmt(to_fraction(fmt(x))) == fmt(x)
