from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slope_lab import wps_ring as W
from slope_lab.errors import CapExceeded, IndexOutOfRange, InvalidWeights

weights = st.lists(st.integers(1, 12), min_size=2, max_size=5)


@pytest.mark.parametrize("a, expected", [
    ((1, 1, 8, 12), True), ((2, 2, 3), False), ((1,) * 5, True), ((1, 2, 4), False),
])
def test_well_formed(a, expected):
    assert W.is_well_formed(a) is expected


@pytest.mark.parametrize("a, m, expected", [
    ((1, 1, 8, 12), 2, 3), ((3, 5), 1, 0), ((1, 2, 3), 6, 7), ((1, 1), 7, 8),
    ((1, 1, 8, 12), -1, 0), ((2, 3), 0, 1),
])
def test_graded_dim_pins(a, m, expected):
    assert W.graded_dim(a, m) == expected
    assert W.graded_dim_oracle(a, m) == expected


def test_graded_dim_oracle_pin_from_mixed_weights():
    assert W.graded_dim((1, 1, 2, 5), 7) == W.graded_dim_oracle((1, 1, 2, 5), 7)


@given(st.integers(0, 300))
def test_two_ones(m):
    assert W.graded_dim((1, 1), m) == m + 1


@settings(max_examples=150)
@given(weights, st.integers(0, 120))
def test_dp_matches_oracle(a, m):
    assert W.graded_dim(a, m) == W.graded_dim_oracle(a, m)


@settings(max_examples=100)
@given(weights, st.integers(1, 10), st.integers(0, 80))
def test_adding_a_weight_convolves(a, w, m):
    # S(a, w)_m = sum_k S(a)_(m - k w)
    assert W.graded_dim(a + [w], m) == sum(W.graded_dim(a, m - k * w)
                                           for k in range(m // w + 1))


def test_oracle_cap():
    with pytest.raises(CapExceeded):
        W.graded_dim_oracle((1, 1), 10 ** 4 + 1)


@pytest.mark.parametrize("a, lcm, top, canon", [
    ((1, 1, 8, 12), 24, Fraction(1, 96), -22), ((1, 1, 1), 1, 1, -3),
    ((1, 1, 3, 3), 3, Fraction(1, 9), -8), ((1, 1, 2, 5), 10, Fraction(1, 10), -9),
    ((1, 1), 1, 1, -2), ((1, 1, 9, 6), 18, Fraction(1, 54), -17),
])
def test_index_top_and_canonical(a, lcm, top, canon):
    assert W.cartier_index(a) == lcm
    assert W.taut_top_self_intersection(a) == top
    assert W.canonical_coefficient(a) == canon


@pytest.mark.parametrize("a, m, i, expected", [
    ((1, 1), -2, 1, 1), ((1, 1, 8, 12), 2, 1, 0), ((1, 1, 8, 12), 2, 0, 3),
    ((1, 1), 3, 1, 0), ((1, 1, 1), -3, 2, 1), ((1, 1, 1), -4, 2, 3),
])
def test_cohomology(a, m, i, expected):
    assert W.wps_cohomology_dim(a, m, i) == expected


@settings(max_examples=80)
@given(weights, st.integers(-40, 40))
def test_serre_duality(a, m):
    n = len(a) - 1
    assert W.wps_cohomology_dim(a, m, n) == W.graded_dim(a, -m - sum(a))


def test_cohomology_index_range():
    with pytest.raises(IndexOutOfRange):
        W.wps_cohomology_dim((1, 1, 2), 0, 3)


@pytest.mark.parametrize("bad", [(1,), (0, 1), (-1, 2), (1.5, 2)])
def test_invalid_weights(bad):
    with pytest.raises(InvalidWeights):
        W.WeightVector(bad)
