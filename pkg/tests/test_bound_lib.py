import pytest
from hypothesis import given
from hypothesis import strategies as st

from slope_lab import bound_lib as BL
from slope_lab.errors import (AmbientTooSmall, DimensionTooSmall, GapOne, InvalidCodim,
                              TooFewSections)


@pytest.mark.parametrize("d, N, A, eps", [(7, 7, 1, 0), (10, 5, 2, 1), (5, 2, 4, 0)])
def test_castelnuovo_data(d, N, A, eps):
    c = BL.castelnuovo_data(d, N)
    assert (c.A, c.eps) == (A, eps)


@pytest.mark.parametrize("d, N, bound", [(10, 5, 6), (7, 7, 0), (5, 2, 6), (4, 2, 3)])
def test_castelnuovo_bound(d, N, bound):
    assert BL.castelnuovo_genus_bound(d, N) == bound


@given(st.integers(2, 60), st.integers(2, 20))
def test_castelnuovo_plane_curves(d, _):
    # in the plane the bound is the genus of a smooth curve of degree d
    assert BL.castelnuovo_genus_bound(d, 2) == (d - 1) * (d - 2) // 2


def test_castelnuovo_needs_ambient():
    with pytest.raises(AmbientTooSmall):
        BL.castelnuovo_data(3, 1)


def test_curve_bounds():
    assert BL.min_degree_birational_subcanonical(9, 1) == 16
    assert BL.min_degree_birational_subcanonical(7, 0) == 7
    assert BL.min_degree_birational_subcanonical(2, 7) == 2
    assert BL.harris_bound(2, 1, 5) == 8
    assert BL.harris_bound(3, 0, 4) == 2
    with pytest.raises(TooFewSections):
        BL.harris_bound(3, 0, 3)


@given(st.integers(0, 15), st.integers(2, 80))
def test_harris_in_dimension_one(p, h0):
    assert BL.harris_bound(1, p, h0) == BL.min_degree_birational_subcanonical(h0, p)


def test_noether_family():
    assert BL.noether_I_bound(3, 10) == 14
    assert BL.noether_I_bound(0, 1) == 2
    assert BL.noether_I_bound(2, 6) == 8
    assert BL.noether_Ibis_bound(0, 1) == 1
    assert BL.noether_Ibis_bound(3, 9) == 6
    assert BL.noether_II_bound(5, True) == 8
    assert BL.noether_II_bound(1, False) == 0
    assert BL.noether_II_bound(4, False) == 3
    assert BL.noether_III_bound(5, 0, 3, "ge2") == 8
    assert BL.noether_III_bound(0, 7, 2, "eq0") == 10
    assert BL.noether_III_bound(5, 7, 2, 4) == 8
    assert BL.noether_III_bound(5, 7, 2, "0") == 10
    with pytest.raises(GapOne):
        BL.noether_III_bound(5, 7, 2, 1)
    with pytest.raises(DimensionTooSmall):
        BL.noether_III_bound(5, 7, 1, "ge2")


def test_castelnuovo_type_bounds():
    assert BL.castelnuovo3_bound(4, 3, 2) == 2
    assert BL.castelnuovo2_bound(3, 0, 1, 4) == 12
    assert BL.castelnuovo3_bound(2, 1, 5) == 11
    with pytest.raises(InvalidCodim):
        BL.castelnuovo2_bound(3, 0, 3, 4)
    assert BL.clifford_bound(1) == 0
    assert BL.clifford_bound(3) == 4
    with pytest.raises(TooFewSections):
        BL.clifford_bound(0)
