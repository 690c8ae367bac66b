import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slope_lab import chow
from slope_lab import families as F
from slope_lab import hn_engine as HN
from slope_lab.errors import (AssumptionViolated, BranchTooSmall, NotNef, NotWellFormed,
                              RankRange, WrongRank)

B = F.BundleOnCurve


def test_sym_power():
    assert F.sym_power_degree(B(3, 5, 1), 2) == (6, 20)
    assert F.sym_power_degree(B(4, 7, 1), 1) == (4, 7)


@given(st.lists(st.fractions(-5, 5, max_denominator=3), min_size=1, max_size=4),
       st.integers(1, 4))
def test_sym_power_split_matches(degs, k):
    E = B(len(degs), sum(degs), min(degs))
    assert F.sym_power_degree(E, k) == F.sym_power_degree_split(degs, k)


def test_pn():
    res = F.family_pn(B(2, 1, 0))
    assert (res.invariants.top_self, res.invariants.push_deg) == (1, 1)
    assert res.slope == res.bs == 1
    with pytest.raises(NotNef):
        F.family_pn(B(3, 1, -1))


def test_veronese():
    res = F.family_veronese(B(3, 1, 0))
    assert (res.invariants.top_self, res.invariants.push_deg) == (8, 4)
    assert F.bundle_intersection(3, 1, [(2, 0)] * 3) == 8
    with pytest.raises(WrongRank):
        F.family_veronese(B(4, 4, 1))


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(1, 30), st.integers(-20, 20))
def test_quadric_slope(n, degE, degA):
    E = B(n + 2, degE, 0)
    res = F.family_quadric(E, degA)
    assert res.slope == 2 + Fraction(degA, degE)
    assert res.bs == 2 - Fraction(2, n + 2)


def test_quadric_f_positivity_boundary():
    E = B(4, 8, 2)
    rep = F.check_f_positive(F.family_quadric(E, -4).invariants)
    assert rep.holds and rep.slack == 0


def test_low_rank_quadrics():
    r3 = F.family_quadric_low_rank(2, 3, 1)
    assert r3.slope == Fraction(4, 3) and r3.bs == Fraction(3, 2)
    full = F.family_quadric_low_rank(2, 4, 1)
    assert full.slope == full.bs
    assert HN.miyaoka_nef_check(0, 1, 0)
    with pytest.raises(RankRange):
        F.family_quadric_low_rank(2, 5, 1)


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(0, 6))
def test_scroll_equal_degrees(d, n, a0):
    s = F.ScrollFamily(B(2, 4, 1), (d,) * n, (a0,) + (0,) * (n - 1))
    res = F.family_scroll(s)
    assert res.slope == res.bs == Fraction((n + 1) * d, d + 1)


def test_scroll_extreme_and_limit():
    d, n = 3, 3
    res = F.family_scroll(F.ScrollFamily(B(2, 4, 2), (d, 0, 0), (1, 0, 0)))
    assert res.slope == Fraction(2 * d, d + 1)
    # as a_1 grows, the slope tends to the ratio of the a_1-coefficients
    ds = (3, 2, 1)
    big = 10 ** 9
    s = F.family_scroll(F.ScrollFamily(B(2, 4, 1), ds, (big, 0, 0))).slope
    target = Fraction(ds[0] + sum(ds), ds[0] + 1)
    assert abs(s - target) < Fraction(1, 10 ** 6)


def test_scroll_rejects_negative_twist():
    with pytest.raises(AssumptionViolated):
        F.ScrollFamily(B(2, 4, 1), (2,), (-3,))


def test_double_covers():
    pn = F.family_pn(B(3, 5, 1))
    assert F.family_double_cover(pn, m=3).slope == 2
    ver = F.family_veronese(B(3, 3, 1))
    assert F.family_double_cover(ver, m=3).slope == 4
    sc = F.family_scroll(F.ScrollFamily(B(2, 4, 1), (2, 1), (1, 0)))
    dc = F.family_double_cover(sc, alpha=2, beta=1)
    assert dc.slope == 2 * sc.slope
    assert dc.invariants.flags.birational is False
    with pytest.raises(BranchTooSmall):
        F.family_double_cover(pn, m=1)


# ---------------------------------------------------------------------------
# Chow ring oracle


def test_fiber_class_squares_to_zero():
    E = B(2, 4, 1)
    assert F.tower_intersection(E, [(1, 0), (2, 1)], 0, 0, 1) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_tower_matches_scroll_closed_form(seed):
    rng = random.Random(seed)
    mu = rng.randint(0, 3)
    E = B(2, 2 * mu + rng.randint(0, 4), mu)
    d = sorted((rng.randint(0, 3) for _ in range(rng.randint(1, 3))), reverse=True)
    a = [-di * mu + rng.randint(0, 3) for di in d]
    s = F.ScrollFamily(E, d, a)
    assert F.tower_intersection(E, list(zip(d, a)), 1, 0, 0) == F.scroll_top_self(s)


def test_split_chern_classes():
    T = chow.CurveRing()
    cs = chow.chern_of_split(T, [T.point(2), T.point(3)])
    assert cs[0] == T.point(5) and cs[1] == T.zero()


def test_scroll_fiber_model():
    # on P(O(1) + O(0)) over P^1 (the quadric cone blown up), H^2 = 1, H f = 1, f^2 = 0
    model = F.scroll_fiber_model((1, 0), [(0, 1), (1, 0)])
    assert (model.value((1, 1)), model.value((1, 2)), model.value((2, 2))) == (0, 1, 1)


# ---------------------------------------------------------------------------
# weighted projective hypersurfaces


def test_example_iv():
    res = F.example_iv()
    assert res.slope == Fraction(37, 36)
    assert res.extras["relative_canonical"] is True
    assert res.invariants.h0 == 3


def test_example_iii_and_i():
    assert F.example_iii_slope(2) == Fraction(31, 20)
    for n in range(1, 6):
        assert F.example_iii(n).slope == F.example_iii_slope(n)
    assert F.example_iii(1).inputs["strict"] is False
    for n, m, alpha in [(1, 2, 3), (2, 3, 2), (3, 1, 2)]:
        assert F.example_i(n, m, alpha).slope == F.example_i_slope(n, m, alpha)
        assert F.example_i_slope(n, m, alpha) == Fraction((n + 1) * m * alpha + 1,
                                                          2 * alpha ** n)


def test_special_slope_formula():
    fam = F.WpsHypersurfaceFamily([1, 1, 3], 6, 1, 1, 1)
    assert F.wps_special_slope(fam) == F.wps_family(fam).slope
    with pytest.raises(AssumptionViolated):
        F.wps_special_slope(F.WpsHypersurfaceFamily([1, 1, 8, 12], 24, 2, 1, 1))


@pytest.mark.parametrize("n, a, d, slope", [
    (1, (1, 1, 3), 6, Fraction(13, 6)), (2, (1, 1, 9, 6), 18, Fraction(55, 108)),
])
def test_sylvester(n, a, d, slope):
    syl = F.sylvester_family(n)
    assert tuple(syl.family.a) == a and syl.family.d == d
    assert syl.slope == slope == F.wps_family(syl.family).slope


def test_sylvester_small_slopes():
    for n in range(2, 7):
        syl = F.sylvester_family(n)
        assert 1 + syl.family.a.weight_sum == syl.family.d
        assert syl.slope < 1


def test_example_iv_bis():
    bis = F.example_iv_bis(2, 3, 5)
    assert bis.slope == Fraction(95, 36) and bis.threshold == Fraction(8, 3)
    assert bis.threshold - bis.slope == Fraction(1, 36)
    assert F.example_iv_bis_family(2, 3, 5).slope == bis.slope


def test_wps_guards():
    with pytest.raises(NotWellFormed):
        F.WpsHypersurfaceFamily([2, 2, 3], 6, 1, 1, 1)
    with pytest.raises(AssumptionViolated):
        F.WpsHypersurfaceFamily([1, 1, 8, 12], 20, 2, 1, 1)


# ---------------------------------------------------------------------------
# JSON front door


@pytest.mark.parametrize("res", [
    F.family_pn(B(3, 5, 1)),
    F.family_quadric(B(4, 8, Fraction(3, 2)), Fraction(-7, 2)),
    F.family_quadric_low_rank(3, 4, 2),
    F.family_scroll(F.ScrollFamily(B(2, 5, 1), (2, 1), (Fraction(1, 2), 0))),
    F.family_double_cover(F.family_veronese(B(3, 3, 1)), m=3),
    F.example_iv(),
    F.example_iii(1),
], ids=lambda r: r.kind)
def test_build_family_round_trip(res):
    again = F.build_family(res.to_json()["input"])
    assert again.invariants == res.invariants
    assert again.to_json() == res.to_json()
