import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slope_lab import hn_engine as HN
from slope_lab.errors import (EmptyProfile, InvalidModel, InvalidSequence, ModelMismatch,
                              NotStrictlyDecreasingSlopes, NotStrictlyIncreasingRanks, TooShort)


def prof(*steps):
    return HN.validate_profile(steps)


def flat_model(n, classes, values):
    """Table where a multiset's value depends only on its largest index."""
    return HN.IntersectionModel(n, classes, {k: values[max(k) - 1]
                                             for k in HN.multisets(classes, n)})


# ---------------------------------------------------------------------------
# profiles


def test_profile_validation():
    assert prof((2, 3), (5, 1)).length == 2
    with pytest.raises(NotStrictlyDecreasingSlopes):
        prof((2, 1), (5, 1))
    with pytest.raises(NotStrictlyIncreasingRanks):
        prof((5, 2), (3, 1))
    with pytest.raises(EmptyProfile):
        prof()


@pytest.mark.parametrize("steps, degree", [
    [((4, Fraction(3, 2)),), 6], [((2, 3), (5, 1)), 9], [((1, 5), (2, 0)), 5],
])
def test_pushforward_degree(steps, degree):
    assert HN.pushforward_degree(prof(*steps)) == degree


@pytest.mark.parametrize("steps, nef", [
    [((2, 3), (5, 1)), True], [((2, 3), (5, Fraction(-1, 2))), False], [((4, 0),), True],
])
def test_nef_profile(steps, nef):
    assert HN.is_nef_profile(prof(*steps)) is nef


@pytest.mark.parametrize("mu, d, degA, ok", [
    (Fraction(1, 2), 2, -1, True), (0, 3, -1, False), (1, 0, 0, True),
])
def test_miyaoka(mu, d, degA, ok):
    assert HN.miyaoka_nef_check(mu, d, degA) is ok


def test_profile_json_round_trip():
    p = prof((2, Fraction(7, 3)), (5, -1))
    assert HN.HNProfile.from_json(p.to_json()) == p
    assert p.to_json()["steps"][0]["slope"] == "7/3"


# ---------------------------------------------------------------------------
# intersection models


def test_model_validation():
    with pytest.raises(InvalidModel):
        HN.IntersectionModel(1, 2, {(1,): 1})                   # missing (2,)
    with pytest.raises(InvalidModel):
        HN.IntersectionModel(1, 2, {(1,): 1, (2,): -1})         # negative
    with pytest.raises(InvalidModel):
        HN.IntersectionModel(1, 2, {(1,): 2, (2,): 1}, check_monotone=True)


def test_model_json_round_trip():
    m = HN.random_monotone_model(2, 3, random.Random(1))
    assert m.is_monotone()
    back = HN.IntersectionModel.from_json(m.to_json())
    assert back.table == m.table


def test_model_class_count_must_match_profile():
    p = prof((1, 2), (3, 1))
    with pytest.raises(ModelMismatch):
        HN.xiao_bound_1A(p, flat_model(1, 2, [1, 1]), HN.ExtraClassChoice.make("m_ell", p))


# ---------------------------------------------------------------------------
# lower bounds


def test_reuse_last_single_step_is_zero():
    p = prof((3, 2))
    extra = HN.ExtraClassChoice.make("reuse_last", p)
    model = flat_model(2, 2, [1, 5])
    assert HN.xiao_bound_1A(p, model, extra) == 0
    assert HN.best_xiao_bound(p, model, extra).value == 0


def test_all_ones_table_1B():
    # every entry 1: coefficient of each slope gap is n+1
    p = prof((1, 5), (2, 2))
    extra = HN.ExtraClassChoice.make("pullback_L", p)
    model = flat_model(2, 3, [1, 1, 1])
    assert HN.xiao_bound_1B(p, model, extra) == 3 * (5 - 2) + 3 * (2 - 0)
    assert HN.xiao_bound_general(p, model, extra, *HN.seqs_1B(2, 2)) == 15


def test_best_on_hand_enumerated_toy():
    # n=1, P_i = i, slopes (2, 1), extra reuses mu_2: candidates 0, 3, 4, 3, 2, 3
    p = prof((1, 2), (2, 1))
    extra = HN.ExtraClassChoice.make("reuse_last", p)
    model = flat_model(1, 3, [1, 2, 3])
    res = HN.best_xiao_bound(p, model, extra)
    assert res.value == 4
    assert (res.seq_s, res.seq_m) == ((1, 3), (1, 1, 2))
    assert res.exhaustive


def test_best_single_step_curve_fiber_is_1A():
    p = prof((2, 3))
    extra = HN.ExtraClassChoice.make("pullback_L", p)
    model = flat_model(1, 2, [2, 7])
    assert HN.best_xiao_bound(p, model, extra).value == HN.xiao_bound_1A(p, model, extra)


def test_sequence_validation():
    p = prof((1, 2), (2, 1))
    extra = HN.ExtraClassChoice.make("m_ell", p)
    model = flat_model(1, 3, [1, 2, 3])
    with pytest.raises(InvalidSequence):
        HN.xiao_bound_general(p, model, extra, (1, 3), (1, 3, 2))
    with pytest.raises(InvalidSequence):
        HN.xiao_bound_general(p, model, extra, (2, 1, 3), (1, 1, 3))
    # the corrected form of an off-by-one example: m = (1, 1, 3) along s = (1, 2, 3)
    assert HN.xiao_bound_general(p, model, extra, (1, 2, 3), (1, 1, 3)) \
        == HN.xiao_bound_1A(p, model, extra)


def test_search_cap_fallback(monkeypatch):
    rng = random.Random(7)
    p = prof((1, 9), (2, 5), (3, 2), (4, 1))
    model = HN.random_monotone_model(3, 5, rng)
    extra = HN.ExtraClassChoice.make("m_ell", p)
    full = HN.best_xiao_bound(p, model, extra)
    monkeypatch.setenv("SLOPE_LAB_SEARCH_CAP", "3")
    capped = HN.best_xiao_bound(p, model, extra)
    assert full.exhaustive and not capped.exhaustive
    assert capped.value <= full.value
    assert capped.value >= HN.xiao_bound_1B(p, model, extra)


@st.composite
def hn_case(draw):
    ell = draw(st.integers(1, 3))
    ranks = sorted(draw(st.sets(st.integers(1, 12), min_size=ell, max_size=ell)))
    slopes = sorted(draw(st.sets(st.fractions(-10, 10, max_denominator=4),
                                 min_size=ell, max_size=ell)), reverse=True)
    n = draw(st.integers(1, 3))
    seed = draw(st.integers(0, 10 ** 6))
    variant = draw(st.sampled_from(list(HN.ExtraVariant)))
    p = HN.validate_profile(zip(ranks, slopes))
    return p, HN.random_monotone_model(n, ell + 1, random.Random(seed)), \
        HN.ExtraClassChoice.make(variant, p)


@settings(max_examples=60, deadline=None)
@given(hn_case())
def test_specializations_property(case):
    p, model, extra = case
    ell, n = p.length, model.n
    assert HN.xiao_bound_general(p, model, extra, *HN.seqs_1A(ell, n)) \
        == HN.xiao_bound_1A(p, model, extra)
    assert HN.xiao_bound_general(p, model, extra, *HN.seqs_1B(ell, n)) \
        == HN.xiao_bound_1B(p, model, extra)
    best = HN.best_xiao_bound(p, model, extra).value
    for q in range(1, ell + 1):
        for sub in combinations(range(1, ell + 1), q):
            v = HN.xiao_bound_2(p, model, extra, sub)
            assert v == HN.xiao_bound_general(p, model, extra, *HN.seqs_2(ell, n, sub))
            assert best >= v


# ---------------------------------------------------------------------------
# log-concave sequences


def test_lemma_pins():
    ok = HN.check_log_concave_lemma([2, 4, 6, 9])
    assert ok.hypothesis_ok and ok.holds
    for bad in ([1, 2, 4], [2, 2, 4]):
        rep = HN.check_log_concave_lemma(bad)
        assert rep.hypothesis_ok is False and rep.holds is None
        assert rep.notes.startswith("hypothesis failed")
    with pytest.raises(TooShort):
        HN.check_log_concave_lemma([2, 4])


@settings(max_examples=200)
@given(st.integers(2, 8), st.integers(0, 10 ** 9))
def test_random_log_concave_meets_hypotheses(n, seed):
    d = HN.random_log_concave(n, random.Random(seed))
    if d is not None:
        rep = HN.check_log_concave_lemma(d)
        assert rep.hypothesis_ok and rep.holds
