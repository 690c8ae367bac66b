"""Numerical Harder-Narasimhan machinery for a vector bundle on a curve.

A profile is the list of (rank r_i, slope mu_i) of the filtration. The lower
bounds for L^{n+1} are double sums over degree-n intersection numbers of the
nested classes P_1 <= ... <= P_{l+1} on the general fiber, which the caller
supplies as an IntersectionModel (a lookup table on multisets of indices).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (EmptyProfile, InvalidModel, InvalidSequence, ModelMismatch,
                     NotStrictlyDecreasingSlopes, NotStrictlyIncreasingRanks,
                     TooShort)
from .checks import CheckReport
from .rational import RationalLike, fmt, to_fraction

DEFAULT_SEARCH_CAP = 10**5
SEARCH_CAP_ENV = "SLOPE_LAB_SEARCH_CAP"
LOG_CONCAVE_ID = "LOG_CONCAVE"


@dataclass(frozen=True)
class HNProfile:
    ranks: tuple[int, ...]
    slopes: tuple[Fraction, ...]

    @property
    def length(self) -> int:
        return len(self.ranks)

    @property
    def steps(self) -> list[tuple[int, Fraction]]:
        return list(zip(self.ranks, self.slopes))

    def to_json(self) -> dict:
        return {"steps": [{"rank": r, "slope": fmt(mu)} for r, mu in self.steps]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "HNProfile":
        try:
            steps = [(s["rank"], s["slope"]) for s in obj["steps"]]
        except (KeyError, TypeError) as exc:
            raise InvalidSequence(f"malformed profile: {exc}") from None
        return validate_profile(steps)


def validate_profile(steps: Iterable[tuple[int, RationalLike]]) -> HNProfile:
    steps = list(steps)
    if not steps:
        raise EmptyProfile("profile has no steps")
    ranks = []
    for r, _ in steps:
        if isinstance(r, bool) or not isinstance(r, int):
            raise NotStrictlyIncreasingRanks(f"rank {r!r} is not an integer")
        ranks.append(r)
    slopes = [to_fraction(mu) for _, mu in steps]
    prev = 0
    for r in ranks:
        if r <= prev:
            raise NotStrictlyIncreasingRanks(f"ranks {ranks} are not 0 < r_1 < ... < r_l")
        prev = r
    for x, y in zip(slopes, slopes[1:]):
        if not x > y:
            raise NotStrictlyDecreasingSlopes(
                f"slopes {[fmt(s) for s in slopes]} are not strictly decreasing")
    return HNProfile(tuple(ranks), tuple(slopes))


def pushforward_degree(p: HNProfile) -> Fraction:
    """Degree of the bundle, computed from the graded pieces and from the
    filtration ranks; the two sums must agree."""
    by_pieces = Fraction(0)
    prev = 0
    for r, mu in p.steps:
        by_pieces += mu * (r - prev)
        prev = r
    mus = list(p.slopes) + [Fraction(0)]
    by_ranks = sum((r * (mus[i] - mus[i + 1]) for i, r in enumerate(p.ranks)), Fraction(0))
    assert by_pieces == by_ranks, (by_pieces, by_ranks)
    return by_pieces


def is_nef_profile(p: HNProfile) -> bool:
    return p.slopes[-1] >= 0


def miyaoka_nef_check(mu_minus: RationalLike, d: int, degA: RationalLike) -> bool:
    """Nefness of d*H + f^*A on P(E) over a curve, given mu_-(E)."""
    return d >= 0 and d * to_fraction(mu_minus) + to_fraction(degA) >= 0


# ---------------------------------------------------------------------------
# intersection tables


def multisets(class_count: int, n: int) -> Iterator[tuple[int, ...]]:
    return combinations_with_replacement(range(1, class_count + 1), n)


@dataclass(frozen=True)
class IntersectionModel:
    n: int
    class_count: int
    table: Mapping[tuple[int, ...], Fraction] = field(repr=False)

    def __init__(self, n: int, class_count: int,
                 table: Mapping[Iterable[int], RationalLike],
                 check_monotone: bool = False):
        if n < 0 or class_count < 1:
            raise InvalidModel("need n >= 0 and at least one class")
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, value in table.items():
            k = tuple(sorted(key))
            if len(k) != n or any(not 1 <= i <= class_count for i in k):
                raise InvalidModel(f"bad multiset {list(key)} for n={n}, classes={class_count}")
            if k in clean:
                raise InvalidModel(f"duplicate multiset {list(k)}")
            v = to_fraction(value)
            if v < 0:
                raise InvalidModel(f"negative intersection number at {list(k)}")
            clean[k] = v
        missing = [k for k in multisets(class_count, n) if k not in clean]
        if missing:
            raise InvalidModel(f"table is missing {len(missing)} multisets, e.g. {list(missing[0])}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "class_count", class_count)
        object.__setattr__(self, "table", clean)
        if check_monotone and not self.is_monotone():
            raise InvalidModel("table is not monotone in the class indices")

    def value(self, indices: Iterable[int]) -> Fraction:
        return self.table[tuple(sorted(indices))]

    def is_monotone(self) -> bool:
        for k, v in self.table.items():
            for pos in range(len(k)):
                if k[pos] < self.class_count:
                    bigger = k[:pos] + (k[pos] + 1,) + k[pos + 1:]
                    if self.value(bigger) < v:
                        return False
        return True

    def to_json(self) -> dict:
        return {"n": self.n, "classes": self.class_count,
                "table": [{"indices": list(k), "value": fmt(self.table[k])}
                          for k in multisets(self.class_count, self.n)]}

    @classmethod
    def from_json(cls, obj: Mapping, check_monotone: bool = False) -> "IntersectionModel":
        try:
            table = {tuple(e["indices"]): e["value"] for e in obj["table"]}
            return cls(obj["n"], obj["classes"], table, check_monotone=check_monotone)
        except (KeyError, TypeError) as exc:
            raise InvalidModel(f"malformed model: {exc}") from None


def random_monotone_model(n: int, class_count: int, rng: random.Random,
                          max_step: int = 5) -> IntersectionModel:
    """Random nonnegative table, nondecreasing under raising any index.

    Multisets are visited in lexicographic order, so every predecessor
    (one index lowered by one) is filled in before the entry itself.
    """
    table: dict[tuple[int, ...], Fraction] = {}
    for k in multisets(class_count, n):
        base = Fraction(0)
        for pos in range(n):
            if k[pos] > 1:
                lower = tuple(sorted(k[:pos] + (k[pos] - 1,) + k[pos + 1:]))
                base = max(base, table[lower])
        table[k] = base + Fraction(rng.randint(0, max_step), rng.randint(1, 3))
    return IntersectionModel(n, class_count, table)


# ---------------------------------------------------------------------------
# choice of the extra class


class ExtraVariant(str, Enum):
    REUSE_LAST = "reuse_last"
    PULLBACK_L = "pullback_L"
    M_ELL = "m_ell"


@dataclass(frozen=True)
class ExtraClassChoice:
    variant: ExtraVariant
    mu_extra: Fraction

    @classmethod
    def make(cls, variant: str | ExtraVariant, profile: HNProfile) -> "ExtraClassChoice":
        v = ExtraVariant(variant)
        mu = profile.slopes[-1] if v is ExtraVariant.REUSE_LAST else Fraction(0)
        return cls(v, mu)


def _check_inputs(p: HNProfile, model: IntersectionModel, extra: ExtraClassChoice) -> None:
    if model.class_count != p.length + 1:
        raise ModelMismatch(
            f"model has {model.class_count} classes, profile needs {p.length + 1}")
    if model.n < 1:
        raise ModelMismatch("fiber dimension must be at least 1")
    expected = p.slopes[-1] if extra.variant is ExtraVariant.REUSE_LAST else Fraction(0)
    if extra.mu_extra != expected:
        raise ModelMismatch(f"variant {extra.variant.value} forces mu_extra = {fmt(expected)}")


def _check_sequences(ell: int, n: int, seq_s: Sequence[int], seq_m: Sequence[int]) -> None:
    s = list(seq_s)
    m = list(seq_m)
    if len(s) < 2 or s[-1] != ell + 1 or s[0] < 1 or any(x >= y for x, y in zip(s, s[1:])):
        raise InvalidSequence(f"seq_s={s} must satisfy 1 <= s_1 < ... < s_q < s_(q+1) = {ell + 1}")
    q = len(s) - 1
    if (len(m) != n + 2 or m[0] != 1 or m[-1] != q + 1
            or any(x > y for x, y in zip(m, m[1:]))):
        raise InvalidSequence(
            f"seq_m={m} must have length {n + 2} with 1 = m_0 <= ... <= m_{n + 1} = {q + 1}")


def xiao_bound_general(p: HNProfile, model: IntersectionModel, extra: ExtraClassChoice,
                       seq_s: Sequence[int], seq_m: Sequence[int]) -> Fraction:
    """The double-sum lower bound for L^{n+1}.

    seq_s = (s_1, ..., s_q, l+1) and seq_m = (m_0, ..., m_{n+1}) are given in
    full, endpoints included. All indices are 1-based as in the formula.
    """
    _check_inputs(p, model, extra)
    n = model.n
    _check_sequences(p.length, n, seq_s, seq_m)
    s = (None,) + tuple(seq_s)            # s[1..q+1]
    m = tuple(seq_m)                      # m[0..n+1]
    mu = (None,) + tuple(p.slopes) + (extra.mu_extra,)   # mu[1..l+1]
    total = Fraction(0)
    for i in range(n + 1):
        tail = tuple(s[m[t]] for t in range(i + 1, n + 1))
        for j in range(m[i], m[i + 1]):
            diff = mu[s[j]] - mu[s[j + 1]]
            if diff == 0:
                continue
            coeff = sum((model.value((s[j],) * k + (s[j + 1],) * (i - k) + tail)
                         for k in range(i + 1)), Fraction(0))
            total += coeff * diff
    return total


def seqs_1A(ell: int, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    q = ell
    return tuple(range(1, ell + 2)), (1, 1) + (q + 1,) * n


def seqs_1B(ell: int, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    q = ell
    return tuple(range(1, ell + 2)), (1,) * (n + 1) + (q + 1,)


def seqs_2(ell: int, n: int, seq_s: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    s = tuple(seq_s)
    if not s or s[-1] != ell + 1:
        s = s + (ell + 1,)
    q = len(s) - 1
    return s, (1, 1) + (q + 1,) * n


def xiao_bound_1A(p: HNProfile, model: IntersectionModel, extra: ExtraClassChoice) -> Fraction:
    """sum_j (P_j + P_{j+1}) P_{l+1}^{n-1} (mu_j - mu_{j+1})"""
    _check_inputs(p, model, extra)
    ell, n = p.length, model.n
    mu = list(p.slopes) + [extra.mu_extra]
    top = (ell + 1,) * (n - 1)
    return sum(((model.value((j,) + top) + model.value((j + 1,) + top)) * (mu[j - 1] - mu[j])
                for j in range(1, ell + 1)), Fraction(0))


def xiao_bound_1B(p: HNProfile, model: IntersectionModel, extra: ExtraClassChoice) -> Fraction:
    """sum_j (sum_k P_j^k P_{j+1}^{n-k}) (mu_j - mu_{j+1})"""
    _check_inputs(p, model, extra)
    ell, n = p.length, model.n
    mu = list(p.slopes) + [extra.mu_extra]
    total = Fraction(0)
    for j in range(1, ell + 1):
        coeff = sum((model.value((j,) * k + (j + 1,) * (n - k)) for k in range(n + 1)),
                    Fraction(0))
        total += coeff * (mu[j - 1] - mu[j])
    return total


def xiao_bound_2(p: HNProfile, model: IntersectionModel, extra: ExtraClassChoice,
                 seq_s: Sequence[int]) -> Fraction:
    """Same as 1A but along a subsequence s_1 < ... < s_q of the steps."""
    _check_inputs(p, model, extra)
    ell, n = p.length, model.n
    s, seq_m = seqs_2(ell, n, seq_s)
    _check_sequences(ell, n, s, seq_m)
    mu = (None,) + tuple(p.slopes) + (extra.mu_extra,)
    top = (ell + 1,) * (n - 1)
    return sum(((model.value((a,) + top) + model.value((b,) + top)) * (mu[a] - mu[b])
                for a, b in zip(s, s[1:])), Fraction(0))


def _all_seq_s(ell: int) -> Iterator[tuple[int, ...]]:
    for q in range(1, ell + 1):
        for sub in combinations(range(1, ell + 1), q):
            yield sub + (ell + 1,)


def _all_seq_m(n: int, q: int) -> Iterator[tuple[int, ...]]:
    for mid in combinations_with_replacement(range(1, q + 2), n):
        yield (1,) + mid + (q + 1,)


def _count_pairs(ell: int, n: int, stop: int) -> int:
    from math import comb
    total = 0
    for q in range(1, ell + 1):
        total += comb(ell, q) * comb(q + n, n)
        if total > stop:
            break
    return total


def search_cap_from_env(default: int = DEFAULT_SEARCH_CAP) -> int:
    raw = os.environ.get(SEARCH_CAP_ENV)
    if raw is None or raw.strip() == "":
        return default
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{SEARCH_CAP_ENV} must be a positive integer")
    return cap


@dataclass(frozen=True)
class SearchResult:
    value: Fraction
    seq_s: tuple[int, ...]
    seq_m: tuple[int, ...]
    exhaustive: bool


def best_xiao_bound(p: HNProfile, model: IntersectionModel, extra: ExtraClassChoice,
                    search_cap: Optional[int] = None) -> SearchResult:
    """Maximise the double sum over the admissible sequence pairs.

    Exhaustive when the number of pairs is at most search_cap, otherwise only
    the 1A and 1B choices and the 2 choice for every subsequence are tried.
    Ties go to the lexicographically smallest (seq_s, seq_m).
    """
    _check_inputs(p, model, extra)
    cap = search_cap_from_env() if search_cap is None else search_cap
    ell, n = p.length, model.n
    exhaustive = _count_pairs(ell, n, cap) <= cap
    if exhaustive:
        candidates = ((s, m) for s in _all_seq_s(ell) for m in _all_seq_m(n, len(s) - 1))
    else:
        cands = {seqs_1A(ell, n), seqs_1B(ell, n)}
        cands.update(seqs_2(ell, n, s) for s in _all_seq_s(ell))
        candidates = iter(cands)
    best: Optional[tuple[Fraction, tuple, tuple]] = None
    for s, m in candidates:
        val = xiao_bound_general(p, model, extra, s, m)
        if best is None or val > best[0] or (val == best[0] and (s, m) < (best[1], best[2])):
            best = (val, s, m)
    assert best is not None
    return SearchResult(best[0], best[1], best[2], exhaustive)


# ---------------------------------------------------------------------------
# log-concave sequences


def check_log_concave_lemma(d: Sequence[int]) -> CheckReport:
    """Check the lemma on sequences d_0 <= ... <= d_n of positive integers.

    Hypotheses: d_0 >= 2, nondecreasing, d_i^2 >= d_{i+1} d_{i-1}, and
    d_n - d_{n-1} >= 2. Conclusions: every gap is at least 2 and
    d_{n-1} >= d_0 + 2(n-1). The report compares the smallest gap with 2;
    the growth conclusion follows from the gaps and is checked separately.
    """
    d = [int(x) for x in d]
    if len(d) < 3:
        raise TooShort("need at least three terms d_0, d_1, d_2")
    n = len(d) - 1
    min_gap = Fraction(min(y - x for x, y in zip(d, d[1:])))
    failed = []
    if d[0] < 2:
        failed.append("d_0 >= 2")
    if any(x > y for x, y in zip(d, d[1:])):
        failed.append("nondecreasing")
    bad = [i for i in range(1, n) if d[i] ** 2 < d[i + 1] * d[i - 1]]
    if bad:
        failed.append(f"log-concavity at i={bad[0]}")
    if d[n] - d[n - 1] < 2:
        failed.append("d_n - d_(n-1) >= 2")
    if failed:
        return CheckReport(LOG_CONCAVE_ID, min_gap, Fraction(2), None, False,
                           "hypothesis failed: " + ", ".join(failed))
    growth_ok = d[n - 1] >= d[0] + 2 * (n - 1)
    gaps_ok = min_gap >= 2
    notes = []
    if not gaps_ok:
        notes.append("some gap d_i - d_(i-1) < 2")
    if not growth_ok:
        notes.append("d_(n-1) < d_0 + 2(n-1)")
    return CheckReport(LOG_CONCAVE_ID, min_gap, Fraction(2), gaps_ok and growth_ok, True,
                       "; ".join(notes) or "conclusions hold")


def random_log_concave(n: int, rng: random.Random, d0_max: int = 12,
                       step_max: int = 40) -> Optional[list[int]]:
    """Random d_0..d_n meeting the lemma's hypotheses, or None if the walk
    gets stuck (the caller simply draws again)."""
    d = [rng.randint(2, d0_max)]
    d.append(rng.randint(d[0], d[0] + step_max))
    for i in range(1, n):
        hi = d[i] ** 2 // d[i - 1]
        lo = d[i]
        if i == n - 1:
            lo = d[i] + 2
        if hi < lo:
            return None
        d.append(rng.randint(lo, min(hi, lo + step_max)))
    if n == 1 and d[1] - d[0] < 2:
        return None
    return d
