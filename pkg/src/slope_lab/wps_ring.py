"""Arithmetic of a weighted projective space P(a_0, ..., a_{n+1}).

Everything here is a function of the weight vector alone: graded pieces of
the weighted polynomial ring, the Cartier index of the tautological class,
its top self-intersection, the canonical class and the cohomology dimensions
of O(m).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, IndexOutOfRange, InvalidWeights

DEFAULT_ORACLE_CAP = 10**4


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[int, ...]

    def __init__(self, weights: Iterable[int]):
        ws = tuple(weights)
        if len(ws) < 2:
            raise InvalidWeights("need at least two weights")
        for w in ws:
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise InvalidWeights(f"weights must be positive integers, got {w!r}")
        object.__setattr__(self, "weights", ws)

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    @property
    def weight_sum(self) -> int:
        return sum(self.weights)

    @property
    def weight_product(self) -> int:
        return math.prod(self.weights)

    def __iter__(self) -> Iterator[int]:
        return iter(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def to_json(self) -> list[int]:
        return list(self.weights)


def as_weights(a: WeightVector | Sequence[int]) -> WeightVector:
    return a if isinstance(a, WeightVector) else WeightVector(a)


def is_well_formed(a: WeightVector | Sequence[int]) -> bool:
    """True iff dropping any single weight leaves a coprime collection."""
    ws = as_weights(a).weights
    k = len(ws) - 1
    return all(reduce(math.gcd, rest) == 1 for rest in combinations(ws, k))


def graded_dim(a: WeightVector | Sequence[int], m: int) -> int:
    """Number of monomials of weighted degree m."""
    ws = as_weights(a).weights
    if m < 0:
        return 0
    counts = [0] * (m + 1)
    counts[0] = 1
    for w in ws:
        for j in range(w, m + 1):
            counts[j] += counts[j - w]
    return counts[m]


def _half_sums(ws: Sequence[int], m: int) -> Counter:
    # weighted degrees of every exponent tuple over ws with degree <= m
    sums: Counter = Counter()

    def walk(i: int, acc: int) -> None:
        if i == len(ws):
            sums[acc] += 1
            return
        w = ws[i]
        for x in range((m - acc) // w + 1):
            walk(i + 1, acc + x * w)

    walk(0, 0)
    return sums


def graded_dim_oracle(a: WeightVector | Sequence[int], m: int,
                      cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Brute-force count of exponent tuples, used to check graded_dim.

    The variables are split in two halves; every exponent tuple of each half
    is listed explicitly and pairs whose degrees add up to m are counted.
    """
    ws = as_weights(a).weights
    if m > cap:
        raise CapExceeded(f"m={m} exceeds enumeration cap {cap}")
    if m < 0:
        return 0
    half = len(ws) // 2
    left = _half_sums(ws[:half], m)
    right = _half_sums(ws[half:], m)
    return sum(c * right.get(m - s, 0) for s, c in left.items())


def cartier_index(a: WeightVector | Sequence[int]) -> int:
    return math.lcm(*as_weights(a).weights)


def taut_top_self_intersection(a: WeightVector | Sequence[int]) -> Fraction:
    return Fraction(1, as_weights(a).weight_product)


def canonical_coefficient(a: WeightVector | Sequence[int]) -> int:
    return -as_weights(a).weight_sum


def wps_cohomology_dim(a: WeightVector | Sequence[int], m: int, i: int) -> int:
    """dim H^i(P(a), O(m))."""
    wv = as_weights(a)
    if i < 0 or i > wv.dim:
        raise IndexOutOfRange(f"cohomological degree {i} outside [0, {wv.dim}]")
    if i == 0:
        return graded_dim(wv, m)
    if i < wv.dim:
        return 0
    return graded_dim(wv, -m - wv.weight_sum)
