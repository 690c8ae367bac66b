"""Classical lower bounds: Castelnuovo's genus bound and the Noether-type
inequalities for degrees of polarized varieties.

These only evaluate right-hand sides. The geometric hypotheses behind each
bound are the caller's business.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Union

from .errors import AmbientTooSmall, DimensionTooSmall, GapOne, InvalidCodim, TooFewSections


@dataclass(frozen=True)
class CastelnuovoData:
    d: int
    N: int
    A: int
    eps: int


def castelnuovo_data(d: int, N: int) -> CastelnuovoData:
    if N < 2:
        raise AmbientTooSmall(f"ambient dimension N={N} must be at least 2")
    if d < 1:
        raise ValueError(f"degree d={d} must be positive")
    A, eps = divmod(d - 1, N - 1)
    return CastelnuovoData(d, N, A, eps)


def castelnuovo_genus_bound(d: int, N: int) -> int:
    c = castelnuovo_data(d, N)
    return comb(c.A, 2) * (N - 1) + c.A * c.eps


def min_degree_birational_subcanonical(h0: int, p: int) -> int:
    """Least degree of L on a curve with phi_L birational and K - pL effective."""
    if h0 < 2:
        raise TooFewSections(f"h0={h0} < 2")
    if p < 0:
        raise ValueError("p must be nonnegative")
    return (p + 1) * (h0 - 2) + 2


def harris_bound(n: int, p: int, h0: int) -> int:
    if n < 1 or p < 0:
        raise ValueError("need n >= 1 and p >= 0")
    if h0 < n + 1:
        raise TooFewSections(f"h0={h0} < n+1={n + 1}")
    return (n + p) * (h0 - 1 - n) + 2


def _need_sections(k: int, h0: int) -> None:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if h0 < k + 1:
        raise TooFewSections(f"h0={h0} < k+1={k + 1}")


def noether_I_bound(k: int, h0: int) -> int:
    _need_sections(k, h0)
    return max(2 * h0 - 2 * k, 2)


def noether_Ibis_bound(k: int, h0: int) -> int:
    _need_sections(k, h0)
    return h0 - k


def noether_II_bound(h0_M: int, kodaira_nonneg_and_dim_ge2: bool) -> int:
    if h0_M < 1:
        raise TooFewSections(f"h0_M={h0_M} < 1")
    return 2 * h0_M - 2 if kodaira_nonneg_and_dim_ge2 else h0_M - 1


GapCase = Union[str, int]


def _gap_case(gap_case: GapCase) -> str:
    if isinstance(gap_case, str):
        if gap_case in ("ge2", "eq0"):
            return gap_case
        if gap_case.lstrip("-").isdigit():
            gap_case = int(gap_case)
        else:
            raise ValueError(f"unknown gap case {gap_case!r}")
    if gap_case == 1:
        raise GapOne("the bound does not cover L^n - L^(n-1) M = 1")
    if gap_case == 0:
        return "eq0"
    if gap_case >= 2:
        return "ge2"
    raise ValueError(f"gap {gap_case} must be nonnegative")


def noether_III_bound(h0_M: int, h0_L: int, n: int, gap_case: GapCase) -> int:
    """gap_case is "ge2"/"eq0" or the integer L^n - L^(n-1) M itself."""
    if n < 2:
        raise DimensionTooSmall(f"n={n} < 2")
    case = _gap_case(gap_case)
    if case == "ge2":
        return 2 * h0_M - 2
    return 2 * h0_L - 2 * n


def castelnuovo2_bound(n: int, p: int, k: int, h0_M: int) -> int:
    if n < 2:
        raise DimensionTooSmall(f"n={n} < 2")
    if not 0 <= k < n:
        raise InvalidCodim(f"k={k} must satisfy 0 <= k < n={n}")
    return (n + p - k + 2) * (h0_M - k)


def castelnuovo3_bound(n: int, p: int, h0_M: int) -> int:
    if n < 2:
        raise DimensionTooSmall(f"n={n} < 2")
    return (n + p) * (h0_M - 2) + 2


def clifford_bound(h0: int) -> int:
    if h0 < 1:
        raise TooFewSections(f"h0={h0} < 1")
    return 2 * h0 - 2
