"""Slope inequalities for polarized fibrations over a curve.

A fibration f: X -> T with polarization L is seen only through its numbers:
L^{n+1}, deg f_*O(L), h^0(F, L_F) and L_F^n on the general fiber F. The
geometric hypotheses of each inequality (nefness, generic finiteness of the
fiber map, Kodaira dimension, ...) are flags the caller asserts.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Optional

from .checks import CheckReport, compare
from .errors import (DegenerateDenominator, HypothesisNotMet, InconsistentInvariants,
                     InvalidThreshold, NonIntegralTwist, NoSections, TwistTooSmall,
                     UnknownTheorem, ZeroPushforwardDegree)
from .rational import RationalLike, fmt, to_fraction


class TheoremId(str, Enum):
    XIAO_H1 = "XIAO_H1"
    XIAO_H2 = "XIAO_H2"
    XIAO_BIR1 = "XIAO_BIR1"
    XIAO_BIR2 = "XIAO_BIR2"
    BARJA_1 = "BARJA_1"
    BARJA_2 = "BARJA_2"
    KSB_1 = "KSB_1"
    KSB_2 = "KSB_2"
    KSB_3 = "KSB_3"
    KSB_4 = "KSB_4"
    F_POSITIVE = "F_POSITIVE"


def theorem_id(value: str | TheoremId) -> TheoremId:
    try:
        return TheoremId(value)
    except ValueError:
        known = ", ".join(t.value for t in TheoremId)
        raise UnknownTheorem(f"unknown theorem id {value!r}; known: {known}") from None


@dataclass(frozen=True)
class Flags:
    """Hypotheses asserted by the caller.

    The *_at_q entries hold the smallest multiple q for which the property is
    known (q*L_F generically finite, Cartier + globally generated, Cartier +
    big); None means not asserted.
    """
    L_nef: bool = False
    push_nef: bool = False
    gen_finite_at_q: Optional[int] = None
    birational: bool = False
    LF_cartier_gg_at_q: Optional[int] = None
    LF_cartier_big_at_q: Optional[int] = None
    kodaira_nonneg: bool = False
    curve_special: bool = False
    canonical_sings: bool = False
    ksb_stable: bool = False

    def __post_init__(self) -> None:
        for name in ("gen_finite_at_q", "LF_cartier_gg_at_q", "LF_cartier_big_at_q"):
            q = getattr(self, name)
            if q is not None and (isinstance(q, bool) or not isinstance(q, int) or q < 1):
                raise ValueError(f"{name} must be a positive integer, got {q!r}")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Flags":
        names = {f.name for f in fields(cls)}
        unknown = set(obj) - names
        if unknown:
            raise ValueError(f"unknown flags: {sorted(unknown)}")
        return cls(**obj)


@dataclass(frozen=True)
class Params:
    m: Optional[int] = None
    s: Optional[int] = None
    w: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.m is not None and self.m < 1:
            raise ValueError("m must be a positive integer")
        if self.s is not None and self.s < 0:
            raise ValueError("s must be nonnegative")
        if self.w is not None:
            object.__setattr__(self, "w", to_fraction(self.w))
            if self.w <= 0:
                raise ValueError("w must be positive")

    def to_json(self) -> dict:
        return {"m": self.m, "s": self.s, "w": None if self.w is None else fmt(self.w)}

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "Params":
        unknown = set(obj) - {"m", "s", "w"}
        if unknown:
            raise ValueError(f"unknown params: {sorted(unknown)}")
        return cls(obj.get("m"), obj.get("s"), obj.get("w"))


@dataclass(frozen=True)
class FamilyInvariants:
    n: int
    top_self: Fraction
    push_deg: Fraction
    h0: int
    fiber_top: Fraction
    flags: Flags = field(default_factory=Flags)
    params: Params = field(default_factory=Params)

    def __post_init__(self) -> None:
        object.__setattr__(self, "top_self", to_fraction(self.top_self))
        object.__setattr__(self, "push_deg", to_fraction(self.push_deg))
        object.__setattr__(self, "fiber_top", to_fraction(self.fiber_top))
        if self.n < 1:
            raise ValueError("fiber dimension n must be at least 1")
        if self.h0 < 0:
            raise ValueError("h0 must be nonnegative")
        if self.flags.L_nef and self.fiber_top < 0:
            raise ValueError("L_F^n must be nonnegative when L is nef")

    def to_json(self) -> dict:
        return {"n": self.n, "top_self": fmt(self.top_self), "push_deg": fmt(self.push_deg),
                "h0": self.h0, "fiber_top": fmt(self.fiber_top),
                "flags": self.flags.to_json(), "params": self.params.to_json()}

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "FamilyInvariants":
        return cls(n=obj["n"], top_self=to_fraction(obj["top_self"]),
                   push_deg=to_fraction(obj["push_deg"]), h0=obj["h0"],
                   fiber_top=to_fraction(obj["fiber_top"]),
                   flags=Flags.from_json(obj.get("flags", {})),
                   params=Params.from_json(obj.get("params", {})))


# ---------------------------------------------------------------------------
# slope, BS invariant, f-positivity


def bs_invariant(inv: FamilyInvariants) -> Fraction:
    if inv.h0 < 1:
        raise NoSections("h0(F, L_F) = 0")
    return (inv.n + 1) * inv.fiber_top / inv.h0


def slope(inv: FamilyInvariants) -> Fraction:
    if inv.push_deg == 0:
        raise ZeroPushforwardDegree("deg f_*O(L) = 0")
    return inv.top_self / inv.push_deg


def check_f_positive(inv: FamilyInvariants) -> CheckReport:
    bs = bs_invariant(inv)
    return compare(TheoremId.F_POSITIVE.value, inv.top_self, bs * inv.push_deg,
                   coefficient=bs)


def rineqbs_lower_bounds(inv: FamilyInvariants) -> tuple[Fraction, Fraction]:
    """Lower bounds for the BS invariant in terms of L_F^n and of h^0.

    Returns ((n+1)t/(t+n), (n+1)(h0-n)/h0), or the doubled pair with t+2n
    when the fiber has nonnegative Kodaira dimension (n >= 2) or L_F is
    special (n = 1). The chain BS >= first >= second is checked.
    """
    f = inv.flags
    if not f.L_nef or f.gen_finite_at_q != 1:
        raise HypothesisNotMet("needs L_nef and gen_finite_at_q = 1")
    n, t, h0 = inv.n, inv.fiber_top, inv.h0
    bs = bs_invariant(inv)
    if _doubled_case(inv):
        first = 2 * (n + 1) * t / (t + 2 * n)
        second = Fraction(2 * (n + 1) * (h0 - n), h0)
    else:
        first = (n + 1) * t / (t + n)
        second = Fraction((n + 1) * (h0 - n), h0)
    if not bs >= first >= second:
        raise InconsistentInvariants(
            f"BS={fmt(bs)}, {fmt(first)}, {fmt(second)} is not a decreasing chain; "
            "L_F^n is below the Noether-type bound")
    return first, second


def _doubled_case(inv: FamilyInvariants) -> bool:
    f = inv.flags
    return (inv.n >= 2 and f.kodaira_nonneg) or (inv.n == 1 and f.curve_special)


# ---------------------------------------------------------------------------
# slope inequalities


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise HypothesisNotMet(f"missing hypothesis: {what}")


def _require_nef(inv: FamilyInvariants) -> None:
    _require(inv.flags.L_nef, "L_nef")
    _require(inv.flags.push_nef, "push_nef")


def _ksb_m(inv: FamilyInvariants) -> int:
    _require(inv.flags.ksb_stable, "ksb_stable")
    _require(inv.params.m is not None, "param m")
    return inv.params.m


def _finite_or_cartier_q(inv: FamilyInvariants) -> Optional[int]:
    cands = [q for q in (inv.flags.gen_finite_at_q, inv.flags.LF_cartier_big_at_q,
                         inv.flags.LF_cartier_gg_at_q) if q is not None]
    return min(cands) if cands else None


def slope_coefficient(tid: str | TheoremId, inv: FamilyInvariants) -> tuple[Fraction, Fraction, str]:
    """(coefficient on deg f_*O(L), scale on L^{n+1}, note).

    Raises HypothesisNotMet when a flag or parameter the inequality needs is
    absent.
    """
    tid = theorem_id(tid)
    f, n, h0, t = inv.flags, inv.n, inv.h0, inv.fiber_top
    one = Fraction(1)
    doubled = _doubled_case(inv)
    if tid is TheoremId.XIAO_H1:
        _require_nef(inv)
        _require(f.gen_finite_at_q == 1, "gen_finite_at_q = 1")
        _require(h0 >= 1, "h0 >= 1")
        c = Fraction((4 if doubled else 2) * (h0 - n), h0)
        return c, one, "doubled case" if doubled else ""
    if tid is TheoremId.XIAO_H2:
        _require_nef(inv)
        _require(f.LF_cartier_gg_at_q == 1, "LF_cartier_gg_at_q = 1")
        _require(t > 0, "L_F big (L_F^n > 0)")
        c = 4 * t / (t + 2 * n) if doubled else 2 * t / (t + n)
        return c, one, "doubled case" if doubled else ""
    if tid in (TheoremId.XIAO_BIR1, TheoremId.XIAO_BIR2):
        _require_nef(inv)
        _require(f.birational, "birational")
        _require(n >= 2, "n >= 2")
        _require(f.canonical_sings, "canonical_sings")
        _require(inv.params.s is not None, "param s")
        s = inv.params.s
        if tid is TheoremId.XIAO_BIR1:
            _require(h0 >= 1, "h0 >= 1")
            return Fraction(2 * (n + s) * (h0 - n - 2), h0), one, ""
        _require(f.LF_cartier_gg_at_q == 1, "LF_cartier_gg_at_q = 1")
        return 2 * (n + s) * t / (t + (n + s) * (n + 2)), one, ""
    if tid is TheoremId.BARJA_1:
        _require_nef(inv)
        cands = [q for q in (f.gen_finite_at_q, f.LF_cartier_big_at_q) if q is not None]
        _require(bool(cands), "gen_finite_at_q or LF_cartier_big_at_q")
        q = min(cands)
        return Fraction(1, q ** n), one, f"q={q}"
    if tid is TheoremId.BARJA_2:
        _require_nef(inv)
        _require(f.gen_finite_at_q is not None, "gen_finite_at_q")
        _require(doubled, "kodaira_nonneg with n >= 2, or curve_special with n = 1")
        q = f.gen_finite_at_q
        return Fraction(2, q ** n), one, f"q={q}"
    if tid in (TheoremId.KSB_1, TheoremId.KSB_2):
        m = _ksb_m(inv)
        q0 = f.LF_cartier_gg_at_q
        _require(q0 is not None and m % q0 == 0, "m(K+D) Cartier and globally generated")
        scale = Fraction(m ** (n + 1))
        if tid is TheoremId.KSB_2:
            return one, scale, f"m={m}"
        _require(inv.params.w is not None, "param w")
        w = inv.params.w
        return 2 * w * m ** n / (w * m ** n + n), scale, f"m={m}"
    if tid is TheoremId.KSB_3:
        m = _ksb_m(inv)
        q0 = _finite_or_cartier_q(inv)
        _require(q0 is not None, "gen_finite_at_q or a Cartier multiple")
        q = math.lcm(q0, m) // m
        return Fraction(1, q ** n), Fraction(m ** (n + 1)), f"m={m}, q={q}"
    if tid is TheoremId.KSB_4:
        _require(f.ksb_stable, "ksb_stable")
        _require(f.L_nef, "L_nef")
        q = _finite_or_cartier_q(inv)
        _require(q is not None, "gen_finite_at_q or a Cartier multiple")
        return Fraction(1, q ** n), one, f"q={q}"
    raise UnknownTheorem(f"{tid.value} is not a slope inequality")


def slope_rhs_coefficient(tid: str | TheoremId, inv: FamilyInvariants) -> Fraction:
    return slope_coefficient(tid, inv)[0]


def check_slope_inequality(tid: str | TheoremId, inv: FamilyInvariants) -> CheckReport:
    tid = theorem_id(tid)
    if tid is TheoremId.F_POSITIVE:
        return check_f_positive(inv)
    coeff, scale, note = slope_coefficient(tid, inv)
    return compare(tid.value, scale * inv.top_self, coeff * inv.push_deg, note, coeff)


def existence_constant(n: int, b: RationalLike) -> Fraction:
    b = to_fraction(b)
    if b <= 0:
        raise ValueError("b must be positive")
    return 1 / b ** n


def convbs_twist(inv: FamilyInvariants, degA: RationalLike, k: RationalLike) -> FamilyInvariants:
    """Invariants of L + k f^*A for a divisor A of degree degA on the base."""
    if inv.push_deg <= 0:
        raise ZeroPushforwardDegree("twist needs deg f_*O(L) > 0")
    degA, k = to_fraction(degA), to_fraction(k)
    if degA <= 0 or k < 0:
        raise ValueError("need degA > 0 and k >= 0")
    return replace(inv,
                   top_self=inv.top_self + k * (inv.n + 1) * inv.fiber_top * degA,
                   push_deg=inv.push_deg + k * inv.h0 * degA)


# ---------------------------------------------------------------------------
# families of K-stable log Fano pairs


@dataclass(frozen=True)
class FanoFamilyData:
    n: int
    v: Fraction
    delta: Fraction
    C: Fraction
    q: int
    antican_top: Fraction
    push_deg_neg_q: Fraction
    h0_fiber: int
    qHC_cartier: bool = True
    twist_integral: bool = True
    gen_finite: bool = False
    globally_generated: bool = False
    k_semistable: bool = True

    def __post_init__(self) -> None:
        for name in ("v", "delta", "C", "antican_top", "push_deg_neg_q"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.n < 1 or self.q < 1 or self.h0_fiber < 0:
            raise ValueError("need n >= 1, q >= 1, h0_fiber >= 0")
        if self.v <= 0:
            raise ValueError("relative volume v must be positive")
        if self.k_semistable and self.antican_top > 0:
            raise ValueError("K-semistable generic fiber forces (-K-D)^{n+1} <= 0")

    def to_json(self) -> dict:
        out = asdict(self)
        for name in ("v", "delta", "C", "antican_top", "push_deg_neg_q"):
            out[name] = fmt(out[name])
        return out

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "FanoFamilyData":
        names = {f.name for f in fields(cls)}
        unknown = set(obj) - names
        if unknown:
            raise ValueError(f"unknown fields: {sorted(unknown)}")
        return cls(**obj)


def _check_threshold(data: FanoFamilyData) -> None:
    if data.delta <= 1 or data.C <= 1:
        raise InvalidThreshold("need delta > 1 and C > 1")


def fano_hc_top(data: FanoFamilyData) -> Fraction:
    """q^{n+1} H_C^{n+1}."""
    _check_threshold(data)
    d, C = data.delta, data.C
    return data.q ** (data.n + 1) * (-data.antican_top) * (d * (C - 1) + 1) / (d - 1)


def fano_hc_pushdeg(data: FanoFamilyData) -> Fraction:
    """deg f_*O(q H_C)."""
    _check_threshold(data)
    if not data.twist_integral:
        raise NonIntegralTwist("q does not make the twist by lambda_CM integral")
    d = data.delta
    return (data.push_deg_neg_q
            - data.C * Fraction(data.q * data.h0_fiber) / (data.v * (data.n + 1))
            * d / (d - 1) * data.antican_top)


def fano_variant_coefficient(data: FanoFamilyData, variant: str) -> Fraction:
    n, q = data.n, data.q
    if variant == "i":
        return Fraction(1)
    if variant == "ii":
        _require(data.gen_finite, "-q(K_F+D_F) generically finite")
        _require(data.h0_fiber >= 1, "h0_fiber >= 1")
        return Fraction(2 * (data.h0_fiber - n), data.h0_fiber)
    if variant == "iii":
        _require(data.globally_generated, "-q(K_F+D_F) globally generated")
        return 2 * q ** n * data.v / (q ** n * data.v + n)
    raise ValueError(f"unknown variant {variant!r}; use i, ii or iii")


def check_fano_slope(data: FanoFamilyData, variant: str) -> CheckReport:
    _check_threshold(data)
    if data.q < 1 / (data.C - 1):
        raise TwistTooSmall(f"q={data.q} < 1/(C-1) = {fmt(1 / (data.C - 1))}")
    _require(data.qHC_cartier, "q H_C Cartier")
    coeff = fano_variant_coefficient(data, variant)
    return compare(f"FANO_{variant.upper()}", fano_hc_top(data),
                   coeff * fano_hc_pushdeg(data), coefficient=coeff)


def fano_as_invariants(data: FanoFamilyData) -> FamilyInvariants:
    """The fibration polarized by q H_C, in the generic FamilyInvariants form."""
    fiber_top = data.q ** data.n * data.v
    return FamilyInvariants(n=data.n, top_self=fano_hc_top(data), push_deg=fano_hc_pushdeg(data),
                            h0=data.h0_fiber, fiber_top=fiber_top,
                            flags=Flags(L_nef=True, push_nef=True, LF_cartier_big_at_q=1))


# ---------------------------------------------------------------------------
# moduli of KSB-stable varieties


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = False

    def __str__(self) -> str:
        return (("[" if self.lo_closed else "(") + f"{fmt(self.lo)}, {fmt(self.hi)}"
                + ("]" if self.hi_closed else ")"))

    def __contains__(self, x: RationalLike) -> bool:
        x = to_fraction(x)
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below


def ample_interval(part: int, n: int, m: int, *, w: RationalLike | None = None,
                   q: int | None = None) -> Interval:
    """Values t for which lambda_CM - t lambda_m is ample."""
    if m < 1 or n < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if part == 1:
        if w is None or to_fraction(w) <= 0:
            raise ValueError("part 1 needs w > 0")
        w = to_fraction(w)
        hi = Fraction(1, m ** (n + 1)) * 2 * w * m ** n / (w * m ** n + n)
    elif part == 2:
        if q is None or q < 1:
            raise ValueError("part 2 needs q >= 1")
        hi = Fraction(1, q ** n * m ** (n + 1))
    else:
        raise ValueError("part must be 1 or 2")
    return Interval(Fraction(0), hi)


def nef_away_coefficient(case: str, n: int, m: int, *, v: RationalLike | None = None,
                         q: int | None = None) -> Fraction:
    """Coefficient c with m^{n+1} lambda_CM - c lambda_m nef away from the boundary."""
    if n < 1 or m < 1:
        raise HypothesisNotMet("need n >= 1 and m >= 1")
    if case in ("1a", "1b"):
        _require(v is not None and to_fraction(v) > 0, "volume v > 0")
        v = to_fraction(v)
        if case == "1a":
            _require(n >= 2 or (n == 1 and m == 1), "n >= 2, or n = m = 1")
            return 4 * v * m ** n / (v * m ** n + 2 * n)
        _require(n == 1 and m >= 2, "n = 1 and m >= 2")
        return 2 * v * m ** n / (v * m ** n + n)
    if case in ("2", "3"):
        _require(q is not None and q >= 1, "q >= 1")
        if case == "2":
            _require(n >= 2 or (n == 1 and m == 1 and q == 1), "n >= 2, or n = m = q = 1")
            return Fraction(2, q ** n)
        return Fraction(1, q ** n)
    raise ValueError(f"unknown case {case!r}; use 1a, 1b, 2 or 3")


def asymptotic_nef_threshold(n: int, m: int) -> Fraction:
    if m < 1 or n < 1:
        raise ValueError("need n >= 1 and m >= 1")
    if 2 * m <= n + 1:
        raise DegenerateDenominator(f"2m={2 * m} <= n+1={n + 1}")
    return Fraction(2 * math.factorial(n + 1) * m, 2 * m - (n + 1))


def lambda_m_leading(n: int, m: int) -> Fraction:
    """The two displayed leading terms of lambda_m in lambda_CM units."""
    if m < 1 or n < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return Fraction(m ** (n + 1), math.factorial(n + 1)) - Fraction(m ** n, 2 * math.factorial(n))
