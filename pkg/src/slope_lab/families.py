"""Explicit polarized fibrations over a curve and their invariants.

Projective bundle families (projective spaces, Veronese surfaces, quadrics,
rational normal scrolls and double covers of each) are built from a bundle
E on the base curve, known only through rank, degree and mu_-(E). Families of
hypersurfaces in P(a) x P^1 are built from weights and degrees.

Every constructor returns a FamilyResult: the invariants plus the input that
produced them and the closed form behind each number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Mapping, Optional, Sequence

from . import chow
from .errors import (AssumptionViolated, BranchTooSmall, NonpositiveDegree, NotNef,
                     NotWellFormed, ParamRange, RankRange, WrongRank)
from .hn_engine import IntersectionModel, miyaoka_nef_check
from .rational import RationalLike, fmt, to_fraction
from .slope_theorems import (FamilyInvariants, Flags, bs_invariant, check_f_positive,
                             slope)
from .wps_ring import WeightVector, cartier_index, graded_dim, is_well_formed


@dataclass(frozen=True)
class BundleOnCurve:
    rank: int
    degree: Fraction
    mu_minus: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree", to_fraction(self.degree))
        object.__setattr__(self, "mu_minus", to_fraction(self.mu_minus))
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.mu_minus > self.degree / self.rank:
            raise ValueError("mu_minus cannot exceed the average slope degree/rank")

    @property
    def slope(self) -> Fraction:
        return self.degree / self.rank

    @property
    def nef(self) -> bool:
        return self.mu_minus >= 0

    def to_json(self) -> dict:
        return {"rank": self.rank, "degree": fmt(self.degree), "mu_minus": fmt(self.mu_minus)}


@dataclass(frozen=True)
class FamilyResult:
    kind: str
    inputs: dict
    invariants: FamilyInvariants
    extras: dict = field(default_factory=dict)
    formulas: dict = field(default_factory=dict)

    @property
    def slope(self) -> Fraction:
        return slope(self.invariants)

    @property
    def bs(self) -> Fraction:
        return bs_invariant(self.invariants)

    def to_json(self) -> dict:
        rep = check_f_positive(self.invariants)
        out = {"kind": self.kind, "input": self.inputs,
               "invariants": self.invariants.to_json(),
               "slope": fmt(self.slope), "bs": fmt(self.bs), "f_positive": rep.holds}
        out.update(self.extras)
        out["formulas"] = self.formulas
        return out


def sym_power_degree(E: BundleOnCurve, k: int) -> tuple[int, Fraction]:
    """Rank and degree of Sym^k E."""
    if k < 1:
        raise ValueError("k must be positive")
    r = math.comb(E.rank + k - 1, k)
    return r, r * k * E.degree / E.rank


def sym_power_degree_split(degrees: Sequence[RationalLike], k: int) -> tuple[int, Fraction]:
    """Same for a split bundle, by summing over the degree-k monomials."""
    degs = [to_fraction(b) for b in degrees]
    monos = list(combinations_with_replacement(range(len(degs)), k))
    return len(monos), sum((sum(degs[i] for i in mono) for mono in monos), Fraction(0))


# ---------------------------------------------------------------------------
# projective bundle families


def _nef_positive(E: BundleOnCurve) -> None:
    if not E.nef:
        raise NotNef(f"mu_minus(E) = {fmt(E.mu_minus)} < 0")
    if E.degree <= 0:
        raise NonpositiveDegree(f"deg E = {fmt(E.degree)} <= 0")


def _bundle_flags(**kw) -> Flags:
    base = dict(L_nef=True, push_nef=True, gen_finite_at_q=1, LF_cartier_gg_at_q=1,
                LF_cartier_big_at_q=1, birational=True)
    base.update(kw)
    return Flags(**base)


def family_pn(E: BundleOnCurve) -> FamilyResult:
    _nef_positive(E)
    if E.rank < 2:
        raise WrongRank("a family of projective spaces needs rank E >= 2")
    n = E.rank - 1
    inv = FamilyInvariants(n=n, top_self=E.degree, push_deg=E.degree, h0=E.rank,
                           fiber_top=1, flags=_bundle_flags())
    return FamilyResult("pn", {"kind": "pn", **E.to_json()}, inv,
                        formulas={"top_self": "H^(n+1) = deg E", "push_deg": "deg E",
                                  "h0": "rank E", "fiber_top": "1"})


def family_veronese(E: BundleOnCurve) -> FamilyResult:
    if E.rank != 3:
        raise WrongRank("Veronese surfaces need rank E = 3")
    _nef_positive(E)
    _, push = sym_power_degree(E, 2)
    inv = FamilyInvariants(n=2, top_self=8 * E.degree, push_deg=push, h0=6, fiber_top=4,
                           flags=_bundle_flags())
    return FamilyResult("veronese", {"kind": "veronese", **E.to_json()}, inv,
                        formulas={"top_self": "(2H)^3 = 8 deg E",
                                  "push_deg": "deg Sym^2 E = 4 deg E",
                                  "h0": "6", "fiber_top": "4"})


def family_quadric(E: BundleOnCurve, degA: RationalLike) -> FamilyResult:
    """Quadric fibration X in |2H + f^*A| inside P(E), polarized by H."""
    _nef_positive(E)
    if E.rank < 3:
        raise WrongRank("quadrics of dimension n >= 1 need rank E = n+2 >= 3")
    degA = to_fraction(degA)
    n = E.rank - 2
    top = 2 * E.degree + degA
    inv = FamilyInvariants(n=n, top_self=top, push_deg=E.degree, h0=E.rank, fiber_top=2,
                           flags=_bundle_flags())
    threshold = -2 * E.degree / E.rank
    return FamilyResult("quadric", {"kind": "quadric", **E.to_json(), "degA": fmt(degA)}, inv,
                        extras={"f_positive_threshold_degA": fmt(threshold),
                                "divisor_class_nef": miyaoka_nef_check(E.mu_minus, 2, degA),
                                "notes": "general member of |2H + A| assumed normal"},
                        formulas={"top_self": "H^(n+1)(2H + A) = 2 deg E + deg A",
                                  "push_deg": "deg E", "h0": "rank E", "fiber_top": "2"})


def family_quadric_low_rank(n: int, r: int, dd: int) -> FamilyResult:
    """E = O^(n+2-r) + O(dd)^r on P^1 with deg A = -2 dd: quadrics of rank r."""
    if n < 1 or not 3 <= r <= n + 2:
        raise RankRange(f"need 3 <= r <= n+2 = {n + 2}")
    if dd < 1:
        raise ParamRange("dd must be positive")
    mu_minus = 0 if r < n + 2 else dd
    E = BundleOnCurve(n + 2, r * dd, mu_minus)
    res = family_quadric(E, -2 * dd)
    return replace(res, kind="quadric_low_rank",
                   inputs={"kind": "quadric_low_rank", "n": n, "r": r, "dd": dd},
                   extras={**res.extras, "E": E.to_json(), "degA": fmt(-2 * dd)})


@dataclass(frozen=True)
class ScrollFamily:
    E: BundleOnCurve
    d: tuple[int, ...]
    a: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        object.__setattr__(self, "a", tuple(to_fraction(x) for x in self.a))
        if self.E.rank != 2:
            raise WrongRank("scrolls are built over P(E) with rank E = 2")
        if not self.d or len(self.d) != len(self.a):
            raise ValueError("d and a must be nonempty lists of equal length")
        if any(x < 0 for x in self.d) or any(x < y for x, y in zip(self.d, self.d[1:])):
            raise ValueError("d must be nonincreasing and nonnegative")
        for i, (di, ai) in enumerate(zip(self.d, self.a), 1):
            if ai + di * self.E.mu_minus < 0:
                raise AssumptionViolated(f"a_{i} + d_{i} mu_minus(E) < 0")

    @property
    def n(self) -> int:
        return len(self.d)


def scroll_top_self(s: ScrollFamily) -> Fraction:
    d, a, degE = s.d, s.a, s.E.degree
    n = len(d)
    quad = sum(x * x for x in d) + sum(d[i] * d[j] for i in range(n) for j in range(i + 1, n))
    mixed = sum(2 * d[i] * a[i] for i in range(n)) + sum(
        d[i] * a[j] for i in range(n) for j in range(n) if i != j)
    return quad * degE + mixed


def scroll_push_deg(s: ScrollFamily) -> Fraction:
    return sum((math.comb(di + 1, 2) * s.E.degree + (di + 1) * ai for di, ai in zip(s.d, s.a)),
               Fraction(0))


def family_scroll(s: ScrollFamily) -> FamilyResult:
    n, sd = s.n, sum(s.d)
    flags = _bundle_flags(gen_finite_at_q=1 if sd > 0 else None,
                          LF_cartier_big_at_q=1 if sd > 0 else None, birational=sd > 0)
    inv = FamilyInvariants(n=n, top_self=scroll_top_self(s), push_deg=scroll_push_deg(s),
                           h0=sd + n, fiber_top=sd, flags=flags)
    inputs = {"kind": "scroll", "degE": fmt(s.E.degree), "mu_minus": fmt(s.E.mu_minus),
              "d": list(s.d), "a": [fmt(x) for x in s.a]}
    return FamilyResult("scroll", inputs, inv,
                        extras={"notes": "deg f_*O(L) > 0 iff E is unstable or some "
                                         "a_i + d_i mu_minus(E) > 0"},
                        formulas={"top_self": "(sum d_i^2 + sum_{i<j} d_i d_j) deg E"
                                              " + sum 2 d_i a_i + sum_{i!=j} d_i a_j",
                                  "push_deg": "sum [C(d_i+1, 2) deg E + (d_i+1) a_i]",
                                  "h0": "sum (d_i + 1)", "fiber_top": "sum d_i"})


# ---------------------------------------------------------------------------
# double covers


def _double_cover_flags(base: FamilyResult, branch: Mapping[str, int]) -> dict:
    n, kind = base.invariants.n, base.kind
    if kind == "pn":
        m = branch["m"]
        if m < 2:
            raise BranchTooSmall("projective spaces need m >= 2")
        return {"kodaira_nonneg": n >= 2 and m >= n + 1, "curve_special": n == 1 and m >= 3}
    if kind == "veronese":
        m = branch["m"]
        if m < 3:
            raise BranchTooSmall("Veronese surfaces need m >= 3")
        return {"kodaira_nonneg": True, "curve_special": False}
    if kind in ("quadric", "quadric_low_rank"):
        m = branch["m"]
        if m < 2:
            raise BranchTooSmall("quadrics need m >= 2")
        return {"kodaira_nonneg": n >= 2 and m >= n, "curve_special": n == 1}
    if kind == "scroll":
        alpha, beta = branch["alpha"], branch["beta"]
        d = base.inputs["d"]
        if alpha < 2:
            raise BranchTooSmall("scrolls need alpha >= 2")
        if alpha * d[-1] + beta <= 0:
            raise BranchTooSmall("scrolls need alpha d_n + beta > 0")
        if n == 1:
            return {"kodaira_nonneg": False,
                    "curve_special": (alpha - 1) * d[0] + beta - 1 > 0}
        return {"kodaira_nonneg": alpha >= n and (alpha - n) * d[0] + sum(d) - 2 + beta >= 0,
                "curve_special": False}
    raise ValueError(f"no double cover construction for kind {kind!r}")


def family_double_cover(base: FamilyResult, **branch: int) -> FamilyResult:
    """Double cover of X branched along a smooth member of |2(m L + ...)|
    (or |2(alpha L + beta H_S + ...)| for scrolls), polarized by the pullback
    of L."""
    extra_flags = _double_cover_flags(base, branch)
    inv = base.invariants
    flags = replace(inv.flags, birational=False, **extra_flags)
    new = replace(inv, top_self=2 * inv.top_self, fiber_top=2 * inv.fiber_top, flags=flags)
    inputs = {"kind": "double_cover", "base": base.inputs, **branch}
    return FamilyResult("double_cover", inputs, new,
                        extras={"base_kind": base.kind,
                                "notes": "branch divisor assumed smooth"},
                        formulas={"top_self": "2 L^(n+1)", "push_deg": "unchanged",
                                  "h0": "unchanged", "fiber_top": "2 L_F^n"})


# ---------------------------------------------------------------------------
# tower oracle


def tower_intersection(E: BundleOnCurve, summand_classes: Sequence[tuple], x_H: RationalLike,
                       x_HS: RationalLike, x_F: RationalLike) -> Fraction:
    """(x_H H + x_HS H_S + x_F F)^(n+1) on the scroll tower, computed in the
    Chow ring rather than from any closed form."""
    if E.rank != 2:
        raise WrongRank("the scroll tower needs rank E = 2")
    for d, a in summand_classes:
        if to_fraction(a) + d * E.mu_minus < 0:
            raise AssumptionViolated("a_i + d_i mu_minus(E) < 0")
    X, H, HS, F = chow.scroll_tower(E.degree, summand_classes)
    cls = X.add(X.add(X.scale(to_fraction(x_H), H), X.scale(to_fraction(x_HS), HS)),
                X.scale(to_fraction(x_F), F))
    return X.integrate(X.power(cls, len(summand_classes) + 1))


def bundle_intersection(rank: int, degree: RationalLike,
                        factors: Sequence[tuple]) -> Fraction:
    """Product of classes x_H H + x_F F on P_T(E), one per factor; the
    number of factors must equal dim P_T(E) = rank."""
    if len(factors) != rank:
        raise ValueError("need exactly rank factors for a top intersection")
    ring = chow.bundle_over_curve(rank, to_fraction(degree))
    return ring.integrate(chow.product(ring, (chow.linear_class(ring, x, y)
                                              for x, y in factors)))


def scroll_fiber_model(d: Sequence[int], classes: Sequence[tuple]) -> IntersectionModel:
    """Intersection table of the classes x H + y f on the fiber scroll
    P_{P^1}(O(d_1) + ... + O(d_n))."""
    ring, H, f = chow.fiber_scroll_ring(d)
    elems = [ring.add(ring.scale(Fraction(x), H), ring.scale(Fraction(y), f))
             for x, y in classes]
    n = len(d)
    table = {}
    for k in combinations_with_replacement(range(1, len(classes) + 1), n):
        table[k] = ring.integrate(chow.product(ring, (elems[i - 1] for i in k)))
    return IntersectionModel(n, len(classes), table)


# ---------------------------------------------------------------------------
# hypersurfaces in weighted projective space


@dataclass(frozen=True)
class WpsHypersurfaceFamily:
    a: WeightVector
    d: int
    e: int
    h: int
    l: int

    def __init__(self, a, d: int, e: int, h: int, l: int, require_well_formed: bool = True):
        wv = a if isinstance(a, WeightVector) else WeightVector(a)
        if min(d, e, h) < 1 or l < 0:
            raise ParamRange("need d, e, h > 0 and l >= 0")
        if len(wv) < 3:
            raise ParamRange("need at least three weights (fiber dimension n >= 1)")
        if require_well_formed and not is_well_formed(wv):
            raise NotWellFormed(f"weights {list(wv)} are not well-formed")
        if graded_dim(wv, e) - graded_dim(wv, e - d) <= 0:
            raise AssumptionViolated("dim S_e - dim S_(e-d) must be positive")
        if d % cartier_index(wv):
            raise AssumptionViolated(f"lcm of the weights {cartier_index(wv)} must divide d={d}")
        for name, value in (("a", wv), ("d", d), ("e", e), ("h", h), ("l", l)):
            object.__setattr__(self, name, value)

    @property
    def n(self) -> int:
        return self.a.dim - 1

    def to_json(self) -> dict:
        return {"kind": "wps", "a": list(self.a), "d": self.d, "e": self.e, "h": self.h,
                "l": self.l}


def wps_family(fam: WpsHypersurfaceFamily) -> FamilyResult:
    a, d, e, h, l, n = fam.a, fam.d, fam.e, fam.h, fam.l, fam.n
    prod = a.weight_product
    Se, Sed = graded_dim(a, e), graded_dim(a, e - d)
    top = Fraction(e ** (n + 1) * l + (n + 1) * e ** n * h * d, prod)
    push = h * (Se - Sed) + l * Sed
    lcm = cartier_index(a)
    q0 = lcm // math.gcd(lcm, e)
    flags = Flags(L_nef=True, push_nef=True, gen_finite_at_q=q0, LF_cartier_gg_at_q=q0,
                  LF_cartier_big_at_q=q0, kodaira_nonneg=d >= a.weight_sum)
    inv = FamilyInvariants(n=n, top_self=top, push_deg=push, h0=Se - Sed,
                           fiber_top=Fraction(e ** n * d, prod), flags=flags)
    sign = (d > a.weight_sum) - (d < a.weight_sum)
    extras = {"kodaira": {-1: "fano", 0: "calabi_yau", 1: "canonically_polarized"}[sign],
              "relative_canonical": e == d - a.weight_sum and h == l,
              "well_formed": is_well_formed(a)}
    inputs = fam.to_json()
    if not extras["well_formed"]:
        inputs["strict"] = False
    return FamilyResult("wps", inputs, inv, extras=extras,
                        formulas={"top_self": "(e^(n+1) l + (n+1) e^n h d) / prod(a)",
                                  "push_deg": "h (S_e - S_(e-d)) + l S_(e-d)",
                                  "h0": "S_e - S_(e-d)",
                                  "fiber_top": "e^n d / prod(a)"})


def wps_special_slope(fam: WpsHypersurfaceFamily) -> Fraction:
    """Slope when e = 1 < d, from the number of weights equal to 1."""
    if not (fam.e == 1 < fam.d):
        raise AssumptionViolated("needs e = 1 < d")
    ones = sum(1 for x in fam.a if x == 1)
    if ones == 0:
        raise AssumptionViolated("needs at least one weight equal to 1")
    n = fam.n
    value = (Fraction((n + 1) * fam.d) + Fraction(fam.l, fam.h)) / (ones * fam.a.weight_product)
    assert value == wps_family(fam).slope
    return value


def sylvester_sequence(count: int) -> list[int]:
    seq: list[int] = []
    for _ in range(count):
        seq.append(1 + math.prod(seq))
    return seq


@dataclass(frozen=True)
class SylvesterResult:
    sequence: list
    family: WpsHypersurfaceFamily
    slope: Fraction


def sylvester_family(n: int, h: int = 1) -> SylvesterResult:
    if n < 1:
        raise ParamRange("n must be positive")
    s = sylvester_sequence(n + 1)
    P = s[n] - 1                      # product of s_0..s_(n-1)
    b = [P // s[i] for i in range(n)]
    weights = [1, 1] + [3 * x for x in b]
    d = 3 * P
    assert 1 + sum(weights) == d
    fam = WpsHypersurfaceFamily(weights, d, 1, h, h)
    value = Fraction(3 * (n + 1) * P + 1, 2 * 3 ** n * P ** (n - 1))
    assert wps_family(fam).slope == value
    if n >= 2:
        assert value < 1
    return SylvesterResult(s, fam, value)


def example_i(n: int, m: int, alpha: int, h: int = 1) -> FamilyResult:
    """a = (1, 1, alpha, ..., alpha), d = m alpha, e = 1, h = l."""
    if n < 1 or m < 1 or alpha < 1:
        raise ParamRange("need n, m, alpha >= 1")
    fam = WpsHypersurfaceFamily([1, 1] + [alpha] * n, m * alpha, 1, h, h)
    return wps_family(fam)


def example_i_slope(n: int, m: int, alpha: int) -> Fraction:
    return Fraction((n + 1) * m * alpha + 1, 2 * alpha ** n)


def example_iii(n: int, h: int = 1) -> FamilyResult:
    """a = (1, ..., 1, 2, n+3) with n ones, e = 1, d = 2(n+3), h = l.

    For n = 1 the weights (1, 2, 4) are not well-formed; the numbers are
    still computed from the same formulas.
    """
    if n < 1:
        raise ParamRange("n must be positive")
    fam = WpsHypersurfaceFamily([1] * n + [2, n + 3], 2 * (n + 3), 1, h, h,
                                require_well_formed=n >= 2)
    return wps_family(fam)


def example_iii_slope(n: int) -> Fraction:
    return Fraction(1, 2 * n * (n + 3)) + Fraction(n + 1, n)


def example_iv(h: int = 1) -> FamilyResult:
    return wps_family(WpsHypersurfaceFamily([1, 1, 8, 12], 24, 2, h, h))


@dataclass(frozen=True)
class ExampleIVBis:
    slope: Fraction
    threshold: Fraction
    below_threshold: bool
    LF_cartier: bool


def example_iv_bis(alpha: int, beta: int, k: int) -> ExampleIVBis:
    """a = (1, 1, alpha k, beta k), e = k, d = alpha beta k, h = l; the
    threshold is 4(h0 - 2)/h0 with h0 = k + 1."""
    if alpha < 2 or beta < 2 or k < 1:
        raise ParamRange("need alpha, beta >= 2 and k >= 1")
    value = Fraction(k, alpha * beta * (k + 1)) + Fraction(3 * k, k + 1)
    threshold = Fraction(4 * (k - 1), k + 1)
    coprime = math.gcd(alpha, beta) == math.gcd(alpha, k) == math.gcd(beta, k) == 1
    return ExampleIVBis(value, threshold, value < threshold, coprime)


def example_iv_bis_family(alpha: int, beta: int, k: int, h: int = 1) -> FamilyResult:
    return wps_family(WpsHypersurfaceFamily([1, 1, alpha * k, beta * k], alpha * beta * k,
                                            k, h, h))


# ---------------------------------------------------------------------------
# JSON front door


def _bundle(obj: Mapping[str, Any], rank: Optional[int] = None) -> BundleOnCurve:
    return BundleOnCurve(rank if rank is not None else obj["rank"], to_fraction(obj["degree"]),
                         to_fraction(obj["mu_minus"]))


def build_family(obj: Mapping[str, Any]) -> FamilyResult:
    """Construct a family from its JSON description (the "input" block)."""
    kind = obj.get("kind")
    if kind == "pn":
        return family_pn(_bundle(obj))
    if kind == "veronese":
        return family_veronese(_bundle(obj))
    if kind == "quadric":
        return family_quadric(_bundle(obj), to_fraction(obj["degA"]))
    if kind == "quadric_low_rank":
        return family_quadric_low_rank(obj["n"], obj["r"], obj["dd"])
    if kind == "scroll":
        E = BundleOnCurve(2, to_fraction(obj["degE"]), to_fraction(obj["mu_minus"]))
        return family_scroll(ScrollFamily(E, obj["d"], [to_fraction(x) for x in obj["a"]]))
    if kind == "double_cover":
        base = build_family(obj["base"])
        branch = {k: obj[k] for k in ("m", "alpha", "beta") if k in obj}
        return family_double_cover(base, **branch)
    if kind == "wps":
        return wps_family(WpsHypersurfaceFamily(obj["a"], obj["d"], obj["e"], obj["h"], obj["l"],
                                                require_well_formed=obj.get("strict", True)))
    raise ValueError(f"unknown family kind {kind!r}")
