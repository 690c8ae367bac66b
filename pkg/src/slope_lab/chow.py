"""Numerical Chow rings of towers of projective bundles over a curve.

The base is a curve T with A(T) = Q[pt]/(pt^2). Over any ring R in the tower,
P_R(E) (projective bundle of quotients, rank r) has
A = R[H] / (H^r - c_1 H^{r-1} + c_2 H^{r-2} - ... ), and integrating a class
means integrating its H^{r-1} coefficient on the base.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Element = Tuple  # ring-specific nested tuples


class CurveRing:
    """A(T) for a curve: pairs (c0, c1) meaning c0 + c1*pt."""

    def zero(self) -> Element:
        return (Fraction(0), Fraction(0))

    def one(self) -> Element:
        return (Fraction(1), Fraction(0))

    def point(self, deg=1) -> Element:
        return (Fraction(0), Fraction(deg))

    def scalar(self, c) -> Element:
        return (Fraction(c), Fraction(0))

    def add(self, x: Element, y: Element) -> Element:
        return (x[0] + y[0], x[1] + y[1])

    def scale(self, c, x: Element) -> Element:
        return (c * x[0], c * x[1])

    def mul(self, x: Element, y: Element) -> Element:
        return (x[0] * y[0], x[0] * y[1] + x[1] * y[0])

    def integrate(self, x: Element) -> Fraction:
        return x[1]


class ProjectiveBundleRing:
    """A(P_R(E)) for a bundle E on the ring `base` with Chern classes c_1..c_r."""

    def __init__(self, base, chern: Sequence[Element], rank: int):
        if rank < 1 or len(chern) > rank:
            raise ValueError("need rank >= 1 and at most rank Chern classes")
        self.base = base
        self.rank = rank
        self.chern = list(chern) + [base.zero()] * (rank - len(chern))

    def zero(self) -> Element:
        return tuple(self.base.zero() for _ in range(self.rank))

    def one(self) -> Element:
        return self.pullback(self.base.one())

    def scalar(self, c) -> Element:
        return self.pullback(self.base.scalar(c))

    def pullback(self, b: Element) -> Element:
        return (b,) + tuple(self.base.zero() for _ in range(self.rank - 1))

    def _reduce(self, coeffs: list) -> Element:
        # H^k = sum_{i=1}^{r} (-1)^{i-1} c_i H^{k-i} for k >= r
        B, r = self.base, self.rank
        coeffs = list(coeffs)
        for k in range(len(coeffs) - 1, r - 1, -1):
            a = coeffs[k]
            coeffs[k] = B.zero()
            for i in range(1, r + 1):
                term = B.mul(a, self.chern[i - 1])
                if i % 2 == 0:
                    term = B.scale(-1, term)
                coeffs[k - i] = B.add(coeffs[k - i], term)
        coeffs += [B.zero()] * (r - len(coeffs))
        return tuple(coeffs[:r])

    def H(self) -> Element:
        B = self.base
        return self._reduce([B.zero(), B.one()])

    def add(self, x: Element, y: Element) -> Element:
        return tuple(self.base.add(a, b) for a, b in zip(x, y))

    def scale(self, c, x: Element) -> Element:
        return tuple(self.base.scale(c, a) for a in x)

    def mul(self, x: Element, y: Element) -> Element:
        B = self.base
        out = [B.zero() for _ in range(2 * self.rank - 1)]
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                out[i + j] = B.add(out[i + j], B.mul(a, b))
        return self._reduce(out)

    def power(self, x: Element, k: int) -> Element:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def integrate(self, x: Element) -> Fraction:
        return self.base.integrate(x[self.rank - 1])


def product(ring, factors: Iterable[Element]) -> Element:
    out = ring.one()
    for f in factors:
        out = ring.mul(out, f)
    return out


def chern_of_split(ring, line_classes: Sequence[Element]) -> list:
    """c_1..c_k of a direct sum of line bundles with the given first Chern classes."""
    total = [ring.one()]
    for c in line_classes:
        nxt = [ring.zero() for _ in range(len(total) + 1)]
        for i, t in enumerate(total):
            nxt[i] = ring.add(nxt[i], t)
            nxt[i + 1] = ring.add(nxt[i + 1], ring.mul(t, c))
        total = nxt
    return total[1:]


def bundle_over_curve(rank: int, degree) -> ProjectiveBundleRing:
    """P_T(E) for E of the given rank and degree on a curve T."""
    T = CurveRing()
    return ProjectiveBundleRing(T, [T.point(degree)], rank)


def linear_class(ring: ProjectiveBundleRing, x_H, x_F) -> Element:
    """x_H * H + x_F * (fiber over a point of the base curve)."""
    T = ring.base
    return ring.add(ring.scale(Fraction(x_H), ring.H()), ring.pullback(T.point(x_F)))


def scroll_tower(degE, summands: Sequence[tuple]) -> tuple:
    """Two-stage tower X = P_S(V) -> S = P_T(E) -> T, E of rank 2 and
    V = sum_i O_S(d_i H_S + a_i F). Returns (A(X), H, H_S, F) with H_S and F
    pulled back to X."""
    S = bundle_over_curve(2, degE)
    T = S.base
    H_S = S.H()
    F_S = S.pullback(T.point(1))
    lines = [S.add(S.scale(Fraction(d), H_S), S.scale(Fraction(a), F_S)) for d, a in summands]
    X = ProjectiveBundleRing(S, chern_of_split(S, lines), len(summands))
    return X, X.H(), X.pullback(H_S), X.pullback(F_S)


def fiber_scroll_ring(d: Sequence[int]) -> tuple:
    """A(F) for the scroll F = P_{P^1}(sum_i O(d_i)); returns (ring, H, f)."""
    ring = bundle_over_curve(len(d), sum(d))
    return ring, ring.H(), ring.pullback(ring.base.point(1))
