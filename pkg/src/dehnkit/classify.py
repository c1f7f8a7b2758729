"""Seifert data of torus-knot surgeries, cable slopes and the L-space genus
rules.

Singular fibre orders are signed: the order of the third fibre of
T(a,b)(p/q) is ab*q - p with its sign kept, and mirroring negates every order.
That makes comparisons of oriented surgeries plain multiset comparisons.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .arith import Slope, normalize_slope
from .errors import DomainError, InconclusiveError

SFS = "SFS_over_S2"
CONNECTED_SUM = "ConnectedSumLens"


@dataclass(frozen=True)
class SeifertData:
    kind: str
    fibers: tuple = ()
    lens_pair: Optional[tuple] = None

    def __post_init__(self):
        if self.kind == SFS:
            if 0 in self.fibers:
                raise DomainError("a Seifert fibre cannot have order 0")
            object.__setattr__(self, "fibers", tuple(sorted(self.fibers)))
        elif self.kind != CONNECTED_SUM:
            raise DomainError(f"unknown kind {self.kind!r}")

    @property
    def singular_fibers(self) -> tuple:
        """Fibres of order other than +-1."""
        return tuple(f for f in self.fibers if abs(f) >= 2)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "fibers": list(self.fibers)}
        if self.lens_pair is not None:
            out["lens_pair"] = [list(x) for x in self.lens_pair]
        return out


def _check_torus(a, b, p, q):
    if abs(a) < 2 or abs(b) < 2 or math.gcd(a, b) != 1:
        raise DomainError(f"T({a},{b}) is not a nontrivial torus knot")
    if p < 0:
        raise DomainError("slopes are written with p >= 0")
    if q == 0 or math.gcd(p, q) != 1:
        raise DomainError(f"{p}/{q} is not a valid finite slope")


def moser_classify(a: int, b: int, p: int, q: int) -> SeifertData:
    """Seifert data of T(a,b)(p/q)."""
    _check_torus(a, b, p, q)
    third = a * b * q - p
    if third == 0:
        return SeifertData(CONNECTED_SUM, (), ((a, b), (b, a)))
    return SeifertData(SFS, (a, b, third))


def mirror(s: SeifertData) -> SeifertData:
    """Reverse orientation: negate all signed orders."""
    if s.kind == CONNECTED_SUM:
        (a, b), (c, d) = s.lens_pair
        return SeifertData(CONNECTED_SUM, (), ((a, -b), (c, -d)))
    return SeifertData(SFS, tuple(-f for f in s.fibers))


def mirror_surgery(a: int, b: int, p: int, q: int) -> SeifertData:
    """(-T(a,b))(p/q), as the orientation reversal of T(a,b)(-p/q)."""
    return mirror(moser_classify(a, b, p, -q))


def is_lens_space(s: SeifertData) -> bool:
    if s.kind == CONNECTED_SUM:
        return False
    return len(s.singular_fibers) <= 2


def sfs_equal(s1: SeifertData, s2: SeifertData) -> bool:
    """Compare two oriented spaces through their signed fibre multisets.

    Decidable when both have three singular fibres (unique fibration). If
    exactly one does, the other is a lens space or reducible, so they differ.
    Anything else is outside this test and raises InconclusiveError.
    """
    def rigid(s):
        return s.kind == SFS and len(s.singular_fibers) >= 3

    r1, r2 = rigid(s1), rigid(s2)
    if r1 and r2:
        return s1.singular_fibers == s2.singular_fibers
    if r1 != r2:
        return False
    raise InconclusiveError("neither space has a unique Seifert fibration")


def cable_fill_reduce(r: int, s: int, p: int, q: int) -> Optional[Slope]:
    """If |qrs - p| = 1, the slope p/(q s^2) with C_{r,s}(K)(p/q) = K(p/(q s^2)).

    The condition itself forces gcd(p, q) = 1, so unreduced pairs simply
    give None.
    """
    if s <= 1:
        raise DomainError("cables are taken with s > 1")
    if math.gcd(r, s) != 1:
        raise DomainError("need gcd(r,s) = 1")
    if abs(q * r * s - p) != 1:
        return None
    return normalize_slope(p, q * s * s)


def _signed_divisors(k: int) -> Iterator[int]:
    k = abs(k)
    for d in range(1, math.isqrt(k) + 1):
        if k % d == 0:
            for e in {d, k // d}:
                yield e
                yield -e


def cable_slope_witnesses(max_p: int, max_s: int) -> Iterator[tuple[int, int, int, int]]:
    """All (r, s, p, q) with coprime pairs, 2 <= s <= max_s, 1 <= p <= max_p,
    q != 0 and |qrs - p| = 1. The set is finite since qr divides p +- 1."""
    for s in range(2, max_s + 1):
        for p in range(1, max_p + 1):
            for target in (p - 1, p + 1):
                if target == 0 or target % s:
                    continue
                k = target // s
                for q in sorted(_signed_divisors(k)):
                    r = k // q
                    if math.gcd(r, s) == 1 and math.gcd(p, q) == 1:
                        yield r, s, p, q


def enumerate_cable_slopes(max_p: int, max_s: int) -> set[Slope]:
    if max_p < 2 or max_s < 2:
        raise DomainError("bounds must be at least 2")
    return {normalize_slope(p, q * s * s) for r, s, p, q in cable_slope_witnesses(max_p, max_s)}


def cable_genus_lower_bound(g: int, r: int, s: int) -> int:
    """s*g + (s-1)(|r|-1)/2; the product is even whenever gcd(r,s) = 1."""
    if g < 0 or s < 1 or math.gcd(r, s) != 1:
        raise DomainError("need g >= 0, s >= 1 and gcd(r,s) = 1")
    twice = (s - 1) * (abs(r) - 1)
    if twice % 2:
        raise ArithmeticError(f"(s-1)(|r|-1) = {twice} is odd")
    return s * g + twice // 2


def lspace_surgery_check(g: int, is_lspace_knot: bool, slope: Slope) -> bool:
    """For positive p/q: K(p/q) is an L-space iff K is an L-space knot and
    p/q >= 2g - 1."""
    if slope.p <= 0 or slope.q <= 0:
        raise DomainError(f"slope {slope} is not positive")
    return bool(is_lspace_knot) and Fraction(slope.p, slope.q) >= 2 * g - 1


def lspace_genus_bound(p: int) -> int:
    """Largest g with 2g - 1 <= p."""
    if p < 1:
        raise DomainError("p must be positive")
    return (p + 1) // 2
