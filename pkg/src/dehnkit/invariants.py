"""Casson-Walker invariants and Heegaard Floer d-invariants of lens spaces
and knot surgeries, all as exact rationals.

Lens space convention: L(p, q) is p/q surgery on the unknot, so that
lambda(L(3, 1)) = -1/36.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import mod_inverse, neg_continued_fraction
from .errors import DomainError


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) stored as orientation sign times L(p, q0) with 0 < q0 < p."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or math.gcd(self.p, self.q) != 1:
            raise DomainError(f"L({self.p},{self.q}) needs p >= 1 and gcd(p,q) = 1")

    @property
    def sign(self) -> int:
        return -1 if self.q < 0 else 1

    @property
    def canonical_q(self) -> int:
        return abs(self.q) % self.p

    def casson_walker(self) -> Fraction:
        return cw_lens(self.p, self.q)


def cw_lens(p: int, q: int) -> Fraction:
    """Casson-Walker invariant of L(p, q).

    For 0 < q < p with p/q = [a1, ..., an] (negative continued fraction) and
    r = q^-1 mod p this is -(q/p + r/p + sum(a_i - 3)) / 24. Negative q uses
    lambda(L(p, q)) = -lambda(L(p, -q)); q only matters mod p otherwise.
    """
    lens = LensSpace(p, q)
    if p == 1:
        return Fraction(0)
    q0 = lens.canonical_q
    terms = neg_continued_fraction(p, q0)
    r = mod_inverse(q0, p)
    value = -(Fraction(q0, p) + Fraction(r, p) + sum(a - 3 for a in terms)) / 24
    return lens.sign * value


def cw_surgery(dd: int, p: int, q: int) -> Fraction:
    """Boyer-Lines: lambda(K(p/q)) = lambda(L(p,q)) + q/(2p) * Delta''_K(1).

    ``dd`` is Delta''_K(1) of the symmetric normalized Alexander polynomial.
    """
    if p <= 0:
        raise DomainError("the surgery formula needs p >= 1 (slope nonzero, p >= 0)")
    return cw_lens(p, q) + Fraction(q, 2 * p) * dd


def prop51_required_sum(p: int) -> Optional[int]:
    """The integer Delta''_K(1) + Delta''_K'(1) forced by K(p) = K'(-p), or
    None when 6 does not divide p^2 - 3p + 2 and no such pair can exist."""
    if p < 1:
        raise DomainError("p must be positive")
    rhs = p * p - 3 * p + 2
    return rhs // 6 if rhs % 6 == 0 else None


def d_lens(p: int, q: int, i: int) -> Fraction:
    """d-invariant d(p, q, i) of the lens space via the recursion

        d(p, q, i) = -1/4 + (p + q - 1 - 2i)^2 / (4pq) - d(q, p mod q, i mod q)

    ending at d(1, 0, 0) = 0.
    """
    if p < 1 or q < 0 or math.gcd(p, q) != 1:
        raise DomainError(f"d({p},{q},.) needs p >= 1, q >= 0 and gcd(p,q) = 1")
    if not 0 <= i < p + q:
        raise DomainError(f"index {i} outside [0, {p + q})")
    total = Fraction(0)
    sign = 1
    while q:
        total += sign * (Fraction(-1, 4) + Fraction((p + q - 1 - 2 * i) ** 2, 4 * p * q))
        p, q, i = q, p % q, i % q
        sign = -sign
    return total


def _v(values: Sequence[int], j: int) -> int:
    return values[j] if 0 <= j < len(values) else 0


def d_surgery(p: int, q: int, i: int, v: Sequence[int]) -> Fraction:
    """Ni-Wu: d(K(p/q), i) = d(p,q,i) - 2 max(V_floor(i/q), V_ceil((p-i)/q))."""
    if p < 1 or q < 1:
        raise DomainError(f"slope {p}/{q} is not positive")
    if not 0 <= i < p:
        raise DomainError(f"index {i} outside [0, {p})")
    if any(x < 0 for x in v) or any(x < y for x, y in zip(v, v[1:])):
        raise DomainError("V must be non-negative and non-increasing")
    return d_lens(p, q, i) - 2 * max(_v(v, i // q), _v(v, -(-(p - i) // q)))


def d_gap_max(p: int, qp: int) -> Fraction:
    """max over j of d(p, qp, j) - d(p, 1, 0)."""
    if qp < 2:
        raise DomainError("qp must be at least 2")
    if p < 1 or math.gcd(p, qp) != 1:
        raise DomainError(f"gcd({p}, {qp}) != 1")
    base = d_lens(p, 1, 0)
    return max(d_lens(p, qp, j) for j in range(p)) - base
