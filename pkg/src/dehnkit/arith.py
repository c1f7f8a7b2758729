"""Exact slope arithmetic and the elementary number theory used by the search.

Every function here works on Python ints (arbitrary precision) and
``fractions.Fraction``; nothing is ever converted to floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import DomainError, InvalidSlopeError, NotInvertibleError

Rational = Fraction


@dataclass(frozen=True, order=True)
class Slope:
    """A surgery slope p/q with p >= 0 and gcd(p, q) = 1; 1/0 is infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p < 0 or (p == 0 and q != 1) or (q == 0 and p != 1) or math.gcd(p, q) != 1:
            raise InvalidSlopeError(f"{p}/{q} is not a normalized slope")

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise DomainError("the slope 1/0 has no rational value")
        return Fraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


class Congruence(NamedTuple):
    """The constraint x = a (mod m), with 0 <= a < m."""

    a: int
    m: int


class APPrimes(NamedTuple):
    primes: list
    exhausted: bool


def congruence(a: int, m: int) -> Congruence:
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    return Congruence(a % m, m)


def normalize_slope(p_raw: int, q_raw: int) -> Slope:
    """Reduce p_raw/q_raw to the representative with p >= 0."""
    if p_raw == 0 and q_raw == 0:
        raise InvalidSlopeError("0/0 is not a slope")
    g = math.gcd(p_raw, q_raw)
    p, q = p_raw // g, q_raw // g
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return Slope(p, q)


def neg_continued_fraction(p: int, q: int) -> list[int]:
    """Expand p/q = a1 - 1/(a2 - 1/(... - 1/an)) with every a_i >= 2.

    Requires p > q >= 1 and gcd(p, q) = 1.

    >>> neg_continued_fraction(7, 2)
    [4, 2]
    """
    if q < 1 or p <= q:
        raise DomainError(f"need p > q >= 1, got {p}/{q}")
    if math.gcd(p, q) != 1:
        raise DomainError(f"{p}/{q} is not reduced")
    terms = []
    while q:
        a = -(-p // q)
        terms.append(a)
        p, q = q, a * q - p
    return terms


def eval_neg_continued_fraction(terms: Iterable[int]) -> Fraction:
    terms = list(terms)
    if not terms:
        raise DomainError("empty continued fraction")
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a - 1 / value
    return value


def mod_inverse(q: int, p: int) -> int:
    """Return r with 0 < r < p and q*r = 1 (mod p).

    For p == 1 every residue is 0, so 0 is returned by convention.
    """
    if p < 1:
        raise DomainError(f"modulus must be positive, got {p}")
    if p == 1:
        return 0
    if math.gcd(q, p) != 1:
        raise NotInvertibleError(f"{q} is not invertible mod {p}")
    return pow(q, -1, p)


# Deterministic Miller-Rabin: bases 2..41 are proven sufficient for every
# n below this bound (Sorenson and Webster, 2015).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_PROVEN_BOUND = 3317044064679887385961981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Below 3.317e24 the fixed Miller-Rabin base set is an unconditional proof.
    Above that bound every base up to 2*ln(n)^2 is tried, which is a proof
    under the generalized Riemann hypothesis (Bach's bound); no heuristic
    randomness is involved in either branch.
    """
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    if n < 53 * 53:
        return True
    if n < _MR_PROVEN_BOUND:
        bases: Iterable[int] = _MR_BASES
    else:
        bases = range(2, min(n - 1, int(2 * math.log(n) ** 2) + 1))
    return all(_strong_probable_prime(n, b) for b in bases)


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def reciprocity_sign(p1: int, p2: int) -> int:
    """(-1)^((p1-1)/2 * (p2-1)/2) for distinct odd primes."""
    _require_odd_prime(p1)
    _require_odd_prime(p2)
    if p1 == p2:
        raise DomainError("reciprocity needs distinct primes")
    return -1 if ((p1 - 1) // 2) * ((p2 - 1) // 2) % 2 else 1


def residues_mod(p: int) -> list[int]:
    """Nonzero squares mod the odd prime p, by enumeration."""
    _require_odd_prime(p)
    return sorted({n * n % p for n in range(1, p)})


def squares_mod(m: int) -> dict[int, int]:
    """Map each square class mod m to its smallest non-negative root."""
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    roots: dict[int, int] = {}
    for n in range(m):
        roots.setdefault(n * n % m, n)
    return roots


def sqrt_mod_witness(z: int, p: int, table: dict[int, int] | None = None) -> int | None:
    """Smallest n >= 0 with n^2 = z (mod p), or None."""
    if table is None:
        table = squares_mod(p)
    return table.get(z % p)


def sqrt_mod_prime(z: int, p: int) -> int | None:
    """Smaller square root of z modulo the odd prime p (Tonelli-Shanks), or
    None if z is a non-residue."""
    z %= p
    if z == 0:
        return 0
    if legendre(z, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    nonres = 2
    while legendre(nonres, p) != -1:
        nonres += 1
    m, c, t, x = s, pow(nonres, q, p), pow(z, q, p), pow(z, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, x = i, b * b % p, t * b * b % p, x * b % p
    return min(x, p - x)


def crt(congruences: Iterable[Congruence]) -> Congruence:
    """Combine pairwise coprime congruences into one modulo their product."""
    congruences = [congruence(*c) for c in congruences]
    for i, (_, m1) in enumerate(congruences):
        for _, m2 in congruences[i + 1:]:
            if math.gcd(m1, m2) != 1:
                raise DomainError(f"moduli {m1} and {m2} are not coprime")
    a, m = 0, 1
    for ai, mi in congruences:
        # solve a + m*t = ai (mod mi)
        t = (ai - a) * pow(m, -1, mi) % mi if mi > 1 else 0
        a, m = a + m * t, m * mi
    return Congruence(a % m, m)


def primes_in_ap(a: int, d: int, count: int, limit: int) -> APPrimes:
    """First ``count`` primes p = a (mod d) with p <= limit, ascending.

    ``exhausted`` is set when the limit was reached before ``count`` primes
    were found.
    """
    if d < 1 or count < 1 or limit < 1:
        raise DomainError("d, count and limit must be positive")
    if math.gcd(a, d) != 1:
        raise DomainError(f"gcd({a}, {d}) != 1: the progression holds at most one prime")
    found = []
    n = a % d or d
    while n <= limit:
        if is_prime(n):
            found.append(n)
            if len(found) == count:
                return APPrimes(found, False)
        n += d
    return APPrimes(found, True)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division up to sqrt(n)."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    factors: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def odd_primes_upto(n: int) -> list[int]:
    return [k for k in range(3, n + 1, 2) if is_prime(k)]


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
