"""Search for slopes p/q that the linking form forces to be strongly
characterising, with self-contained certificates.

Quadratic reciprocity is only used to choose the congruences that p must
satisfy. Each certificate condition is then checked directly (Euler's
criterion or enumeration of squares), so a certificate never depends on
reciprocity being correctly applied.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .arith import (
    Congruence,
    Slope,
    crt,
    is_prime,
    legendre,
    normalize_slope,
    odd_primes_upto,
    sqrt_mod_prime,
    squares_mod,
)
from .errors import DomainError

BRUTE_FORCE_LIMIT = 10**6


# -- linking form obstructions ------------------------------------------------

def linking_form_value(p: int, q: int, a: int, b: int) -> Fraction:
    """The linking form -(q/p)*a*b on H_1(K(p/q)) = Z/p, as a value in [0, 1)."""
    if p <= 0:
        raise DomainError("the linking form needs p >= 1")
    if math.gcd(p, q) != 1:
        raise DomainError(f"gcd({p}, {q}) != 1")
    return Fraction(-q * a * b, p) % 1


def residue_obstruction(p: int, q: int, qp: int) -> bool:
    """True iff q*qp is a square mod p.

    False means K(p/q) and K'(p/qp) can never be orientation-preservingly
    diffeomorphic, whatever the knots.
    """
    if p < 1 or math.gcd(p, q) != 1 or math.gcd(p, qp) != 1:
        raise DomainError(f"need p >= 1 and q, qp coprime to p (p={p}, q={q}, qp={qp})")
    z = q * qp
    if p > 2 and is_prime(p):
        return legendre(z, p) == 1
    return z % p in squares_mod(p)


# -- torus knot case -----------------------------------------------------------

def torus_counterparts(a: int, b: int, p: int, q: int) -> tuple[Optional[Fraction], Optional[Fraction]]:
    """The only denominators q' for which a torus-knot surgery T(a, abq-p)(p/q')
    could reproduce T(a,b)(p/q); None where the formula's denominator is 0."""
    if abs(a) < 2 or abs(b) < 2 or math.gcd(a, b) != 1:
        raise DomainError(f"T({a},{b}) is not a nontrivial torus knot")
    if math.gcd(p, q) != 1:
        raise DomainError(f"gcd({p}, {q}) != 1")
    d1 = a * p - a * a * b * q
    d2 = b * p - a * b * b * q
    q1 = Fraction(-(p + b), d1) if d1 else None
    q2 = Fraction(-(p + a), d2) if d2 else None
    return q1, q2


def torus_case_excluded(a: int, b: int, p: int, q: int) -> bool:
    """True iff neither candidate q' is a nonzero integer.

    A vanishing denominator is reported as not excluded.
    """
    for qp in torus_counterparts(a, b, p, q):
        if qp is None or (qp.denominator == 1 and qp != 0):
            return False
    return True


# -- twist families ------------------------------------------------------------

@dataclass(frozen=True)
class TwistSlopeFamily:
    """Slopes -m*l^2 + 1/n on K_m paired with -n*l^2 + 1/m on J_n, n != 0."""

    l: int
    m: int

    def numerator(self, n: int) -> int:
        return 1 - self.m * self.l**2 * n

    def denominator(self, n: int) -> int:
        return n

    def slope(self, n: int) -> Slope:
        if n == 0:
            raise DomainError("n must be nonzero")
        return normalize_slope(self.numerator(n), self.denominator(n))

    def counterpart(self, n: int) -> Slope:
        if n == 0 or self.m == 0:
            raise DomainError("n and m must be nonzero")
        return normalize_slope(1 - n * self.l**2 * self.m, self.m)

    def describe(self) -> dict:
        l2 = self.l**2
        return {
            "slope": f"(1 - {self.m * l2}*n)/n",
            "counterpart": f"(1 - {self.m * l2}*n)/{self.m}",
        }


def nonchar_twist_slopes(l: int, m: int) -> TwistSlopeFamily:
    return TwistSlopeFamily(l, m)


# -- congruences and certificates ----------------------------------------------

@dataclass(frozen=True)
class SearchParams:
    C: int
    q: int
    torus: Optional[tuple[int, int]] = None
    prime_limit: int = 10**6
    count: int = 1
    q1mod4: bool = False

    def __post_init__(self):
        if self.C < 8:
            raise DomainError("C must be at least 8")
        if self.q <= self.C or self.q % 2 == 0 or not is_prime(self.q):
            raise DomainError(f"q = {self.q} must be an odd prime greater than C = {self.C}")
        if self.q1mod4 and self.q % 4 != 1:
            raise DomainError(f"q = {self.q} is not 1 mod 4")
        if self.torus is not None:
            a, b = self.torus
            if abs(a) < 2 or abs(b) < 2 or math.gcd(a, b) != 1:
                raise DomainError(f"T({a},{b}) is not a nontrivial torus knot")
        if self.count < 1 or self.prime_limit < 1:
            raise DomainError("count and prime_limit must be positive")


@dataclass
class Condition:
    name: str
    ok: bool
    witness: Any = None

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "witness": self.witness}


@dataclass
class SlopeCertificate:
    p: int
    q: int
    conditions: list = field(default_factory=list)
    torus: Optional[tuple[int, int]] = None

    @property
    def valid(self) -> bool:
        return bool(self.conditions) and all(c.ok for c in self.conditions)

    def to_json(self) -> dict:
        out: dict = {"p": str(self.p), "q": self.q}
        if self.torus is not None:
            out["torus"] = list(self.torus)
        out["conditions"] = [c.to_json() for c in self.conditions]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "SlopeCertificate":
        try:
            conds = [Condition(c["name"], bool(c["ok"]), c.get("witness")) for c in obj.get("conditions", [])]
            torus = tuple(obj["torus"]) if obj.get("torus") is not None else None
            return cls(int(obj["p"]), int(obj["q"]), conds, torus)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed certificate: {exc}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@dataclass
class SearchResult:
    certificates: list
    exhausted: bool
    congruence: Congruence


def smallest_nonresidue(q: int) -> int:
    r = 2
    while legendre(r, q) != -1:
        r += 1
    return r


def build_congruences(C: int, q: int) -> list[Congruence]:
    """p = 1 mod 8, p = 1 mod every odd prime <= C, p = r mod q with r the
    smallest positive non-residue mod q."""
    if C < 8:
        raise DomainError("C must be at least 8")
    if q <= C or q % 2 == 0 or not is_prime(q):
        raise DomainError(f"q = {q} must be an odd prime greater than C = {C}")
    out = [Congruence(1, 8)]
    out += [Congruence(1, pi) for pi in odd_primes_upto(C)]
    out.append(Congruence(smallest_nonresidue(q), q))
    return out


class _ResidueOracle:
    """Square roots mod p: a full table below BRUTE_FORCE_LIMIT, else
    Euler's criterion plus Tonelli-Shanks."""

    def __init__(self, p: int, brute: bool):
        self.p = p
        self.table = squares_mod(p) if brute else None

    def root(self, z: int) -> Optional[int]:
        if self.table is not None:
            return self.table.get(z % self.p)
        return sqrt_mod_prime(z, self.p)

    def is_residue(self, z: int) -> bool:
        return self.root(z) is not None


def _sqrt_witness_ok(witness, z: int, p: int) -> bool:
    return isinstance(witness, int) and witness * witness % p == z % p


def _conditions(p: int, q: int, C: int, torus, brute: bool, claimed: dict | None = None) -> list[Condition]:
    claimed = claimed or {}
    conds = []

    p_prime = p > 2 and is_prime(p)
    conds.append(Condition("p_prime", p_prime, p))
    conds.append(Condition("p_gt_C", p > C, p - C))
    conds.append(Condition("q_odd_prime_gt_C", q > C and q % 2 == 1 and is_prime(q), q))
    conds.append(Condition("q_coprime_p", math.gcd(p, q) == 1, math.gcd(p, q)))
    conds.append(Condition("p_not_pm1_mod_q", p % q not in (1, q - 1), p % q))

    if not p_prime:
        # residue conditions modulo a composite are meaningless here
        return conds
    oracle = _ResidueOracle(p, brute)

    def sqrt_condition(name, zs):
        roots = [oracle.root(z) for z in zs]
        ok = all(r is not None for r in roots)
        given = claimed.get(name)
        if given is not None:
            given = given if isinstance(given, list) else [given]
            ok = ok and len(given) == len(zs) and all(_sqrt_witness_ok(w, z, p) for w, z in zip(given, zs))
        witness = roots if len(zs) > 1 else roots[0]
        conds.append(Condition(name, ok, witness))

    sqrt_condition("small_residues", list(range(1, C + 1)))
    sqrt_condition("minus_one_residue", [-1])
    sqrt_condition("two_residue", [2])

    euler = pow(q, (p - 1) // 2, p)
    q_nonres = oracle.root(q) is None if brute else euler == p - 1
    conds.append(Condition("q_nonresidue_mod_p", q_nonres, euler))

    excluded = all(
        math.gcd(p, qp) == 1 and not oracle.is_residue(q * qp)
        for k in range(1, C + 1) for qp in (k, -k)
    )
    conds.append(Condition("small_counterparts_excluded", excluded, C))

    if torus is not None:
        a, b = torus
        qs = torus_counterparts(a, b, p, q)
        conds.append(Condition(
            "torus_case_excluded",
            torus_case_excluded(a, b, p, q),
            [None if x is None else f"{x.numerator}/{x.denominator}" for x in qs],
        ))
    return conds


def certify(p: int, q: int, C: int, torus=None) -> SlopeCertificate:
    return SlopeCertificate(p, q, _conditions(p, q, C, torus, brute=p < BRUTE_FORCE_LIMIT), torus)


def find_candidates(params: SearchParams) -> SearchResult:
    """Scan p = a, a + M, ... (the CRT solution of the congruence list) up to
    the prime limit and return the first ``count`` valid certificates."""
    cong = crt(build_congruences(params.C, params.q))
    certs = []
    p = cong.a
    while p <= params.prime_limit:
        if p > params.C and is_prime(p):
            cert = certify(p, params.q, params.C, params.torus)
            if cert.valid:
                certs.append(cert)
                if len(certs) == params.count:
                    return SearchResult(certs, False, cong)
        p += cong.m
    return SearchResult(certs, True, cong)


@dataclass
class VerificationReport:
    p: int
    q: int
    entries: list

    @property
    def valid(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "q": self.q,
            "valid": self.valid,
            "conditions": [{"name": e.name, "ok": e.ok} for e in self.entries],
        }


def verify_certificate(cert: SlopeCertificate, C: int, q: int) -> VerificationReport:
    """Recheck every condition from scratch; square-root witnesses stored in
    the certificate must also be correct."""
    claimed = {c.name: c.witness for c in cert.conditions}
    entries = [Condition("q_matches", cert.q == q, cert.q)]
    entries += _conditions(cert.p, q, C, cert.torus, brute=cert.p < BRUTE_FORCE_LIMIT, claimed=claimed)
    listed = {c.name for c in cert.conditions}
    for c in entries[1:]:
        if c.name not in listed:
            c.ok = False
            c.witness = "missing from certificate"
    return VerificationReport(cert.p, q, entries)
