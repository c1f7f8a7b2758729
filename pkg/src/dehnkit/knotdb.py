"""Knot and link records, their JSON-lines format, and built-in fixtures.

One record per line::

    {"type":"knot","name":"K3a1","alexander":[{"e":[-1],"c":1},...],"genus":1,"torus":[3,2],"lspace_knot":true}
    {"type":"link","name":"L9a20","components":2,"linking_number":1,"unknotted":[true,true],"multivariable":[{"e":[2,4],"c":1},...]}
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Union

from .alexander import (
    LaurentPoly1,
    LaurentPoly2,
    eq_up_to_units,
    poly1_to_json,
    poly2_to_json,
    symmetric_normalize,
)
from .errors import DomainError, NotKnotPolynomialError, RecordError


@dataclass(frozen=True)
class KnotRecord:
    name: str
    alexander: LaurentPoly1
    genus: Optional[int] = None
    torus: Optional[tuple[int, int]] = None
    lspace_knot: Optional[bool] = None
    v_sequence: Optional[tuple[int, ...]] = None
    mirror_of: Optional[str] = None

    def to_json(self) -> dict:
        out: dict = {"type": "knot", "name": self.name, "alexander": poly1_to_json(self.alexander)}
        if self.genus is not None:
            out["genus"] = self.genus
        if self.torus is not None:
            out["torus"] = list(self.torus)
        if self.lspace_knot is not None:
            out["lspace_knot"] = self.lspace_knot
        if self.v_sequence is not None:
            out["v_sequence"] = list(self.v_sequence)
        if self.mirror_of is not None:
            out["mirror_of"] = self.mirror_of
        return out


@dataclass(frozen=True)
class LinkRecord:
    name: str
    linking_number: int
    multivariable: LaurentPoly2
    unknotted_components: tuple[bool, bool] = (True, True)
    components: int = 2

    def to_json(self) -> dict:
        return {
            "type": "link",
            "name": self.name,
            "components": self.components,
            "linking_number": self.linking_number,
            "unknotted": list(self.unknotted_components),
            "multivariable": poly2_to_json(self.multivariable),
        }


Record = Union[KnotRecord, LinkRecord]


def torus_alexander(a: int, b: int) -> LaurentPoly1:
    """(t^ab - 1)(t - 1) / ((t^a - 1)(t^b - 1)), computed by exact division.

    Mirror images share the polynomial up to units, so signs of a, b are
    dropped.
    """
    a, b = abs(a), abs(b)
    if a < 2 or b < 2:
        raise DomainError(f"T({a},{b}) is not a nontrivial torus knot")
    if math.gcd(a, b) != 1:
        raise DomainError(f"T({a},{b}) is a link, not a knot")
    num = [0] * (a * b + 2)
    # (t^ab - 1)(t - 1) = t^(ab+1) - t^ab - t + 1
    num[a * b + 1] += 1
    num[a * b] -= 1
    num[1] -= 1
    num[0] += 1
    den = [0] * (a + b + 1)
    den[a + b] += 1
    den[a] -= 1
    den[b] -= 1
    den[0] += 1
    quotient = [0] * (len(num) - len(den) + 1)
    rem = num[:]
    for k in range(len(quotient) - 1, -1, -1):
        c = rem[k + a + b]
        quotient[k] = c  # den is monic
        if c:
            for i, d in enumerate(den):
                rem[k + i] -= c * d
    if any(rem):
        raise ArithmeticError("torus polynomial division left a remainder")
    return LaurentPoly1.from_coefficients(quotient)


def _poly1(name, raw):
    try:
        return LaurentPoly1((tuple(term["e"]), term["c"]) for term in raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise RecordError(name, "alexander", f"bad term list: {exc}") from None


def _poly2(name, raw):
    try:
        terms = []
        for term in raw:
            if len(term["e"]) != 2:
                raise ValueError("two exponents required")
            terms.append((tuple(term["e"]), term["c"]))
        return LaurentPoly2(terms)
    except (KeyError, TypeError, ValueError) as exc:
        raise RecordError(name, "multivariable", f"bad term list: {exc}") from None


def _knot_from_json(obj: dict) -> KnotRecord:
    name = obj.get("name")
    if not isinstance(name, str):
        raise RecordError(name, "name", "missing or not a string")
    alexander = _poly1(name, obj.get("alexander", ()))
    try:
        symmetric_normalize(alexander)
    except NotKnotPolynomialError as exc:
        raise RecordError(name, "alexander", str(exc)) from None

    genus = obj.get("genus")
    if genus is not None and (not isinstance(genus, int) or genus < 0):
        raise RecordError(name, "genus", "must be a non-negative integer")

    torus = obj.get("torus")
    if torus is not None:
        try:
            a, b = (int(x) for x in torus)
            expected = torus_alexander(a, b)
        except (TypeError, ValueError, DomainError) as exc:
            raise RecordError(name, "torus", str(exc)) from None
        torus = (a, b)
        if not eq_up_to_units(alexander, expected):
            raise RecordError(name, "alexander", f"does not match torus knot T{torus}")
        torus_genus = (abs(a) - 1) * (abs(b) - 1) // 2
        if genus is None:
            genus = torus_genus
        elif genus != torus_genus:
            raise RecordError(name, "genus", f"T{torus} has genus {torus_genus}, not {genus}")

    lspace = obj.get("lspace_knot")
    if lspace is not None and not isinstance(lspace, bool):
        raise RecordError(name, "lspace_knot", "must be a boolean")

    v_seq = obj.get("v_sequence")
    if v_seq is not None:
        if not all(isinstance(v, int) and v >= 0 for v in v_seq):
            raise RecordError(name, "v_sequence", "entries must be non-negative integers")
        if any(x < y for x, y in zip(v_seq, v_seq[1:])):
            raise RecordError(name, "v_sequence", "must be non-increasing")
        v_seq = tuple(v_seq)

    mirror_of = obj.get("mirror_of")
    if mirror_of is not None and not isinstance(mirror_of, str):
        raise RecordError(name, "mirror_of", "must be a string")
    return KnotRecord(name, alexander, genus, torus, lspace, v_seq, mirror_of)


def _link_from_json(obj: dict) -> LinkRecord:
    name = obj.get("name")
    if not isinstance(name, str):
        raise RecordError(name, "name", "missing or not a string")
    if obj.get("components", 2) != 2:
        raise RecordError(name, "components", "only two-component links are supported")
    lk = obj.get("linking_number")
    if not isinstance(lk, int):
        raise RecordError(name, "linking_number", "missing or not an integer")
    unknotted = obj.get("unknotted", [True, True])
    if len(unknotted) != 2 or not all(isinstance(u, bool) for u in unknotted):
        raise RecordError(name, "unknotted", "must be two booleans")
    poly = _poly2(name, obj.get("multivariable", ()))
    # Torres condition at t1 = t2 = 1
    if lk != 0 and abs(poly(1, 1)) != abs(lk):
        raise RecordError(name, "multivariable",
                          f"|value at (1,1)| = {abs(poly(1, 1))} but linking number is {lk}")
    return LinkRecord(name, lk, poly, tuple(unknotted))


def parse_record(obj: dict) -> Record:
    kind = obj.get("type")
    if kind == "knot":
        return _knot_from_json(obj)
    if kind == "link":
        return _link_from_json(obj)
    raise RecordError(obj.get("name"), "type", f"unknown record type {kind!r}")


def load_records(data: bytes | str) -> list[Record]:
    """Parse JSON-lines knot/link data; blank lines are skipped."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    records = []
    for lineno, line in enumerate(data.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordError(f"line {lineno}", "json", str(exc)) from None
        if not isinstance(obj, dict):
            raise RecordError(f"line {lineno}", "json", "record must be an object")
        records.append(parse_record(obj))
    return records


def dump_records(records) -> str:
    return "".join(json.dumps(r.to_json(), separators=(",", ":")) + "\n" for r in records)


L9A20_TERMS = [
    ((2, 4), 1), ((2, 3), -3), ((1, 4), -1), ((2, 2), 3), ((1, 3), 4),
    ((2, 1), -1), ((1, 2), -7), ((0, 3), -1), ((1, 1), 4), ((0, 2), 3),
    ((1, 0), -1), ((0, 1), -3), ((0, 0), 1),
]


def _torus_knot(name, a, b, lspace=None, mirror_of=None):
    return KnotRecord(name, symmetric_normalize(torus_alexander(a, b)),
                      (abs(a) - 1) * (abs(b) - 1) // 2, (a, b), lspace, None, mirror_of)


def embedded_fixtures() -> list[Record]:
    """Built-in records: L9a20, trefoil, cinquefoil, figure-eight and the
    two-strand torus knots H_n = T(2, 1 - 2n) for 2 <= |1 - 2n| <= 9."""
    records: list[Record] = [
        LinkRecord("L9a20", 1, LaurentPoly2(L9A20_TERMS), (True, True)),
        _torus_knot("K3a1", 3, 2, lspace=True),
        _torus_knot("K5a2", 5, 2, lspace=True),
        KnotRecord("K4a1", LaurentPoly1({-1: -1, 0: 3, 1: -1}), 1, None, False, None, "K4a1"),
    ]
    for n in (-4, -3, -2, -1, 2, 3, 4, 5):
        b = 1 - 2 * n
        # b < 0 is the left-handed knot, whose mirror H_{1-n} is the L-space knot
        records.append(_torus_knot(f"H{n}", 2, b, lspace=b > 0,
                                   mirror_of=None if b > 0 else f"H{1 - n}"))
    return records


def fixture(name: str) -> Record:
    for rec in embedded_fixtures():
        if rec.name == name:
            return rec
    raise KeyError(name)
