"""Integer Laurent polynomials in one and two variables, and the twist-family
calculus for Alexander polynomials of knots obtained by twisting along one
component of a two-component link.
"""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import DomainError, NotKnotPolynomialError


class _SparsePoly:
    """Exponent -> nonzero integer coefficient map with ring operations."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict = {}
        for e, v in items:
            e = self._key(e)
            c[e] = c.get(e, 0) + int(v)
        self._c = {e: v for e, v in c.items() if v}

    @staticmethod
    def _key(e):
        raise NotImplementedError

    @staticmethod
    def _add_exp(e1, e2):
        raise NotImplementedError

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = type(self).constant(other)
        return type(other) is type(self) and self._c == other._c

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self._c.items())))

    @classmethod
    def constant(cls, c: int):
        raise NotImplementedError

    def _coerce(self, other):
        if isinstance(other, int):
            return type(self).constant(other)
        if type(other) is not type(self):
            return NotImplemented
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = self._add_exp(e1, e2)
                out[e] = out.get(e, 0) + v1 * v2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        base = self
        if n < 0:
            if len(self._c) != 1 or abs(next(iter(self._c.values()))) != 1:
                raise DomainError("negative powers are only defined for unit monomials")
            ((e, c),) = self._c.items()
            inv = tuple(-x for x in e) if isinstance(e, tuple) else -e
            base, n = type(self)({inv: c}), -n
        result = type(self).constant(1)
        for _ in range(n):
            result = result * base
        return result


class LaurentPoly1(_SparsePoly):
    """Laurent polynomial in t with integer coefficients."""

    __slots__ = ()

    @staticmethod
    def _key(e):
        if isinstance(e, (tuple, list)):
            (e,) = e
        return int(e)

    @staticmethod
    def _add_exp(e1, e2):
        return e1 + e2

    @classmethod
    def constant(cls, c: int):
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1):
        return cls({e: c})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], low: int = 0):
        """Build from a dense coefficient list starting at exponent ``low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def coefficient(self, e: int) -> int:
        return self._c.get(e, 0)

    def shift(self, k: int) -> "LaurentPoly1":
        """Multiply by t**k."""
        return LaurentPoly1({e + k: v for e, v in self._c.items()})

    def invert_variable(self) -> "LaurentPoly1":
        """Substitute t -> 1/t."""
        return LaurentPoly1({-e: v for e, v in self._c.items()})

    def dense(self) -> list[int]:
        """Coefficients from the lowest to the highest exponent."""
        if not self._c:
            return []
        lo, hi = self.min_exp(), self.max_exp()
        return [self._c.get(e, 0) for e in range(lo, hi + 1)]

    def __call__(self, t):
        return sum(v * t**e for e, v in self._c.items())

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(v) == 1:
                coef = "-" if v < 0 else "+"
            else:
                coef = f"{v:+d}"
            parts.append(f"{coef}{mono}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s


class LaurentPoly2(_SparsePoly):
    """Laurent polynomial in t1, t2 with integer coefficients."""

    __slots__ = ()

    @staticmethod
    def _key(e):
        e1, e2 = e
        return (int(e1), int(e2))

    @staticmethod
    def _add_exp(e1, e2):
        return (e1[0] + e2[0], e1[1] + e2[1])

    @classmethod
    def constant(cls, c: int):
        return cls({(0, 0): c})

    def __call__(self, t1, t2):
        return sum(v * t1**i * t2**j for (i, j), v in self._c.items())

    def swap_variables(self) -> "LaurentPoly2":
        return LaurentPoly2({(j, i): v for (i, j), v in self._c.items()})

    def __repr__(self):
        if not self._c:
            return "0"
        return " + ".join(f"{v}*t1^{i}*t2^{j}" for (i, j), v in sorted(self._c.items(), reverse=True))


def eq_up_to_units(f: LaurentPoly1, g: LaurentPoly1) -> bool:
    """True iff f = +-t^k * g for some integer k."""
    if not f or not g:
        return not f and not g
    fv, gv = f.dense(), g.dense()
    return fv == gv or fv == [-c for c in gv]


def substitute(f: LaurentPoly2, e1: int, e2: int) -> LaurentPoly1:
    """Substitute t1 -> t^e1 and t2 -> t^e2."""
    return LaurentPoly1((i * e1 + j * e2, v) for (i, j), v in f.coeffs.items())


def symmetric_normalize(f: LaurentPoly1) -> LaurentPoly1:
    """The unit multiple g = +-t^k f with g(t) = g(1/t) and g(1) = 1."""
    if not f:
        raise NotKnotPolynomialError("the zero polynomial is not an Alexander polynomial")
    span = f.min_exp() + f.max_exp()
    if span % 2:
        raise NotKnotPolynomialError(f"{f!r}: no unit multiple is palindromic")
    g = f.shift(-span // 2)
    if g != g.invert_variable():
        raise NotKnotPolynomialError(f"{f!r}: coefficients are not palindromic")
    value = g(1)
    if value not in (1, -1):
        raise NotKnotPolynomialError(f"{f!r}: value {value} at t=1 is not a unit")
    return g if value == 1 else -g


def is_symmetric_normalized(f: LaurentPoly1) -> bool:
    return bool(f) and f == f.invert_variable() and f(1) == 1


def second_derivative_at_1(f: LaurentPoly1) -> int:
    """Second derivative at t = 1 of the symmetric normalized representative.

    The value depends on the representative, so anything else is rejected
    rather than silently normalized.
    """
    if not is_symmetric_normalized(f):
        raise DomainError(f"{f!r} is not the symmetric representative with f(1) = 1")
    return sum(v * e * (e - 1) for e, v in f.coeffs.items())


def normalize_positive(f: LaurentPoly1) -> LaurentPoly1:
    """Shift to lowest exponent 0 and make the constant term positive."""
    if not f:
        raise DomainError("cannot normalize the zero polynomial")
    g = f.shift(-f.min_exp())
    return g if g.coefficient(0) > 0 else -g


def twist_family_alex(link_poly: LaurentPoly2, component: int, k: int) -> LaurentPoly1:
    """Alexander polynomial (up to units) of the knot left after 1/k surgery
    on the given component of a linking-number-one link of two unknots.

    Twisting component 2 leaves component 1: t1 -> t, t2 -> t^k.
    """
    if component == 2:
        return substitute(link_poly, 1, k)
    if component == 1:
        return substitute(link_poly, k, 1)
    raise DomainError(f"component must be 1 or 2, got {component}")


def distinctness_matrix(link_poly: LaurentPoly2, m_range: Iterable[int], n_range: Iterable[int]) -> dict:
    """Map (m, n) to whether K_m and J_n share an Alexander polynomial.

    K_m twists along component 2 and J_n along component 1. A True entry only
    means the polynomial fails to tell the knots apart.
    """
    n_values = list(n_range)
    j_polys = {n: twist_family_alex(link_poly, 1, n) for n in n_values}
    table = {}
    for m in m_range:
        k_poly = twist_family_alex(link_poly, 2, m)
        for n in n_values:
            table[(m, n)] = eq_up_to_units(k_poly, j_polys[n])
    return table


def poly1_to_json(f: LaurentPoly1) -> list[dict]:
    return [{"e": [e], "c": c} for e, c in f.items()]


def poly2_to_json(f: LaurentPoly2) -> list[dict]:
    return [{"e": [i, j], "c": c} for (i, j), c in sorted(f.coeffs.items(), reverse=True)]
