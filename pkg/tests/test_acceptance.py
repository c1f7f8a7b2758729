"""Acceptance criteria 1-13. Each test carries a ``criterion`` marker; the
terminal summary prints one PASS/FAIL line per criterion."""
import subprocess
import sys
import time
from fractions import Fraction
from math import gcd

import pytest

from dehnkit.alexander import LaurentPoly1, distinctness_matrix, eq_up_to_units, normalize_positive, substitute
from dehnkit.arith import is_squarefree, legendre, normalize_slope, odd_primes_upto, reciprocity_sign
from dehnkit.classify import (
    SFS,
    cable_fill_reduce,
    cable_slope_witnesses,
    enumerate_cable_slopes,
    mirror_surgery,
    moser_classify,
    sfs_equal,
)
from dehnkit.hypbounds import core_geodesic_bound, filling_constants, safe_q_threshold
from dehnkit.invariants import cw_lens, d_gap_max, d_lens, prop51_required_sum
from dehnkit.knotdb import fixture
from dehnkit.search import SearchParams, find_candidates, residue_obstruction, verify_certificate
from oracles import brute_squares

L = fixture("L9a20").multivariable


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def poly(terms):
    return LaurentPoly1(terms)


# Twist-family polynomials as displayed, one (exponent, coefficient) pair per term.
def k_displayed(m):
    if m > 0:
        return poly([(4 * m + 2, 1), (4 * m + 1, -1), (3 * m + 2, -3), (3 * m + 1, 4), (3 * m, -1),
                     (2 * m + 2, 3), (2 * m + 1, -7), (2 * m, 3), (m + 2, -1), (m + 1, 4), (m, -3),
                     (1, -1), (0, 1)])
    return poly([(1, -1), (-m + 1, 3), (0, 1), (-2 * m + 1, -3), (-m, -4), (-3 * m + 1, 1), (-2 * m, 7),
                 (-m - 1, 1), (-3 * m, -4), (-2 * m - 1, -3), (-4 * m, 1), (-3 * m - 1, 3), (-4 * m - 1, -1)])


def j_displayed(n):
    if n > 0:
        return poly([(2 * n + 4, 1), (2 * n + 3, -3), (2 * n + 2, 3), (2 * n + 1, -1), (n + 4, -1),
                     (n + 3, 4), (n + 2, -7), (n + 1, 4), (n, -1), (3, -1), (2, 3), (1, -3), (0, 1)])
    return poly([(3, -1), (2, 3), (-n + 3, 1), (1, -3), (-n + 2, -4), (0, 1), (-n + 1, 7), (-2 * n + 2, 1),
                 (-n, -4), (-2 * n + 1, -3), (-n - 1, 1), (-2 * n, 3), (-2 * n - 1, -1)])


@pytest.mark.criterion(1, "cw_lens(3,1) = -1/36, < 1 ms")
def test_c01_cw_lens_3_1():
    with Timer() as t:
        value = cw_lens(3, 1)
    assert value == Fraction(-1, 36)
    assert t.elapsed < 1e-3


@pytest.mark.criterion(2, "Casson-Walker orientation and q^-1 identities, p <= 200, < 5 s")
def test_c02_cw_identities():
    with Timer() as t:
        for p in range(3, 201):
            for q in range(2, p):
                if gcd(p, q) != 1:
                    continue
                value = cw_lens(p, q)
                assert cw_lens(p, p - q) == -value
                assert cw_lens(p, pow(q, -1, p)) == value
    assert t.elapsed < 5


@pytest.mark.criterion(3, "Legendre vs squares (p < 500), reciprocity and supplements (p < 200), < 10 s")
def test_c03_legendre_and_reciprocity():
    with Timer() as t:
        for p in odd_primes_upto(499):
            squares = brute_squares(p)
            for a in range(1, p):
                assert (legendre(a, p) == 1) == (a in squares)
            assert (legendre(-1, p) == 1) == (p % 4 == 1)
            assert (legendre(2, p) == 1) == (p % 8 in (1, 7))
        small = odd_primes_upto(199)
        for p1 in small:
            for p2 in small:
                if p1 != p2:
                    assert legendre(p1, p2) * legendre(p2, p1) == reciprocity_sign(p1, p2)
    assert t.elapsed < 10


@pytest.mark.criterion(4, "L9a20 displayed K_m/J_n formulas and 40x40 distinctness matrix, < 10 s")
def test_c04_l9a20_pipeline():
    with Timer() as t:
        for k in (-3, -2, -1, 1, 2, 3):
            assert normalize_positive(substitute(L, 1, k)) == k_displayed(k)
            assert normalize_positive(substitute(L, k, 1)) == j_displayed(k)
        ks = [k for k in range(-20, 21) if k]
        table = distinctness_matrix(L, ks, ks)
        assert len(table) == 40 * 40
        assert {mn for mn, same in table.items() if same} == {(1, 1), (-1, -1)}
    assert t.elapsed < 10


@pytest.mark.criterion(5, "Torres check: Delta(t,1) = 1 up to units, |Delta(1,1)| = 1")
def test_c05_torres():
    assert eq_up_to_units(substitute(L, 1, 0), LaurentPoly1.constant(1))
    assert abs(L(1, 1)) == 1 == fixture("L9a20").linking_number


@pytest.mark.criterion(6, "find-slopes C=10 q=13 certificate re-verified by enumeration, < 10 s")
def test_c06_find_slopes():
    with Timer() as t:
        result = find_candidates(SearchParams(C=10, q=13, prime_limit=10**5, count=1))
        assert result.certificates
        for cert in result.certificates:
            p = cert.p
            assert verify_certificate(cert, 10, 13).valid
            squares = brute_squares(p)
            for z in range(1, 11):
                assert any(n * n % p == z for n in range(1, p))
            assert p - 1 in squares and 2 in squares and 13 not in squares and p % 13 not in (1, 12)
            for k in range(1, 11):
                for qp in (k, -k):
                    assert not residue_obstruction(p, 13, qp)
                    assert 13 * qp % p not in squares
    assert t.elapsed < 10


@pytest.mark.criterion(7, "residue_obstruction vs exhaustive r search, primes < 50, < 10 s")
def test_c07_linking_form_equivalence():
    with Timer() as t:
        for p in [2] + odd_primes_upto(49):
            for q in range(1, p):
                for qp in range(1, p):
                    exists = any((q - qp * r * r) % p == 0 for r in range(1, p))
                    assert residue_obstruction(p, q, qp) == exists
    assert t.elapsed < 10


@pytest.mark.criterion(8, "d-invariant base cases, q=1 closed form, d_gap_max decrease, < 30 s")
def test_c08_d_invariants():
    with Timer() as t:
        assert d_lens(1, 0, 0) == 0
        assert d_lens(2, 1, 0) == Fraction(1, 4)
        for p in range(1, 201):
            for i in range(p):
                assert d_lens(p, 1, i) == Fraction((p - 2 * i) ** 2 - p, 4 * p)
        assert d_gap_max(401, 2) < d_gap_max(101, 2) < d_gap_max(11, 2)
    assert t.elapsed < 30


@pytest.mark.criterion(9, "prop51_required_sum is none for 3 | p <= 10^4, < 1 s")
def test_c09_prop51():
    with Timer() as t:
        assert all(prop51_required_sum(p) is None for p in range(3, 10**4 + 1, 3))
    assert t.elapsed < 1


@pytest.mark.criterion(10, "trefoil/cinquefoil Seifert fibre table, < 1 s")
def test_c10_torus_fibre_table():
    with Timer() as t:
        slopes = [(1, 1), (2, 1), (3, 1), (4, 1), (3, 2), (4, 3)]
        trefoil = {}
        for p, q in slopes:
            s = moser_classify(3, 2, p, q)
            assert s.kind == SFS and 3 in [abs(f) for f in s.fibers] and all(f > 0 for f in s.fibers)
            trefoil[(p, q)] = s
        for (p, q), s in trefoil.items():
            for qp in range(-p, p + 1):
                if qp == 0 or gcd(p, qp) != 1:
                    continue
                counterparts = [mirror_surgery(3, 2, p, qp), moser_classify(5, 2, p, qp),
                                mirror_surgery(5, 2, p, qp)]
                for mirrored in (counterparts[0], counterparts[2]):
                    assert mirrored.kind != SFS or any(f < 0 for f in mirrored.fibers)
                for other in counterparts[1:]:
                    assert other.kind != SFS or 3 not in [abs(f) for f in other.singular_fibers]
                for other in counterparts:
                    assert other.kind != SFS or not sfs_equal(s, other)
    assert t.elapsed < 1


@pytest.mark.criterion(11, "cable slopes up to p = 50, s = 5, < 1 s")
def test_c11_cable_suite():
    with Timer() as t:
        slopes = enumerate_cable_slopes(50, 5)
        assert normalize_slope(1, 4) in slopes and normalize_slope(3, 4) in slopes
        assert all(not is_squarefree(abs(s.q)) for s in slopes)
        reduced = set()
        for r, s, p, q in cable_slope_witnesses(50, 5):
            out = cable_fill_reduce(r, s, p, q)
            assert out is not None and out in slopes
            reduced.add(out)
        assert reduced == slopes
    assert t.elapsed < 1


@pytest.mark.criterion(12, "filling constants at sys = 1, 5D = 53.45, core bound <= 0.0736, < 1 ms")
def test_c12_hypbounds():
    with Timer() as t:
        c, D = filling_constants(1)
        five_d = safe_q_threshold(1)
        core = core_geodesic_bound(10.69)
    assert c == pytest.approx(0.0735, rel=1e-6) and D == pytest.approx(10.69, rel=1e-6)
    assert five_d == pytest.approx(53.45, rel=1e-6)
    assert core <= 0.0736
    assert t.elapsed < 1e-3


CLI_COMMANDS = [
    ["lens-cw", "3", "1"],
    ["d-inv", "2", "1", "0"],
    ["find-slopes", "--C", "10", "--q", "13", "--count", "1", "--limit", "100000"],
    ["distinct-matrix", "--link", "L9a20", "--range", "20", "20"],
    ["alex-twist", "--link", "L9a20", "--component", "1", "--k", "3"],
    ["moser", "3", "2", "1", "1", "--mirror"],
    ["cable-slopes", "--max-p", "50", "--max-s", "5"],
    ["d-gap", "401", "2"],
    ["hyp-consts", "--sys", "1"],
    ["prop51", "9"],
    ["fixtures"],
]


@pytest.mark.criterion(13, "CLI acceptance commands are byte-identical across two runs")
def test_c13_cli_determinism():
    for argv in CLI_COMMANDS:
        runs = [subprocess.run([sys.executable, "-m", "dehnkit", *argv], capture_output=True) for _ in range(2)]
        assert runs[0].returncode == 0, runs[0].stderr
        assert runs[0].stdout == runs[1].stdout and runs[0].stdout
