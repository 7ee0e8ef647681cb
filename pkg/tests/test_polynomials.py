"""Exact polynomial layer, checked against sympy."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import example, given, settings
from hypothesis import strategies as st

from drgeom import polynomials as P

x = sympy.Symbol("x")
coeff_lists = st.lists(st.integers(-20, 20), min_size=2, max_size=7).filter(lambda c: c[-1] != 0)


def to_sympy(p):
    return sympy.expand(sum(sympy.Rational(c) * x**i for i, c in enumerate(p)))


@given(coeff_lists, coeff_lists)
def test_mul_matches_sympy(p, q):
    assert to_sympy(P.mul(p, q)) == sympy.expand(to_sympy(p) * to_sympy(q))


@given(coeff_lists, coeff_lists)
def test_divmod_matches_sympy(p, q):
    quo, rem = P.divmod_poly(p, q)
    sq, sr = sympy.div(to_sympy(p), to_sympy(q), x)
    assert to_sympy(quo) == sympy.expand(sq)
    assert to_sympy(rem) == sympy.expand(sr)


@given(coeff_lists, coeff_lists)
def test_gcd_matches_sympy(p, q):
    g = P.gcd(p, q)
    expected = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), x).monic().as_expr()
    assert to_sympy(g) == expected


@settings(max_examples=60, deadline=None)
@given(coeff_lists)
@example([0, 0, 1, -1])  # double root at the evaluation point
def test_sturm_count_matches_sympy(p):
    roots = sympy.Poly(to_sympy(p), x).real_roots()
    distinct = sorted(set(roots))
    chain = P.sturm_chain(p)
    bound = P.cauchy_bound(p)
    assert P.count_roots(chain, -bound, bound) == len(distinct)
    assert P.count_roots_below(chain, 0) == sum(1 for r in distinct if r <= 0)


@settings(max_examples=40, deadline=None)
@given(coeff_lists)
def test_isolated_intervals_bracket_each_root_once(p):
    distinct = sorted(set(sympy.Poly(to_sympy(p), x).real_roots()))
    intervals = P.isolate_real_roots(p)
    assert len(intervals) == len(distinct)
    for (lo, hi), r in zip(intervals, distinct):
        assert lo < r <= hi or lo == hi == r


def test_bisect_narrows_to_width():
    p = (-2, 0, 1)  # x^2 - 2
    lo, hi = P.bisect_root(p, Fraction(1), Fraction(2), Fraction(1, 10**15))
    assert hi - lo <= Fraction(1, 10**15)
    assert lo * lo <= 2 <= hi * hi


def test_deflate_root_and_rejects_non_root():
    p = P.from_roots([3, 1, -2])
    assert P.deflate_root(p, 3) == P.from_roots([1, -2])
    with pytest.raises(ValueError):
        P.deflate_root(p, 2)


def test_interval_arithmetic_encloses():
    a = P.Interval(Fraction(1), Fraction(2))
    b = P.Interval(Fraction(-1), Fraction(3))
    prod = a * b
    for u in (1, Fraction(3, 2), 2):
        for v in (-1, 0, 3):
            assert u * v in prod
    assert list(P.Interval(Fraction(1, 2), Fraction(7, 2)).integers()) == [1, 2, 3]
