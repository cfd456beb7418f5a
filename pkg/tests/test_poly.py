from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from zzpa.exact import (Poly, companion_polynomial, cyclotomic, expand_companion,
                        has_cyclotomic_factor, poly_gcd, strip_cyclotomic_factors)
from zzpa.exact.poly import poly_xgcd

from conftest import T, from_sympy, to_sympy

small_ints = st.integers(min_value=-9, max_value=9)
int_polys = st.lists(small_ints, min_size=1, max_size=7).map(Poly)


def test_normalization_and_degree():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([]).degree == -1
    assert Poly([0]).is_zero()
    assert Poly.from_descending([1, -2, 0, 1]) == Poly([1, 0, -2, 1])


def test_format():
    assert Poly([1, 0, -2, 1]).format() == "t^3 - 2*t^2 + 1"
    assert Poly([-1, 1]).format("w") == "w - 1"


def test_arithmetic_small():
    p, q = Poly([1, 1]), Poly([-1, 1])
    assert p * q == Poly([-1, 0, 1])
    assert (p ** 3)(2) == 27
    assert p - p == Poly([])


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(Poly([1, 2]), Poly([]))


@pytest.mark.parametrize("a, b, g", [
    (Poly.from_descending([1, -2, 0, 1]), Poly.from_descending([1, -1, -1]), Poly.from_descending([1, -1, -1])),
    (Poly.from_descending([1, -3, 3, -3, 1]), Poly([1, 1]), Poly([1])),
])
def test_gcd_examples(a, b, g):
    assert poly_gcd(a, b) == g


@given(int_polys, int_polys)
@settings(max_examples=80, deadline=None)
def test_gcd_matches_sympy(a, b):
    if a.is_zero() and b.is_zero():
        return
    ours = poly_gcd(a, b)
    theirs = sympy.gcd(to_sympy(a), to_sympy(b)).monic()
    assert ours == from_sympy(theirs)


@given(int_polys, int_polys)
@settings(max_examples=80, deadline=None)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(int_polys, int_polys)
@settings(max_examples=60, deadline=None)
def test_xgcd_bezout(a, b):
    if a.is_zero() and b.is_zero():
        return
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert g == poly_gcd(a, b)


@given(int_polys)
@settings(max_examples=60, deadline=None)
def test_squarefree_part_matches_sympy(p):
    if p.degree < 1:
        return
    ours = p.squarefree_part().monic()
    theirs = sympy.sqf_part(to_sympy(p)).monic()
    assert ours == from_sympy(theirs)


@given(int_polys, st.integers(-5, 5))
@settings(max_examples=60, deadline=None)
def test_taylor_shift_is_composition(p, a):
    assert p.taylor_shift(a) == p.compose(Poly([a, 1]))


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_matches_sympy(n):
    assert cyclotomic(n) == from_sympy(sympy.Poly(sympy.cyclotomic_poly(n, T), T))


@pytest.mark.parametrize("p, found, n", [
    (Poly([1, 1]) * Poly.from_descending([1, -3, 3, -3, 1]), True, 2),
    (Poly.from_descending([1, -3, 3, -3, 1]), False, None),
    (Poly.from_descending([1, -2, 0, 1]), True, 1),
])
def test_cyclotomic_witnesses(p, found, n):
    assert has_cyclotomic_factor(p) == (found, n)


def test_strip_cyclotomic_factors():
    core = Poly([1, -3, 1])
    p = core * cyclotomic(1) * cyclotomic(6) * cyclotomic(2) ** 2
    stripped, ns = strip_cyclotomic_factors(p)
    assert stripped.monic() == core
    assert sorted(set(ns)) == [1, 2, 6]


def test_companion_examples():
    w = Poly([0, 1])
    assert companion_polynomial(Poly([1, -3, 1])) == w - 3
    # t^4 - 3t^3 + 3t^2 - 3t + 1 = t^2 q(t + 1/t) with q = w^2 - 3w + 1
    assert companion_polynomial(Poly.from_descending([1, -3, 3, -3, 1])) == Poly([1, -3, 1])


def test_companion_rejects_non_reciprocal():
    with pytest.raises(ValueError):
        companion_polynomial(Poly([1, 0, -2, 1]))


@given(st.lists(small_ints, min_size=1, max_size=5).map(lambda cs: Poly(cs + [1])))
@settings(max_examples=80, deadline=None)
def test_companion_roundtrip(q):
    p = expand_companion(q)
    assert p.is_reciprocal()
    assert p.degree == 2 * q.degree
    assert companion_polynomial(p) == q


def test_rational_coefficients():
    p = Poly([Fraction(1, 2), 1])
    assert p.monic() == Poly([Fraction(1, 2), 1])
    assert (p * 2).is_integral()
