from fractions import Fraction
from functools import cmp_to_key

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from zzpa.exact import FieldContext, Poly, UndecidedError, isolate_real_roots, perron_root

small = st.integers(min_value=-50, max_value=50)
rationals = st.fractions(min_value=-60, max_value=60, max_denominator=50)


@pytest.fixture(scope="module")
def golden_sq():
    return FieldContext.from_polynomial(Poly([1, -3, 1]))


@pytest.fixture(scope="module")
def sqrt2():
    return FieldContext.from_polynomial(Poly([-2, 0, 1]))


def test_inverse_of_generator(golden_sq):
    lam = golden_sq.gen
    assert lam * lam.inverse() == 1
    assert lam.inverse() == 3 - lam


def test_decimal_of_generator(golden_sq):
    assert golden_sq.gen.decimal(12) == "2.618033988750"


def test_reduction_modulo_minimal_polynomial(golden_sq):
    lam = golden_sq.gen
    assert lam ** 2 == 3 * lam - 1
    assert (lam ** 5).poly() == Poly([-21, 55])


def test_cyclotomic_factor_removed_from_modulus():
    ctx = FieldContext.from_polynomial(Poly([1, 1]) * Poly([1, -3, 1]))
    assert ctx.modulus == Poly([1, -3, 1])


def test_reducible_modulus_uses_gcd_zero_test():
    # (t^2 - 2)(t^2 - 3) with the root sqrt 3: t^2 - 3 vanishes, t^2 - 2 does not
    p = Poly([-2, 0, 1]) * Poly([-3, 0, 1])
    root = isolate_real_roots(p)[-1]
    ctx = FieldContext(p, root)
    assert not ctx.certified_irreducible
    t = ctx.gen
    assert t * t - 3 == 0
    assert (t * t - 2).sign() == 1
    assert t * t == 3


def test_mixed_contexts_rejected(golden_sq, sqrt2):
    with pytest.raises(ValueError, match="mixed contexts"):
        golden_sq.gen + sqrt2.gen


def test_division_by_zero(sqrt2):
    with pytest.raises(ZeroDivisionError):
        sqrt2.gen / sqrt2.zero


@given(small, small, rationals)
@settings(max_examples=150, deadline=None)
def test_ordering_against_rationals(a, b, r):
    ctx = FieldContext.from_polynomial(Poly([-2, 0, 1]))
    x = a + b * ctx.gen
    exact = sympy.Integer(a) + sympy.Integer(b) * sympy.sqrt(2) - sympy.Rational(r.numerator, r.denominator)
    expected = 0 if exact == 0 else (1 if exact > 0 else -1)
    assert x.compare(r) == expected


@given(small, small, small, small)
@settings(max_examples=100, deadline=None)
def test_field_axioms(a, b, c, d):
    ctx = FieldContext.from_polynomial(Poly([1, -3, 1]))
    x, y = a + b * ctx.gen, c + d * ctx.gen
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    if not y.is_zero():
        assert (x / y) * y == x


@given(st.lists(st.tuples(small, small), min_size=2, max_size=6))
@settings(max_examples=40, deadline=None)
def test_sort_agrees_with_floats(pairs):
    ctx = FieldContext.from_polynomial(Poly([-7, 0, 1]))
    xs = [a + b * ctx.gen for a, b in set(pairs)]
    exact = sorted(xs, key=cmp_to_key(lambda u, v: u.compare(v)))
    floats = [float(x) for x in exact]
    assert floats == sorted(floats)


def test_enclosure_contains_value(sqrt2):
    x = 1 + sqrt2.gen
    lo, hi = x.enclosure(Fraction(1, 10 ** 20))
    assert lo <= Fraction(2414213562373095048801688, 10 ** 24) <= hi
    assert hi - lo <= Fraction(1, 10 ** 20)


def test_to_json(golden_sq):
    assert (golden_sq.gen / 2).to_json() == {"num": [0, 1], "den": 2}


def test_bisection_cap_raises_undecided(monkeypatch):
    monkeypatch.setenv("ZZPA_MAX_BISECTIONS", "2")
    ctx = FieldContext.from_polynomial(Poly([-2, 0, 1]))
    # sqrt 2 - 665857/470832 is about 1.6e-12
    x = ctx.gen - Fraction(665857, 470832)
    with pytest.raises(UndecidedError):
        x.sign()


def test_bisection_cap_must_be_positive(monkeypatch):
    monkeypatch.setenv("ZZPA_MAX_BISECTIONS", "0")
    with pytest.raises(ValueError):
        FieldContext.from_polynomial(Poly([-2, 0, 1]))


def test_refinement_is_thread_safe():
    from concurrent.futures import ThreadPoolExecutor
    ctx = FieldContext.from_polynomial(Poly([-3, 0, 1]))
    xs = [ctx.gen - Fraction(round(1.7320508075688772 * 10 ** k), 10 ** k) for k in range(2, 14)]
    with ThreadPoolExecutor(4) as pool:
        signs = list(pool.map(lambda x: x.sign(), xs))
    assert signs == [1 if float(x) > 0 else -1 for x in xs]
    assert perron_root(Poly([-3, 0, 1])).compare(ctx.root.lo) >= 0
