import pytest
import sympy

from zzpa.classify import FractionLabel, digit_poly_from_fraction
from zzpa.exact import Poly, expand_companion
from zzpa.salem import (check_recurrence, companion_q, d_poly, family_digit_poly, interlacing_check,
                        salem_report)

from conftest import T, to_sympy

W = sympy.Symbol("w")

TABLE = {
    2: Poly.from_descending([1, -3, 1]),
    3: Poly.from_descending([1, -3, 0, 3]),
    4: Poly.from_descending([1, -3, -1, 6, -1]),
    5: Poly.from_descending([1, -3, -2, 9, -1, -3]),
}


@pytest.mark.parametrize("g", range(1, 11))
def test_factorization(g):
    assert family_digit_poly(g) == Poly([1, 1]) * d_poly(g)
    assert family_digit_poly(g) == digit_poly_from_fraction(2, FractionLabel(1, 2 * g))


@pytest.mark.parametrize("g, q", sorted(TABLE.items()))
def test_companion_table(g, q):
    assert companion_q(g) == q
    assert expand_companion(q) == d_poly(g)


@pytest.mark.parametrize("g", range(1, 9))
def test_recurrence(g):
    assert check_recurrence(g)


@pytest.mark.parametrize("g", range(2, 10))
def test_interlacing(g):
    assert interlacing_check(g)


@pytest.mark.parametrize("g", range(2, 8))
def test_irreducible_by_sympy(g):
    # independent oracle: sympy factors d_g over Q
    assert to_sympy(d_poly(g)).is_irreducible


@pytest.mark.parametrize("g", range(2, 8))
def test_unit_circle_census_against_numeric_roots(g):
    roots = sympy.Poly(to_sympy(d_poly(g)).as_expr(), T).nroots(n=30)
    on_circle = [r for r in roots if abs(abs(complex(r)) - 1) < 1e-12]
    rep = salem_report(g, with_surface=False)
    assert len(on_circle) == rep.unit_circle_roots == 2 * (g - 1)


def test_report_first_member():
    rep = salem_report(1)
    assert rep.degenerate and rep.is_salem
    assert rep.lambda_g.decimal(12) == "2.618033988750"
    assert rep.singularity.one_prong_count == 4


@pytest.mark.parametrize("g", [2, 5])
def test_report_fields(g):
    rep = salem_report(g)
    assert rep.errors == []
    assert rep.q_at_2 == -1
    assert rep.sign_q_at_minus2 == 1
    assert rep.d_at_minus1 == 6 * g - 1
    assert rep.d_at_1 == -1
    assert rep.roots_in_critical_interval == g - 1
    assert rep.roots_above_2 == 1
    assert rep.cyclotomic_free and rep.reciprocal and rep.inverse_is_root
    assert rep.is_salem and rep.pa_type and rep.cross_check_vs_classify
    assert rep.singularity.trace_field_degree == g


def test_invalid_g():
    with pytest.raises(ValueError):
        salem_report(0)
