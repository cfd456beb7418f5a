"""The m = 2 family labelled 1/(2g): digit polynomials, companions and Salem certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classify import FractionLabel, build_zigzag, digit_poly_from_fraction
from .exact import (AlgebraicReal, FieldContext, Poly, companion_polynomial,
                    has_cyclotomic_factor, isolate_real_roots, poly_gcd, sturm_count)
from .exact.roots import cauchy_bound
from .galois import SingularityReport, is_pA_type, singularity_report

T_PLUS_ONE = Poly([1, 1])
W = Poly([0, 1])


class SalemError(ArithmeticError):
    pass


def _check_g(g: int, least: int = 1) -> None:
    if not isinstance(g, int) or g < least:
        raise ValueError(f"g must be an integer >= {least}")


def family_digit_poly(g: int) -> Poly:
    """t^{2g+1} - 2t^{2g} - 2t + 1, cross-checked against the closed form for 1/(2g)."""
    _check_g(g)
    p = Poly.monomial(2 * g + 1) - Poly.monomial(2 * g, 2) + Poly([1, -2])
    closed = digit_poly_from_fraction(2, FractionLabel(1, 2 * g))
    if closed != p:
        raise SalemError(f"closed form {closed} differs from family polynomial {p}")
    return p


def d_poly(g: int) -> Poly:
    """D_g / (t + 1), checked against t^{2g} + 1 + 3 sum_{i=1}^{2g-1} (-1)^i t^i."""
    q, r = divmod(family_digit_poly(g), T_PLUS_ONE)
    if r:
        raise SalemError(f"t + 1 does not divide D_{g}")
    display = Poly([1] + [3 * (-1) ** i for i in range(1, 2 * g)] + [1])
    if q != display:
        raise SalemError(f"quotient {q} differs from the alternating form {display}")
    return q


def companion_q(g: int) -> Poly:
    return companion_polynomial(d_poly(g))


def check_recurrence(g: int) -> bool:
    """q_{g+2} = w q_{g+1} - q_g."""
    _check_g(g)
    return companion_q(g + 2) == W * companion_q(g + 1) - companion_q(g)


def critical_roots(q: Poly) -> list[AlgebraicReal]:
    """Roots of q in (-2, 2), with isolating intervals inside (-2, 2)."""
    out = []
    for r in isolate_real_roots(q):
        while r.lo < 2 <= r.hi or r.lo <= -2 < r.hi:
            r = r.bisect()
        if -2 < r.lo and r.hi < 2:
            out.append(r)
    return out


def _separate(a: AlgebraicReal, b: AlgebraicReal) -> tuple[AlgebraicReal, AlgebraicReal]:
    while not (a.hi < b.lo or b.hi < a.lo):
        a, b = a.bisect(), b.bisect()
    return a, b


def interlacing_check(g: int) -> bool:
    """-2 < b_1 < a_1 < b_2 < ... < a_{g-1} < b_g < 2 for roots a of q_g and b of q_{g+1}."""
    _check_g(g)
    qa, qb = companion_q(g), companion_q(g + 1)
    if poly_gcd(qa, qb).degree > 0:
        return False
    a_roots, b_roots = critical_roots(qa), critical_roots(qb)
    if len(a_roots) != g - 1 or len(b_roots) != g:
        raise SalemError(f"root counts in (-2, 2): q_{g} has {len(a_roots)}, "
                         f"q_{g + 1} has {len(b_roots)}")
    merged = []
    for i in range(g):
        merged.append(b_roots[i])
        if i < g - 1:
            merged.append(a_roots[i])
    for i in range(len(merged) - 1):
        x, y = _separate(merged[i], merged[i + 1])
        if not x.hi < y.lo:
            return False
        merged[i], merged[i + 1] = x, y
    return True


@dataclass
class SalemReport:
    g: int
    D_g: Poly
    d_g: Poly
    q_g: Poly
    recurrence_ok: bool | None = None
    q_at_2: int | None = None
    sign_q_at_minus2: int | None = None
    d_at_minus1: int | None = None
    d_at_1: int | None = None
    roots_in_critical_interval: int | None = None
    roots_above_2: int | None = None
    interlaces_previous: bool | None = None
    cyclotomic_free: bool | None = None
    reciprocal: bool | None = None
    real_roots_above_1: int | None = None
    real_roots_in_unit_interval: int | None = None
    unit_circle_roots: int | None = None
    lambda_g: AlgebraicReal | None = None
    inverse_is_root: bool | None = None
    is_salem: bool = False
    degenerate: bool = False
    pa_type: bool | None = None
    singularity: SingularityReport | None = None
    cross_check_vs_classify: bool | None = None
    errors: list[str] = field(default_factory=list)


def _count_real_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    return sum(1 for r in isolate_real_roots(p) if r.compare(lo) > 0 and r.compare(hi) < 0)


def salem_report(g: int, with_surface: bool = True) -> SalemReport:
    """Every certificate for the g-th family member; failures are recorded, not raised."""
    _check_g(g)
    D = family_digit_poly(g)
    d = d_poly(g)
    q = companion_polynomial(d)
    rep = SalemReport(g, D, d, q, degenerate=(g == 1))

    def attempt(name, fn):
        try:
            return fn()
        except Exception as exc:  # recorded in the report by design
            rep.errors.append(f"{name}: {exc}")
            return None

    rep.recurrence_ok = attempt("recurrence", lambda: check_recurrence(g))
    rep.q_at_2 = q(2)
    rep.sign_q_at_minus2 = (1 if (-1) ** g * q(-2) > 0 else -1 if (-1) ** g * q(-2) < 0 else 0)
    rep.d_at_minus1 = d(-1)
    rep.d_at_1 = d(1)
    rep.roots_in_critical_interval = sturm_count(q, -2, 2)
    rep.roots_above_2 = sturm_count(q, 2, cauchy_bound(q) + 1)
    rep.unit_circle_roots = 2 * rep.roots_in_critical_interval
    if g >= 2:
        rep.interlaces_previous = attempt("interlacing", lambda: interlacing_check(g - 1))
    rep.cyclotomic_free = not has_cyclotomic_factor(d)[0]
    rep.reciprocal = d.is_reciprocal()
    big = cauchy_bound(d) + 1
    rep.real_roots_above_1 = _count_real_roots(d, Fraction(1), big)
    rep.real_roots_in_unit_interval = _count_real_roots(d, Fraction(0), Fraction(1))

    census = (rep.real_roots_above_1 == 1 and rep.real_roots_in_unit_interval == 1
              and rep.roots_in_critical_interval == g - 1
              and 2 + rep.unit_circle_roots == d.degree)
    rep.is_salem = bool(rep.reciprocal and census and rep.cyclotomic_free and not rep.errors)

    roots = isolate_real_roots(d)
    lam = roots[-1]
    rep.lambda_g = lam
    ctx = FieldContext(d, lam, certified=rep.is_salem or None)
    rep.inverse_is_root = ctx(d.reversed()).is_zero() and ctx(d).is_zero()

    def cross_check():
        built = build_zigzag(2, FractionLabel(1, 2 * g))
        return built, built.digit_poly == D == digit_poly_from_fraction(2, FractionLabel(1, 2 * g))

    res = attempt("classify cross-check", cross_check)
    if res is not None:
        built, rep.cross_check_vs_classify = res
        if with_surface:
            def surface():
                verdict = is_pA_type(built.f, built.orbit)
                rep.pa_type = verdict.yes
                return singularity_report(built.f, built.orbit, verdict) if verdict.yes else None
            rep.singularity = attempt("surface census", surface)
    if rep.cross_check_vs_classify is False:
        rep.errors.append("classify cross-check: polynomials differ")
        rep.is_salem = False
    return rep
