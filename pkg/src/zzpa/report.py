"""JSON reports with exact data next to every decimal, and their re-verification.

Field elements are stored as ascending coefficient vectors over the power
basis of the field modulus plus a positive common denominator.  All
polynomials are ascending (constant term first).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .classify import BuiltMap, FractionLabel, digit_poly_from_fraction
from .exact import AlgebraicReal, FieldContext, FieldElement, Poly, isolate_real_roots
from .galois import (LimitSet, NotRectangular, PAVerdict, Rect, SingularityReport,
                     evaluate_at_inverse, postcritical_lifts, verify_rectangles)
from .salem import SalemReport, companion_q, d_poly, family_digit_poly
from .zigzag import PostcriticalData, ZigZagMap, digit_polynomial, make_zigzag, require_periodic, tag_point

SCHEMA_VERSION = "1.0"
PLACES = 12
INTERVAL_WIDTH = Fraction(1, 1 << 64)


def poly_json(p: Poly) -> list:
    """Ascending coefficients; integers stay integers, other rationals become "p/q"."""
    out = []
    for c in p.coeffs:
        c = Fraction(c)
        out.append(c.numerator if c.denominator == 1 else str(c))
    return out


def poly_from_json(coeffs: list) -> Poly:
    return Poly([Fraction(c) for c in coeffs])


def element_json(x: FieldElement) -> dict:
    return {**x.to_json(), "decimal": x.decimal(PLACES)}


def element_from_json(ctx: FieldContext, d: dict) -> FieldElement:
    return ctx.element(d["num"], d["den"])


def real_json(r: AlgebraicReal) -> dict:
    """Root of a polynomial with a canonical isolating interval of width <= 2^-64."""
    canon = _canonical(r)
    return {"defining_polynomial": poly_json(canon.defining),
            "interval": [str(canon.lo), str(canon.hi)],
            "decimal": canon.decimal(PLACES)}


def _canonical(r: AlgebraicReal) -> AlgebraicReal:
    # independent of how far earlier computations refined the interval
    for cand in isolate_real_roots(r.defining):
        if cand.compare(r.lo) >= 0 and cand.compare(r.hi) <= 0:
            return cand.refine(INTERVAL_WIDTH)
    raise ValueError("interval does not meet any root")


def field_json(ctx: FieldContext) -> dict:
    return {"modulus": poly_json(ctx.modulus), "certified_irreducible": bool(ctx.certified_irreducible),
            "generator": real_json(ctx.root)}


def context_from_json(d: dict) -> FieldContext:
    modulus = poly_from_json(d["modulus"])
    lo, hi = (Fraction(s) for s in d["generator"]["interval"])
    return FieldContext(modulus, AlgebraicReal.certified(modulus, lo, hi),
                        certified=d.get("certified_irreducible") or None)


def map_json(f: ZigZagMap) -> dict:
    return {"m": f.m, "sign": f.sign, "standard": f.standard,
            "type": "positive" if f.positive else "negative"}


def orbit_json(orbit: PostcriticalData) -> dict:
    return {
        "period": orbit.period,
        "start": orbit.start,
        "points": [{"label": lab, "value": element_json(orbit.point(lab)),
                    "tag": orbit.taxonomy.get(lab, "-")} for lab in orbit.rho.labels],
        "itinerary": list(orbit.itinerary),
    }


def permutation_json(orbit: PostcriticalData) -> dict:
    return {"start": orbit.rho.start, "images": list(orbit.rho.images), "cycles": str(orbit.rho)}


def rect_json(r: Rect) -> dict:
    return {k: element_json(getattr(r, k)) for k in ("x_lo", "x_hi", "y_lo", "y_hi")}


def limit_set_json(L: LimitSet | NotRectangular | None) -> dict | None:
    if L is None:
        return None
    if isinstance(L, NotRectangular):
        return {"rectangular": False, "reason": L.reason, "cell": L.cell,
                "hulls": [rect_json(r) for r in L.hulls]}
    return {
        "rectangular": True,
        "cuts": [element_json(c) for c in L.cuts],
        "rectangles": [rect_json(r) for r in L.rects],
        "alignment": list(L.alignment),
        "vertical_components": [{"cut": c.cut, "x": element_json(c.x), "y_lo": element_json(c.y_lo),
                                 "y_hi": element_json(c.y_hi)} for c in L.components],
        "lifts": [{"x": element_json(x), "y": element_json(y)} for x, y in L.lifts],
        "checks": dict(L.checks),
        "verified": L.verified,
        "notes": list(L.notes),
        "policy_rounds": L.policy_rounds,
    }


def verdict_json(v: PAVerdict) -> dict:
    return {"pA_type": v.yes, "reasons": list(v.reasons), "condition1": v.condition1,
            "witness": element_json(v.witness), "notes": list(v.notes)}


def singularity_json(s: SingularityReport | None) -> dict | None:
    return None if s is None else s.to_json()


def envelope(command: str, args: dict, **body: Any) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": {"name": command, "args": args}, **body}


def map_report(command: str, args: dict, f: ZigZagMap, orbit: PostcriticalData,
               digit_poly: Poly, **extra: Any) -> dict:
    """Common body for reports about one zig-zag map."""
    return envelope(
        command, args,
        map=map_json(f),
        field=field_json(f.ctx),
        **{"lambda": real_json(f.lam)},
        digit_polynomial={"coefficients": poly_json(digit_poly), "reciprocal": digit_poly.is_reciprocal()},
        permutation=permutation_json(orbit),
        orbit=orbit_json(orbit),
        taxonomy=[orbit.taxonomy.get(lab, "-") for lab in orbit.rho.labels],
        **extra,
    )


def built_extras(built: BuiltMap) -> dict:
    return {"input": {"m": built.m, "fraction": str(built.label)},
            "closed_form": poly_json(built.closed_form)}


def salem_json(rep: SalemReport) -> dict:
    lam = real_json(rep.lambda_g) if rep.lambda_g is not None else None
    return envelope(
        "salem", {"g": rep.g},
        input={"g": rep.g},
        D_g=poly_json(rep.D_g), d_g=poly_json(rep.d_g), q_g=poly_json(rep.q_g),
        **{"lambda": lam},
        recurrence_ok=rep.recurrence_ok, q_at_2=rep.q_at_2, sign_q_at_minus2=rep.sign_q_at_minus2,
        d_at_minus1=rep.d_at_minus1, d_at_1=rep.d_at_1,
        roots_in_critical_interval=rep.roots_in_critical_interval, roots_above_2=rep.roots_above_2,
        interlaces_previous=rep.interlaces_previous, cyclotomic_free=rep.cyclotomic_free,
        reciprocal=rep.reciprocal, real_roots_above_1=rep.real_roots_above_1,
        real_roots_in_unit_interval=rep.real_roots_in_unit_interval,
        unit_circle_roots=rep.unit_circle_roots, inverse_is_root=rep.inverse_is_root,
        is_salem=rep.is_salem, degenerate=rep.degenerate, pa_type=rep.pa_type,
        singularity=singularity_json(rep.singularity),
        cross_check_vs_classify=rep.cross_check_vs_classify, errors=list(rep.errors),
    )


# re-verification

def _map_from_report(rep: dict) -> tuple[ZigZagMap, FieldContext]:
    ctx = context_from_json(rep["field"])
    f = make_zigzag(rep["map"]["m"], rep["map"]["sign"], ctx.root, ctx)
    return f, ctx


def _decimals_ok(ctx: FieldContext, node: Any) -> bool:
    """Every {"num", "den", "decimal"} object inside node has a correctly rounded decimal."""
    if isinstance(node, dict):
        if {"num", "den", "decimal"} <= node.keys():
            return element_from_json(ctx, node).decimal(PLACES) == node["decimal"]
        return all(_decimals_ok(ctx, v) for v in node.values())
    if isinstance(node, list):
        return all(_decimals_ok(ctx, v) for v in node)
    return True


def _reverify_map(rep: dict) -> dict[str, bool]:
    f, ctx = _map_from_report(rep)
    checks: dict[str, bool] = {}
    d = poly_from_json(rep["digit_polynomial"]["coefficients"])
    checks["digit_polynomial_vanishes"] = ctx(d).is_zero()
    orbit = require_periodic(f)
    checks["digit_polynomial_recomputed"] = digit_polynomial(f, orbit) == d
    if "closed_form" in rep:
        label = FractionLabel.parse(rep["input"]["fraction"])
        checks["closed_form"] = digit_poly_from_fraction(f.m, label) == d == poly_from_json(rep["closed_form"])
    pts = {p["label"]: element_from_json(ctx, p["value"]) for p in rep["orbit"]["points"]}
    start = rep["permutation"]["start"]
    images = rep["permutation"]["images"]
    checks["orbit_dynamics"] = all(f.evaluate(pts[lab]) == pts[images[lab - start]] for lab in pts)
    checks["orbit_order"] = all(pts[a] < pts[a + 1] for a in pts if a + 1 in pts)
    checks["taxonomy"] = all(tag_point(f, pts[p["label"]]) == p["tag"] for p in rep["orbit"]["points"])
    verdict = rep.get("verdict")
    if verdict is not None:
        w = element_from_json(ctx, verdict["witness"])
        checks["witness"] = evaluate_at_inverse(d, f) == w and (w.is_zero() == verdict["condition1"])
    ls = rep.get("limit_set")
    if ls is not None and ls["rectangular"]:
        rects = [Rect(*(element_from_json(ctx, r[k]) for k in ("x_lo", "x_hi", "y_lo", "y_hi")))
                 for r in ls["rectangles"]]
        checks["rectangles_tile"] = verify_rectangles(f, rects)
        lifts = [(element_from_json(ctx, p["x"]), element_from_json(ctx, p["y"])) for p in ls["lifts"]]
        fresh = postcritical_lifts(f, orbit)
        checks["lifts"] = len(lifts) == len(fresh) and all(
            a == c and b == e for (a, b), (c, e) in zip(lifts, fresh))
        comps = [(element_from_json(ctx, c["x"]), element_from_json(ctx, c["y_lo"]),
                  element_from_json(ctx, c["y_hi"])) for c in ls["vertical_components"]]
        centered = True
        for x, y in lifts:
            here = [(lo, hi) for cx, lo, hi in comps if cx == x]
            if len(here) != 1 or here[0][0] + here[0][1] != 2 * y:
                centered = False
        # the report's own claim is what gets confirmed
        checks["center_claim"] = centered == ls["checks"]["center"]
    checks["decimals"] = _decimals_ok(ctx, rep)
    return checks


def _reverify_salem(rep: dict) -> dict[str, bool]:
    g = rep["input"]["g"]
    checks = {
        "D_g": poly_from_json(rep["D_g"]) == family_digit_poly(g),
        "d_g": poly_from_json(rep["d_g"]) == d_poly(g),
        "q_g": poly_from_json(rep["q_g"]) == companion_q(g),
    }
    lam = rep["lambda"]
    d = poly_from_json(lam["defining_polynomial"])
    lo, hi = (Fraction(s) for s in lam["interval"])
    r = AlgebraicReal.certified(d, lo, hi)
    checks["lambda_is_largest_root"] = r.lo >= isolate_real_roots(d)[-1].lo
    checks["lambda_decimal"] = r.decimal(PLACES) == lam["decimal"]
    return checks


def reverify(rep: dict) -> dict[str, bool]:
    """Re-check every exact claim of a report from its own data."""
    if rep.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {rep.get('schema_version')!r}")
    name = rep["command"]["name"]
    if name == "salem":
        return _reverify_salem(rep)
    if name == "digit-poly":
        label = FractionLabel.parse(rep["input"]["fraction"])
        d = poly_from_json(rep["digit_polynomial"]["coefficients"])
        return {"closed_form": d == digit_poly_from_fraction(rep["input"]["m"], label),
                **_reverify_map(rep)}
    if name in ("construct", "check-pa", "limit-set"):
        return _reverify_map(rep)
    raise ValueError(f"cannot re-verify reports of command {name!r}")
