"""Command-line entry point.

Exit codes: 0 success or verdict reached, 1 verification failure,
2 invalid input, 3 undecided.  Errors are JSON objects on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .classify import BuildError, FractionLabel, build_zigzag, digit_poly_from_fraction, phi, reduced_fractions
from .exact import Poly, UndecidedError, compare_reals, perron_root
from .galois import OutOfScope, is_pA_type, limit_set_exact, singularity_report
from .render import FigureSpec, render_limit_set_svg, render_zigzag_svg
from .report import (built_extras, limit_set_json, map_report, poly_json, real_json, reverify,
                     salem_json, singularity_json, verdict_json)
from .salem import salem_report
from .zigzag import NotPeriodic, ZigZagError, orbit_of_one, zigzag_from_polynomial

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _label(text: str) -> FractionLabel:
    try:
        return FractionLabel.parse(text)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, "invalid_input", str(exc)) from None


def _modality(m: int) -> int:
    if m < 2:
        raise CliError(EXIT_INPUT, "invalid_input", "modality must be at least 2")
    return m


def _build(m: int, label: FractionLabel, max_steps: int | None):
    try:
        return build_zigzag(_modality(m), label, max_steps)
    except BuildError as exc:
        raise CliError(EXIT_VERIFY, "verification_failure", str(exc)) from None


def _write_svg(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def cmd_construct(args) -> tuple[dict, int]:
    label = _label(args.fraction)
    built = _build(args.m, label, args.max_steps)
    verdict = is_pA_type(built.f, built.orbit)
    sing = singularity_report(built.f, built.orbit, verdict) if verdict.yes else None
    recovered = phi(built.f, built.orbit)
    rep = map_report("construct", {"m": args.m, "fraction": args.fraction}, built.f, built.orbit,
                     built.digit_poly, **built_extras(built),
                     phi=str(recovered), verdict=verdict_json(verdict),
                     limit_set=limit_set_json(verdict.limit_set), singularity=singularity_json(sing))
    _write_svg(args.svg, render_zigzag_svg(built.f, built.orbit, FigureSpec()))
    ok = verdict.yes and recovered == label and verdict.limit_set.verified
    return rep, EXIT_OK if ok else EXIT_VERIFY


def cmd_digit_poly(args) -> tuple[dict, int]:
    label = _label(args.fraction)
    closed = digit_poly_from_fraction(_modality(args.m), label)
    built = _build(args.m, label, args.max_steps)
    rep = map_report("digit-poly", {"m": args.m, "fraction": args.fraction}, built.f, built.orbit,
                     built.digit_poly, **built_extras(built),
                     cross_check=built.digit_poly == closed)
    return rep, EXIT_OK if built.digit_poly == closed else EXIT_VERIFY


def _parse_coeffs(text: str) -> Poly:
    try:
        p = Poly([Fraction(c) for c in text.replace(" ", "").split(",") if c])
    except ValueError:
        raise CliError(EXIT_INPUT, "invalid_input", f"bad coefficient list {text!r}") from None
    if p.degree < 1:
        raise CliError(EXIT_INPUT, "invalid_input", "polynomial must have positive degree")
    return p


def cmd_check_pa(args) -> tuple[dict, int]:
    if args.poly is not None:
        if args.m is None or args.sign is None:
            raise CliError(EXIT_INPUT, "invalid_input", "--poly needs --m and --sign")
        p = _parse_coeffs(args.poly)
        try:
            f = zigzag_from_polynomial(args.m, args.sign, p)
        except (ZigZagError, ValueError) as exc:
            raise CliError(EXIT_INPUT, "invalid_input", str(exc)) from None
        inp = {"m": args.m, "sign": args.sign, "polynomial": poly_json(p)}
    else:
        if args.m is None or args.fraction is None:
            raise CliError(EXIT_INPUT, "invalid_input", "give m and a/b, or --poly with --m and --sign")
        built = _build(args.m, _label(args.fraction), args.max_steps)
        f = built.f
        inp = {"m": args.m, "fraction": args.fraction}
    orbit = orbit_of_one(f, args.max_steps)
    if isinstance(orbit, NotPeriodic):
        code = EXIT_INPUT if "preperiodic" in orbit.reason else EXIT_UNDECIDED
        raise CliError(code, "not_periodic" if code == EXIT_INPUT else "undecided",
                       f"map is not postcritically periodic: {orbit.reason}")
    verdict = is_pA_type(f, orbit)
    rep = map_report("check-pa", dict(inp), f, orbit, verdict.digit_poly, input=inp,
                     verdict=verdict_json(verdict), limit_set=limit_set_json(verdict.limit_set))
    return rep, EXIT_OK


def cmd_limit_set(args) -> tuple[dict, int]:
    built = _build(args.m, _label(args.fraction), args.max_steps)
    L = limit_set_exact(built.f, built.orbit)
    rep = map_report("limit-set", {"m": args.m, "fraction": args.fraction}, built.f, built.orbit,
                     built.digit_poly, **built_extras(built), limit_set=limit_set_json(L))
    if not L.rectangular:
        return rep, EXIT_VERIFY
    _write_svg(args.svg, render_limit_set_svg(L, FigureSpec()))
    return rep, EXIT_OK if L.verified else EXIT_VERIFY


def _salem_row(g: int) -> tuple[dict, bool]:
    rep = salem_report(g)
    return salem_json(rep), rep.is_salem and not rep.errors


SALEM_CSV_HEADER = ["g", "lambda_decimal", "defining_polynomial", "is_salem", "genus"]


def _parse_range(text: str) -> range:
    try:
        a, b = (int(s) for s in text.split(".."))
    except ValueError:
        raise CliError(EXIT_INPUT, "invalid_input", f"expected g1..g2, got {text!r}") from None
    if a < 1 or b < a:
        raise CliError(EXIT_INPUT, "invalid_input", f"empty or invalid range {text!r}")
    return range(a, b + 1)


def cmd_salem(args):
    if (args.g is None) == (args.range is None):
        raise CliError(EXIT_INPUT, "invalid_input", "give exactly one of g or --range")
    if args.g is not None:
        if args.g < 1:
            raise CliError(EXIT_INPUT, "invalid_input", "g must be at least 1")
        rep, ok = _salem_row(args.g)
        return rep, EXIT_OK if ok else EXIT_VERIFY
    gs = list(_parse_range(args.range))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_salem_row, gs))
    else:
        rows = [_salem_row(g) for g in gs]
    code = EXIT_OK if all(ok for _, ok in rows) else EXIT_VERIFY
    if args.format == "json":
        return [r for r, _ in rows], code
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SALEM_CSV_HEADER)
    for rep, _ in rows:
        lam = rep["lambda"]
        genus = (rep["singularity"] or {}).get("double_cover_genus")
        w.writerow([rep["input"]["g"], lam["decimal"], " ".join(str(c) for c in lam["defining_polynomial"]),
                    str(rep["is_salem"]).lower(), genus])
    return buf.getvalue(), code


EXPERIMENT_CSV_HEADER = ["m", "a", "b", "q_decimal", "lambda_decimal", "defining_polynomial"]


def cmd_experiment(args):
    """Growth rate against the fraction label, and how often their orders agree."""
    m = _modality(args.m)
    if args.bmax < 2:
        raise CliError(EXIT_INPUT, "invalid_input", "--bmax must be at least 2")
    labels = sorted(reduced_fractions(args.bmax), key=lambda q: q.value)
    lams = [perron_root(digit_poly_from_fraction(m, q)) for q in labels]
    if args.verify:
        for q in labels:
            _build(m, q, args.max_steps)
    agree = total = 0
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            total += 1
            agree += compare_reals(lams[i], lams[j]) < 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EXPERIMENT_CSV_HEADER)
    for q, lam in zip(labels, lams):
        lj = real_json(lam)
        w.writerow([m, q.a, q.b, f"{float(q.value):.12f}", lj["decimal"],
                    " ".join(str(c) for c in lj["defining_polynomial"])])
    summary = {"m": m, "bmax": args.bmax, "fractions": len(labels),
               "pairs": total, "order_agreements": agree}
    if args.summary:
        Path(args.summary).write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    else:
        print(json.dumps(summary), file=sys.stderr)
    return buf.getvalue(), EXIT_OK


def cmd_reverify(args) -> tuple[dict, int]:
    try:
        rep = json.loads(Path(args.report).read_text(encoding="utf-8"))
        checks = reverify(rep)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_INPUT, "invalid_input", f"unreadable report: {exc}") from None
    out = {"report": args.report, "checks": checks, "passed": all(checks.values())}
    return out, EXIT_OK if out["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zzpa", description=__doc__.splitlines()[0])
    p.add_argument("--timings", action="store_true", help="add wall-clock timings to JSON reports")
    p.add_argument("--max-steps", type=int, default=None, help="orbit search bound")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build the standard map labelled a/b and verify it")
    c.add_argument("m", type=int)
    c.add_argument("fraction")
    c.add_argument("--svg", help="write the graph of f as SVG")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("digit-poly", help="closed-form digit polynomial with orbit cross-check")
    c.add_argument("m", type=int)
    c.add_argument("fraction")
    c.set_defaults(func=cmd_digit_poly)

    c = sub.add_parser("check-pa", help="decide pseudo-Anosov type of a zig-zag")
    c.add_argument("m_pos", nargs="?", type=int, metavar="m")
    c.add_argument("fraction", nargs="?")
    c.add_argument("--poly", help="ascending coefficients c0,c1,... of a polynomial with root lambda")
    c.add_argument("--m", type=int, dest="m_opt")
    c.add_argument("--sign", type=int, choices=(1, -1))
    c.set_defaults(func=cmd_check_pa)

    c = sub.add_parser("limit-set", help="exact limit set of the Galois lift")
    c.add_argument("m", type=int)
    c.add_argument("fraction")
    c.add_argument("--svg", help="write the limit set as SVG")
    c.set_defaults(func=cmd_limit_set)

    c = sub.add_parser("salem", help="certificates for the family labelled 1/(2g)")
    c.add_argument("g", nargs="?", type=int)
    c.add_argument("--range", help="g1..g2, output CSV by default")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_salem)

    c = sub.add_parser("experiment", help="growth rate against fraction label, CSV")
    c.add_argument("m", type=int)
    c.add_argument("--bmax", type=int, required=True)
    c.add_argument("--verify", action="store_true", help="also build and verify every map")
    c.add_argument("--summary", help="write the agreement summary as JSON here")
    c.set_defaults(func=cmd_experiment)

    c = sub.add_parser("reverify", help="re-check a JSON report from its exact data")
    c.add_argument("report")
    c.set_defaults(func=cmd_reverify)
    return p


def _emit_error(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": {"kind": kind, "message": message, "exit_code": code}}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        return _emit_error("invalid_input", "could not parse arguments", EXIT_INPUT)
    if args.command == "check-pa":
        args.m = args.m_opt if args.m_opt is not None else args.m_pos
    start = time.perf_counter()
    try:
        out, code = args.func(args)
    except CliError as exc:
        return _emit_error(exc.kind, str(exc), exc.code)
    except UndecidedError as exc:
        return _emit_error("undecided", str(exc), EXIT_UNDECIDED)
    except OutOfScope as exc:
        return _emit_error("out_of_scope", str(exc), EXIT_INPUT)
    except (ZigZagError, ValueError) as exc:
        return _emit_error("invalid_input", str(exc), EXIT_INPUT)
    if isinstance(out, dict) and args.timings:
        out["timings"] = {"total_seconds": round(time.perf_counter() - start, 6)}
    text = out if isinstance(out, str) else json.dumps(out, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
