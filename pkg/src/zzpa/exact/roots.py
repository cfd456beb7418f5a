"""Real roots of integer polynomials: Sturm counts, Descartes bisection, isolating intervals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .poly import Poly, poly_gcd

Rational = Union[int, Fraction]


class EndpointRootError(ValueError):
    pass


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq) -> int:
    count, prev = 0, 0
    for x in seq:
        s = sign(x)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


@lru_cache(maxsize=4096)
def sturm_sequence(p: Poly) -> tuple[Poly, ...]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        # positive rescaling keeps the sign pattern and the integers small
        c = r.content()
        seq.append(-r.scale(1 / c) if c else -r)
    return tuple(seq)


def _variations_at(seq, x) -> int:
    return sign_variations([q(x) for q in seq])


def sturm_count(p: Poly, a: Rational, b: Rational) -> int:
    """Number of distinct real roots of p in the open interval (a, b)."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if p(a) == 0 or p(b) == 0:
        raise EndpointRootError(
            "polynomial vanishes at an endpoint; perturb the endpoints by a small rational")
    seq = sturm_sequence(p)
    return _variations_at(seq, a) - _variations_at(seq, b)


def cauchy_bound(p: Poly) -> Fraction:
    """All roots satisfy |x| < bound."""
    lc = abs(p.lc)
    return 1 + max((Fraction(abs(c)) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def descartes_bound(p: Poly, a: Fraction, b: Fraction) -> int:
    """Sign variations bounding the number of roots of p in (a, b), with parity."""
    q = p.compose(Poly([a, b - a]))          # roots in (0, 1)
    q = q.reversed().taylor_shift(1)         # x -> 1/(x+1): roots in (0, inf)
    return sign_variations(q.coeffs)


def round_half_even(x: Fraction, places: int) -> str:
    """Fixed-point decimal string of a rational with ``places`` digits after the point."""
    scaled = x * 10 ** places
    q, r = divmod(scaled.numerator, scaled.denominator)
    twice = 2 * r
    if twice > scaled.denominator or (twice == scaled.denominator and q % 2 == 1):
        q += 1
    neg = q < 0
    digits = str(abs(q)).rjust(places + 1, "0")
    body = digits[:-places] + "." + digits[-places:] if places else digits
    return ("-" if neg else "") + body


@dataclass(frozen=True)
class AlgebraicReal:
    """The unique root of ``defining`` in [lo, hi]."""

    defining: Poly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("isolating interval must satisfy lo < hi")

    @classmethod
    def certified(cls, defining: Poly, lo: Rational, hi: Rational) -> "AlgebraicReal":
        p = defining.squarefree_part()
        lo, hi = Fraction(lo), Fraction(hi)
        if sturm_count(p, lo, hi) != 1:
            raise ValueError(f"[{lo}, {hi}] does not isolate a single root of {p}")
        return cls(p, lo, hi)

    @classmethod
    def rational(cls, r: Rational) -> "AlgebraicReal":
        r = Fraction(r)
        return cls(Poly([-r.numerator, r.denominator]), r - 1, r + 1)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def bisect(self) -> "AlgebraicReal":
        p = self.defining
        mid = (self.lo + self.hi) / 2
        v = p(mid)
        if v == 0:
            # rational root: shrink symmetrically; mid is the only root inside
            q = (self.hi - self.lo) / 4
            return AlgebraicReal(p, mid - q, mid + q)
        if sign(p(self.lo)) * sign(v) < 0:
            return AlgebraicReal(p, self.lo, mid)
        return AlgebraicReal(p, mid, self.hi)

    def refine(self, width: Rational) -> "AlgebraicReal":
        r = self
        while r.width > width:
            r = r.bisect()
        return r

    def is_rational_root(self) -> Fraction | None:
        if self.defining.degree == 1:
            c0, c1 = self.defining.coeffs
            return Fraction(-c0, c1)
        return None

    def compare(self, r: Rational) -> int:
        """Sign of (self - r), decided exactly."""
        r = Fraction(r)
        x = self
        if x.defining(r) == 0 and x.lo <= r <= x.hi:
            return 0
        while x.lo <= r <= x.hi:
            x = x.bisect()
        return 1 if x.lo > r else -1

    def __float__(self) -> float:
        x = self.refine(Fraction(1, 1 << 60) * max(1, abs(self.hi)))
        return float((x.lo + x.hi) / 2)

    def decimal(self, places: int = 12) -> str:
        x = self
        while True:
            a, b = round_half_even(x.lo, places), round_half_even(x.hi, places)
            if a == b:
                return a
            x = x.bisect()

    def approx(self, width: Rational = Fraction(1, 1 << 60)) -> Fraction:
        x = self.refine(width)
        return (x.lo + x.hi) / 2


def isolate_real_roots(p: Poly) -> list[AlgebraicReal]:
    """One isolating interval per distinct real root, sorted ascending."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    q = p.squarefree_part()
    if q.degree <= 0:
        return []
    bound = cauchy_bound(q)
    bound = Fraction(int(bound) + 1)
    found: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        v = descartes_bound(q, a, b)
        if v == 0:
            continue
        if v == 1:
            found.append((a, b))
            continue
        mid = (a + b) / 2
        j = 3
        while q(mid) == 0:
            # keep split points off the roots; the root stays strictly inside a half
            mid = (a + b) / 2 + (b - a) / (1 << j)
            j += 1
        stack.append((a, mid))
        stack.append((mid, b))
    found.sort()
    roots = []
    for a, b in found:
        if sturm_count(q, a, b) != 1:
            raise ArithmeticError("isolation certificate failed")
        roots.append(AlgebraicReal(q, a, b))
    return roots


def compare_reals(a: AlgebraicReal, b: AlgebraicReal) -> int:
    """Sign of a - b for roots of possibly different polynomials."""
    g = poly_gcd(a.defining, b.defining)
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        # a root of the gcd shared by both intervals is both a and b
        if g.degree > 0 and lo < hi and g(lo) != 0 and g(hi) != 0 and sturm_count(g, lo, hi) > 0:
            return 0
        a, b = a.bisect(), b.bisect()


def perron_root(p: Poly) -> AlgebraicReal:
    """Largest real root, required to exceed 1."""
    roots = isolate_real_roots(p)
    if not roots or roots[-1].compare(1) <= 0:
        raise ValueError("no expanding root")
    return roots[-1]
