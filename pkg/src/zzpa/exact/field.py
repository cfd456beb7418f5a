"""Exact arithmetic in Q(lambda) for a real algebraic lambda.

An element is N(lambda)/den with N an integer polynomial reduced modulo the
context modulus.  Equality is decided exactly (reduction plus a gcd test when
the modulus is not known to be irreducible); signs are decided by interval
evaluation on a shrinking isolating interval of lambda.
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence, Union

from .poly import Poly, poly_gcd, poly_xgcd, strip_cyclotomic_factors
from .roots import AlgebraicReal, perron_root, round_half_even, sturm_count

Rational = Union[int, Fraction]

DEFAULT_MAX_BISECTIONS = 512


class UndecidedError(ArithmeticError):
    """Raised when a sign cannot be decided within the bisection budget."""


def max_bisections() -> int:
    raw = os.environ.get("ZZPA_MAX_BISECTIONS")
    if raw is None:
        return DEFAULT_MAX_BISECTIONS
    value = int(raw)
    if value < 1:
        raise ValueError("ZZPA_MAX_BISECTIONS must be positive")
    return value


def _known_irreducible(p: Poly) -> bool:
    d = p.degree
    if d == 1:
        return True
    if d == 2:
        c, b, a = p.coeffs
        disc = b * b - 4 * a * c
        return disc < 0 or isqrt(disc) ** 2 != disc
    if d == 3 and abs(p.lc) == 1:
        # a monic cubic is irreducible iff it has no integer root dividing c0
        c0 = abs(p[0])
        if c0 == 0:
            return False
        divisors = [k for k in range(1, isqrt(c0) + 1) if c0 % k == 0]
        divisors += [c0 // k for k in divisors]
        return all(p(s * k) != 0 for k in divisors for s in (1, -1))
    return False


def _interval_eval(num: Sequence[int], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of N(x) for x in [lo, hi], assuming 0 < lo."""
    pos_lo = pos_hi = neg_lo = neg_hi = Fraction(0)
    for c in reversed(num):
        pos_lo *= lo
        pos_hi *= hi
        neg_lo *= lo
        neg_hi *= hi
        if c > 0:
            pos_lo += c
            pos_hi += c
        elif c < 0:
            neg_lo -= c
            neg_hi -= c
    return pos_lo - neg_hi, pos_hi - neg_lo


class FieldContext:
    """Q(lambda) presented as Q[t]/(modulus) with lambda pinned by an isolating interval."""

    def __init__(self, modulus: Poly, root: AlgebraicReal, certified: bool | None = None):
        m = modulus.squarefree_part()
        if m.degree < 1:
            raise ValueError("modulus must have positive degree")
        if not m.is_integral():
            raise ValueError("modulus must have integer coefficients")
        if sturm_count(m, root.lo, root.hi) != 1:
            raise ValueError("root interval does not isolate a root of the modulus")
        self.modulus = m
        self.degree = m.degree
        self._root = AlgebraicReal(m, root.lo, root.hi)
        self.certified_irreducible = _known_irreducible(m) if certified is None else certified
        self._bisections = 0
        self._lock = threading.Lock()
        self._float = None
        self.max_bisections = max_bisections()
        # keep lambda's interval off zero so monotone enclosures apply
        while self._root.lo <= 0 <= self._root.hi:
            self._root = self._root.bisect()

    @classmethod
    def from_polynomial(cls, p: Poly, root: AlgebraicReal | None = None,
                        certified: bool | None = None) -> "FieldContext":
        """Context for the root of p (default: its Perron root), cyclotomic factors removed."""
        q, _ = strip_cyclotomic_factors(p.squarefree_part())
        if q.degree < 1:
            raise ValueError(f"{p} has no non-cyclotomic factor")
        if root is None:
            root = perron_root(q)
        else:
            lo, hi = root.lo, root.hi
            if sturm_count(q, lo, hi) != 1:
                raise ValueError("root is a root of a cyclotomic factor")
            root = AlgebraicReal(q, lo, hi)
        return cls(q, root, certified)

    @property
    def root(self) -> AlgebraicReal:
        return self._root

    def lam_float(self) -> float:
        return float(self._approx()[0]) / (1 << self._approx()[1])

    def _approx(self) -> tuple[int, int]:
        """lambda ~ a / 2^k to about 256 bits, on a private copy of the interval."""
        if self._float is None:
            k = 256
            r = self._root.refine(Fraction(1, 1 << k))
            mid = (r.lo + r.hi) / 2
            self._float = (round(mid * (1 << k)), k)
        return self._float

    def approx_value(self, num: Sequence[int], den: int) -> float:
        """Double-precision value of N(lambda)/den, accurate to rounding."""
        a, k = self._approx()
        d = len(num) - 1
        acc = 0
        for i, c in enumerate(num):
            acc += c * a ** i << (k * (d - i))
        return float(Fraction(acc, den << (k * d)))

    def refine(self, steps: int) -> None:
        with self._lock:
            if self._bisections >= self.max_bisections:
                raise UndecidedError(
                    f"sign undecided after {self._bisections} bisections of the root interval")
            steps = min(steps, self.max_bisections - self._bisections)
            r = self._root
            for _ in range(steps):
                r = r.bisect()
            self._root = r
            self._bisections += steps

    # element constructors
    def element(self, coeffs: Sequence[Rational], den: int = 1) -> "FieldElement":
        return FieldElement.from_rational_coeffs(self, coeffs, den)

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.ctx is not self:
                raise ValueError("mixed contexts")
            return x
        if isinstance(x, Poly):
            return self.element(x.coeffs)
        return self.element([x])

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (), 1)

    @property
    def one(self) -> "FieldElement":
        return self.element([1])

    @property
    def gen(self) -> "FieldElement":
        return self.element([0, 1])

    # internals shared with elements
    def reduce(self, num: list[int], den: int) -> tuple[tuple[int, ...], int]:
        m = self.modulus.coeffs
        d = self.degree
        lc = m[-1]
        num = list(num)
        while len(num) > d:
            c = num.pop()
            if c == 0:
                continue
            k = len(num) - d
            if lc != 1:
                num = [lc * a for a in num]
                den *= lc
            for j in range(d):
                num[k + j] -= c * m[j]
        while num and num[-1] == 0:
            num.pop()
        if not num:
            return (), 1
        if den < 0:
            num = [-a for a in num]
            den = -den
        g = den
        for a in num:
            g = gcd(g, a)
            if g == 1:
                break
        if g > 1:
            num = [a // g for a in num]
            den //= g
        return tuple(num), den

    def vanishes(self, num: Sequence[int]) -> bool:
        """Exact test N(lambda) == 0 for a reduced nonzero numerator."""
        if self.certified_irreducible:
            return False
        g = poly_gcd(Poly(num), self.modulus)
        if g.degree < 1:
            return False
        r = self._root
        return sturm_count(g.primitive(), r.lo, r.hi) == 1

    def enclose(self, num: Sequence[int], den: int) -> tuple[Fraction, Fraction]:
        r = self._root
        lo, hi = _interval_eval(num, r.lo, r.hi) if r.lo > 0 else \
            _neg_interval_eval(num, r.lo, r.hi)
        return lo / den, hi / den


def _neg_interval_eval(num: Sequence[int], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    # N(x) = N~(-x) with -x in [-hi, -lo], both positive
    flipped = [c if i % 2 == 0 else -c for i, c in enumerate(num)]
    return _interval_eval(flipped, -hi, -lo)


class FieldElement:
    """Exact element of a FieldContext."""

    __slots__ = ("ctx", "num", "den")
    __hash__ = None  # equality is semantic (may need a gcd test), so no hashing

    def __init__(self, ctx: FieldContext, num: tuple[int, ...], den: int):
        self.ctx = ctx
        self.num = num
        self.den = den

    @classmethod
    def from_rational_coeffs(cls, ctx: FieldContext, coeffs: Sequence[Rational],
                             den: int = 1) -> "FieldElement":
        fr = [Fraction(c) for c in coeffs]
        common = 1
        for c in fr:
            common = common * c.denominator // gcd(common, c.denominator)
        num = [int(c * common) for c in fr]
        return cls(ctx, *ctx.reduce(num, den * common))

    # arithmetic
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("mixed contexts")
            return other
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return FieldElement(self.ctx, (f.numerator,) if f else (), f.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        n = max(len(self.num), len(o.num))
        a = self.num + (0,) * (n - len(self.num))
        b = o.num + (0,) * (n - len(o.num))
        num = [x * o.den + y * self.den for x, y in zip(a, b)]
        return FieldElement(self.ctx, *self.ctx.reduce(num, self.den * o.den))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return self.ctx.zero
        out = [0] * (len(self.num) + len(o.num) - 1)
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(o.num):
                    out[i + j] += x * y
        return FieldElement(self.ctx, *self.ctx.reduce(out, self.den * o.den))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        modulus = self.ctx.modulus
        n = Poly(self.num)
        g = poly_gcd(n, modulus)
        if g.degree > 0:
            # lambda is a root of the cofactor, which is coprime to N
            modulus = modulus.exact_div(g)
        g, s, _ = poly_xgcd(n, modulus)
        if g.degree != 0:
            raise ArithmeticError("inverse computation failed")
        return FieldElement.from_rational_coeffs(self.ctx, s.scale(self.den).coeffs)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero")
        if len(o.num) == 1:
            f = Fraction(o.den, o.num[0])
            return self * f
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ctx.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # decisions
    def is_zero(self) -> bool:
        if not self.num:
            return True
        if len(self.num) == 1 or self.ctx.certified_irreducible:
            return False
        lo, hi = self.ctx.enclose(self.num, self.den)
        if lo > 0 or hi < 0:
            return False
        return self.ctx.vanishes(self.num)

    def sign(self) -> int:
        if not self.num:
            return 0
        if len(self.num) == 1:
            return 1 if self.num[0] > 0 else -1
        checked_zero = False
        step = 16
        while True:
            lo, hi = self.ctx.enclose(self.num, self.den)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if not checked_zero:
                if self.ctx.vanishes(self.num):
                    return 0
                checked_zero = True
            self.ctx.refine(step)
            step = min(2 * step, 128)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def compare(self, other) -> int:
        return (self - self._coerce(other)).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # conversions
    def rational_value(self) -> Fraction | None:
        if not self.num:
            return Fraction(0)
        if len(self.num) == 1:
            return Fraction(self.num[0], self.den)
        return None

    def __float__(self) -> float:
        r = self.rational_value()
        if r is not None:
            return float(r)
        return self.ctx.approx_value(self.num, self.den)

    def enclosure(self, width: Rational) -> tuple[Fraction, Fraction]:
        """Rational interval of width at most ``width`` containing the value."""
        r = self.rational_value()
        if r is not None:
            return r, r
        while True:
            lo, hi = self.ctx.enclose(self.num, self.den)
            if hi - lo <= width:
                return lo, hi
            self.ctx.refine(8)

    def decimal(self, places: int = 12) -> str:
        """Correctly rounded (half-even) fixed-point decimal."""
        r = self.rational_value()
        if r is not None:
            return round_half_even(r, places)
        while True:
            lo, hi = self.ctx.enclose(self.num, self.den)
            a, b = round_half_even(lo, places), round_half_even(hi, places)
            if a == b:
                return a
            self.ctx.refine(8)

    def poly(self) -> Poly:
        """Numerator over Q: value = poly()(lambda)."""
        return Poly([Fraction(c, self.den) for c in self.num])

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": self.den}

    def __repr__(self) -> str:
        return f"FieldElement(({self.poly().format('L')}), ~{float(self):.12g})"
