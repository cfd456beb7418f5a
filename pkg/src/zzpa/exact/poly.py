"""Dense univariate polynomials with exact integer or rational coefficients.

Coefficients are stored ascending (index i is the coefficient of t^i).  Integer
coefficients stay Python ints; anything with a denominator becomes a Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _canon(c: Number) -> Number:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class Poly:
    """Immutable polynomial; ``Poly([1, 0, -2, 1])`` is t^3 - 2t^2 + 1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_canon(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_descending(cls, coeffs: Sequence[Number]) -> "Poly":
        return cls(list(reversed(coeffs)))

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic
    @staticmethod
    def _lift(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly([x])
        raise TypeError(f"cannot combine Poly with {type(x).__name__}")

    def __add__(self, other) -> "Poly":
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Number) -> "Poly":
        return Poly([c * a for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else Poly()

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        d = self._lift(other)
        if d.is_zero():
            raise ZeroDivisionError("zero divisor")
        rem = list(self.coeffs)
        dd = d.degree
        lc = d.lc
        if len(rem) - 1 < dd:
            return Poly(), self
        quot = [0] * (len(rem) - dd)
        exact_int = d.is_integral() and abs(lc) == 1
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd]
            if c == 0:
                continue
            q = c * lc if exact_int else Fraction(c) / lc
            quot[k] = q
            for j in range(dd + 1):
                rem[k + j] -= q * d.coeffs[j]
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    # evaluation and calculus
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def taylor_shift(self, a: Number) -> "Poly":
        """Return p(t + a)."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Poly(cs)

    def reversed(self) -> "Poly":
        """t^deg p(1/t)."""
        return Poly(reversed(self.coeffs))

    # normal forms
    def content(self) -> Fraction:
        """Positive rational c with p/c primitive integral (0 for the zero polynomial)."""
        if not self.coeffs:
            return Fraction(0)
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c * den))
        return Fraction(g, den)

    def primitive(self) -> "Poly":
        """Integer polynomial with content 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        if c.denominator == 1:
            k = c.numerator
            return Poly([a // k for a in self.coeffs])
        return Poly([int(Fraction(a) / c) for a in self.coeffs])

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.lc
        if lc == 1:
            return self
        return Poly([Fraction(c) / lc for c in self.coeffs])

    def squarefree_part(self) -> "Poly":
        """Primitive integer polynomial with the same roots, all simple."""
        if self.degree <= 0:
            return Poly([1]) if self.coeffs else self
        g = poly_gcd(self, self.derivative())
        return (self // g).primitive()

    def is_reciprocal(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    # display
    def to_list(self) -> list:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if i == 0:
                body = str(a)
            else:
                mon = var if i == 1 else f"{var}^{i}"
                body = mon if a == 1 else f"{a}*{mon}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = format


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (zero only if both inputs are zero)."""
    a, b = Poly._lift(a), Poly._lift(b)
    while b:
        # primitive remainders keep coefficient growth in check
        a, b = b, (a % b)
        if b:
            b = b.primitive()
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, u) with s*a + u*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    u0, u1 = Poly(), Poly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if not r0:
        return r0, s0, u0
    lc = r0.lc
    inv = Fraction(1) / lc
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)


# cyclotomic polynomials

@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by dividing t^n - 1 by Phi_d for proper divisors d."""
    if n < 1:
        raise ValueError("n must be positive")
    p = Poly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_search_bound(deg: int) -> int:
    # phi(n) >= sqrt(n/2), so phi(n) <= deg forces n <= 2 deg^2
    return max(2, 2 * deg * deg)


def has_cyclotomic_factor(p: Poly) -> tuple[bool, int | None]:
    """Whether some Phi_n divides p; the witness is the smallest such n."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    d = p.degree
    for n in range(1, cyclotomic_search_bound(d) + 1):
        if totient(n) > d:
            continue
        if cyclotomic(n).divides(p):
            return True, n
    return False, None


def strip_cyclotomic_factors(p: Poly) -> tuple[Poly, list[int]]:
    """Divide out every cyclotomic factor (with multiplicity); returns (rest, removed n's)."""
    removed: list[int] = []
    q = p
    while q.degree > 0:
        found, n = has_cyclotomic_factor(q)
        if not found:
            break
        q = q.exact_div(cyclotomic(n))
        removed.append(n)
    return q.primitive() if q.degree >= 0 else q, removed


# reciprocal polynomials and companions

def _chebyshev_like(j: int) -> Poly:
    """V_j(w) with t^j + t^-j = V_j(t + 1/t)."""
    v0, v1 = Poly([2]), Poly([0, 1])
    if j == 0:
        return v0
    for _ in range(j - 1):
        v0, v1 = v1, Poly([0, 1]) * v1 - v0
    return v1


def companion_polynomial(p: Poly) -> Poly:
    """q with p(t) = t^g q(t + 1/t); an odd-degree input first loses its factor t + 1."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if not p.is_reciprocal():
        raise ValueError(f"{p} is not reciprocal")
    if p.degree % 2 == 1:
        q, r = divmod(p, Poly([1, 1]))
        if r:
            raise ValueError(f"{p} has odd degree but t + 1 does not divide it")
        p = q
        if not p.is_reciprocal():
            raise ValueError("quotient by t + 1 is not reciprocal")
    g = p.degree // 2
    q = Poly([p[g]])
    for j in range(1, g + 1):
        q = q + _chebyshev_like(j).scale(p[g + j])
    return q


def expand_companion(q: Poly) -> Poly:
    """Inverse of companion_polynomial: t^g q(t + 1/t)."""
    g = q.degree
    out = Poly()
    for j, c in enumerate(q.coeffs):
        # t^g (t + 1/t)^j = t^(g-j) (t^2 + 1)^j
        out = out + (Poly([1, 0, 1]) ** j).shift(g - j).scale(c)
    return out
