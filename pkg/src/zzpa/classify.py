"""Standard pseudo-Anosov zig-zags labelled by fractions a/b in (0, 1).

A fraction a/b corresponds to orbit size n = b + 1 and permutation parameter
k = b + 1 - a; the permutation family depends on the parity of m (with m = 2
handled separately), and the digit polynomial has a closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import FieldContext, Poly, perron_root
from .permutation import Permutation
from .zigzag import (PostcriticalData, ZigZagError, ZigZagMap, digit_polynomial, make_zigzag,
                     orbit_of_one)


class BuildError(ZigZagError):
    """A verification step of the constructor failed; ``check`` names the step."""

    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check
        self.detail = detail


@dataclass(frozen=True)
class FractionLabel:
    a: int
    b: int

    def __post_init__(self):
        if not (0 < self.a < self.b):
            raise ValueError(f"{self.a}/{self.b} is not in (0, 1)")
        if gcd(self.a, self.b) != 1:
            raise ValueError(f"{self.a}/{self.b} is not in lowest terms")

    @classmethod
    def parse(cls, text: str) -> "FractionLabel":
        try:
            a, b = (int(s) for s in text.strip().split("/"))
        except ValueError:
            raise ValueError(f"expected a fraction a/b, got {text!r}") from None
        return cls(a, b)

    @classmethod
    def from_nk(cls, n: int, k: int) -> "FractionLabel":
        q = Fraction(n - k, n - 1)
        return cls(q.numerator, q.denominator)

    @property
    def n(self) -> int:
        return self.b + 1

    @property
    def k(self) -> int:
        return self.b + 1 - self.a

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.b)

    def __str__(self) -> str:
        return f"{self.a}/{self.b}"


def reduced_fractions(bmax: int) -> list[FractionLabel]:
    """All a/b in (0, 1) with b <= bmax, ordered by (b, a)."""
    return [FractionLabel(a, b) for b in range(2, bmax + 1) for a in range(1, b) if gcd(a, b) == 1]


# permutation families

def _check_nk(n: int, k: int) -> None:
    if n < 3 or not 2 <= k <= n - 1:
        raise ValueError(f"need n >= 3 and 2 <= k <= n-1, got n={n}, k={k}")


def rho_e(n: int, k: int) -> Permutation:
    _check_nk(n, k)
    images = [n] + [i + (n - k) for i in range(2, k)] + [i - (k - 1) for i in range(k, n + 1)]
    return Permutation(tuple(images), 1)


def rho_o(n: int, k: int) -> Permutation:
    """rho_e(n, k) extended to {0..n} by 0 -> n and 1 -> 0."""
    _check_nk(n, k)
    images = [n, 0] + [i + (n - k) for i in range(2, k)] + [i - (k - 1) for i in range(k, n + 1)]
    return Permutation(tuple(images), 0)


def rho_2(n: int, k: int) -> Permutation:
    """tau^-1 . rho_e(n, k) . tau with tau the cycle (1 2 ... k-1)."""
    _check_nk(n, k)
    tau = Permutation(tuple(list(range(2, k)) + [1] + list(range(k, n + 1))), 1)
    return tau.inverse().compose(rho_e(n, k).compose(tau))


def rho_family(m: int, n: int, k: int) -> Permutation:
    if m < 2:
        raise ValueError("modality must be at least 2")
    if m == 2:
        return rho_2(n, k)
    return rho_e(n, k) if m % 2 == 0 else rho_o(n, k)


def is_full_cycle(n: int, k: int) -> bool:
    _check_nk(n, k)
    return gcd(n - k, n - 1) == 1


def expected_period(m: int, label: FractionLabel) -> int:
    return label.n + 1 if m % 2 == 1 else label.n


# closed-form digit polynomial

def digit_coefficients(m: int, label: FractionLabel) -> list[int]:
    """c_1..c_b: m when the line y = a t / b meets an integer over [i-1, i], else m - 2."""
    a, b = label.a, label.b
    out = []
    for i in range(1, b + 1):
        lo, hi = (i - 1) * a, i * a
        # integer j with lo <= j b <= hi
        hits = (hi // b) * b >= lo
        out.append(m if hits else m - 2)
    return out


def digit_poly_from_fraction(m: int, label: FractionLabel) -> Poly:
    """t^{b+1} + 1 - sum_i c_i t^{b+1-i}."""
    if m < 2:
        raise ValueError("modality must be at least 2")
    b = label.b
    coeffs = [0] * (b + 2)
    coeffs[0] = 1
    coeffs[b + 1] = 1
    for i, c in enumerate(digit_coefficients(m, label), start=1):
        coeffs[b + 1 - i] -= c
    return Poly(coeffs)


@dataclass(frozen=True, eq=False)
class BuiltMap:
    m: int
    label: FractionLabel
    f: ZigZagMap
    orbit: PostcriticalData
    digit_poly: Poly
    closed_form: Poly


def _check_taxonomy(f: ZigZagMap, orbit: PostcriticalData) -> None:
    tags = orbit.taxonomy
    cs = [lab for lab, t in tags.items() if t == "C"]
    rs = [lab for lab, t in tags.items() if t == "R"]
    if len(cs) != 1 or len(rs) != 1:
        raise BuildError("taxonomy", f"expected one C and one R point, got tags {tags}")
    if f.evaluate(orbit.point(rs[0])) != f.critical_points[0]:
        raise BuildError("taxonomy", "the R point does not map to c_1")
    bad = {lab: t for lab, t in tags.items() if t not in ("E", "C", "R", "P_{m-2}", "P_m")}
    if bad:
        raise BuildError("taxonomy", f"orbit points outside the allowed types: {bad}")


def build_zigzag(m: int, label: FractionLabel, max_steps: int | None = None) -> BuiltMap:
    """Construct the standard map labelled a/b and cross-check it against the closed form."""
    if m < 2:
        raise ValueError("modality must be at least 2")
    closed = digit_poly_from_fraction(m, label)
    lam = perron_root(closed)
    ctx = FieldContext.from_polynomial(closed, root=lam)
    try:
        f = make_zigzag(m, (-1) ** m, lam, ctx)
    except ZigZagError as exc:
        raise BuildError("construction", str(exc)) from exc
    orbit = orbit_of_one(f, max_steps)
    if not isinstance(orbit, PostcriticalData):
        raise BuildError("periodicity", orbit.reason)
    want = expected_period(m, label)
    if orbit.period != want:
        raise BuildError("period", f"expected {want}, got {orbit.period}")
    rho = rho_family(m, label.n, label.k)
    if orbit.rho != rho:
        raise BuildError("permutation", f"expected {rho.images}, got {orbit.rho.images}")
    _check_taxonomy(f, orbit)
    d = digit_polynomial(f, orbit)
    if d != closed:
        raise BuildError("digit polynomial", f"orbit gives {d}, closed form gives {closed}")
    return BuiltMap(m, label, f, orbit, d, closed)


def recover_k(m: int, rho: Permutation) -> int:
    inv = rho.inverse()
    if m == 2:
        return inv(len(rho)) + 1
    return inv(1)


def phi(f: ZigZagMap, orbit: PostcriticalData | None = None) -> FractionLabel:
    """The fraction (n-k)/(n-1) of a standard map whose permutation is rho_m(n, k)."""
    if orbit is None:
        orbit = orbit_of_one(f)
        if not isinstance(orbit, PostcriticalData):
            raise ZigZagError(f"not in PA({f.m}): {orbit.reason}")
    if not f.standard or f.m < 2:
        raise ZigZagError(f"not in PA({f.m}): map is not standard")
    n = orbit.n
    expected_start = 0 if f.m % 2 == 1 else 1
    if n < 3 or orbit.start != expected_start:
        raise ZigZagError(f"not in PA({f.m}): orbit {orbit.rho.images} has the wrong shape")
    k = recover_k(f.m, orbit.rho)
    if not 2 <= k <= n - 1 or orbit.rho != rho_family(f.m, n, k):
        raise ZigZagError(f"not in PA({f.m}): permutation {orbit.rho.images} is not in the family")
    return FractionLabel.from_nk(n, k)


@dataclass(frozen=True, eq=False)
class QuadResult:
    m: int
    f: ZigZagMap
    orbit: PostcriticalData
    minimal_polynomial: Poly
    digit_poly: Poly


def quad_nonstandard(m: int) -> QuadResult:
    """The non-standard map with lambda the larger root of t^2 - (m+1)t + 1."""
    if m < 2:
        raise ValueError("modality must be at least 2")
    mp = Poly([1, -(m + 1), 1])
    lam = perron_root(mp)
    ctx = FieldContext(mp, lam, certified=True)
    f = make_zigzag(m, -((-1) ** m), lam, ctx)
    orbit = orbit_of_one(f)
    if not isinstance(orbit, PostcriticalData):
        raise BuildError("periodicity", orbit.reason)
    seq = [orbit.point(lab) for lab in orbit.itinerary]
    expected = [ctx.one, f.inv] if f.positive else [ctx.one, f.inv, ctx.zero]
    if len(seq) != len(expected) or any(x != y for x, y in zip(seq, expected)):
        raise BuildError("orbit", f"orbit {[float(x) for x in seq]} differs from the expected one")
    d = digit_polynomial(f, orbit)
    if not mp.divides(d):
        raise BuildError("digit polynomial", f"{mp} does not divide {d}")
    if ctx.modulus != mp:
        raise BuildError("minimal polynomial", f"context modulus {ctx.modulus} differs from {mp}")
    return QuadResult(m, f, orbit, mp, d)
