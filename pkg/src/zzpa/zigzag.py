"""Zig-zag interval maps with exact Q(lambda) arithmetic.

A zig-zag of modality m and growth rate lambda in (m, m+1) has critical
points c_i = i/lambda and branches f_i(x) = const_i +/- lambda x on
I_i = [c_i, c_{i+1}) (the last interval closed on both sides).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property, cmp_to_key
from typing import Sequence

from .exact import AlgebraicReal, FieldContext, FieldElement, Poly, perron_root
from .permutation import Permutation

TAGS = ("E", "C", "R", "P_{m-2}", "P_m")


class ZigZagError(ValueError):
    """Invalid map data or a failed structural check."""


@dataclass(frozen=True, eq=False)
class ZigZagMap:
    m: int
    sign: int
    lam: AlgebraicReal
    ctx: FieldContext

    @cached_property
    def lam_el(self) -> FieldElement:
        return self.ctx.gen

    @cached_property
    def inv(self) -> FieldElement:
        return self.lam_el.inverse()

    @cached_property
    def critical_points(self) -> list[FieldElement]:
        return [self.inv * i for i in range(1, self.m + 1)]

    @property
    def standard(self) -> bool:
        return self.sign == (-1) ** self.m

    @property
    def positive(self) -> bool:
        return self.sign == 1

    def branch(self, i: int) -> tuple[int, int]:
        """(slope sign, constant) with f_i(x) = constant + slope * lambda * x."""
        if not 0 <= i <= self.m:
            raise IndexError(f"branch {i} out of range 0..{self.m}")
        rising = (i % 2 == 0) == self.positive
        return (1, -i) if rising else (-1, i + 1)

    def apply_branch(self, i: int, x: FieldElement) -> FieldElement:
        s, c = self.branch(i)
        y = self.lam_el * x
        return (y if s > 0 else -y) + c

    def branch_index(self, x: FieldElement) -> int:
        """The j with x in [c_j, c_{j+1}); the last interval includes 1."""
        if x < 0 or x > 1:
            raise ZigZagError(f"point {float(x):.6g} outside [0, 1]")
        y = self.lam_el * x
        j = min(max(int(float(y)), 0), self.m)
        while j > 0 and y < j:
            j -= 1
        while j < self.m and y >= j + 1:
            j += 1
        return j

    def __call__(self, x) -> FieldElement:
        return self.evaluate(self.ctx(x))

    def evaluate(self, x: FieldElement) -> FieldElement:
        return self.apply_branch(self.branch_index(x), x)

    def describe(self) -> str:
        kind = "positive" if self.positive else "negative"
        return f"{kind} zig-zag, m={self.m}, lambda~{float(self.lam):.12g}"


def make_zigzag(m: int, sign: int, lam: AlgebraicReal, ctx: FieldContext | None = None) -> ZigZagMap:
    """Build the zig-zag of modality m and the given sign; requires m < lambda < m+1."""
    if m < 1:
        raise ZigZagError("modality must be at least 1")
    if sign not in (1, -1):
        raise ZigZagError("sign must be +1 or -1")
    if ctx is None:
        ctx = FieldContext.from_polynomial(lam.defining, root=lam)
    g = ctx.gen
    if not (g > m and g < m + 1):
        raise ZigZagError("modality/growth mismatch")
    f = ZigZagMap(m, sign, AlgebraicReal(ctx.modulus, ctx.root.lo, ctx.root.hi), ctx)
    for i, c in enumerate(f.critical_points, start=1):
        left = f.apply_branch(i - 1, c)
        right = f.apply_branch(i, c)
        if left != right or not (left == 0 or left == 1):
            raise ZigZagError(f"branches disagree at critical point c_{i}")
    return f


def zigzag_from_polynomial(m: int, sign: int, p: Poly) -> ZigZagMap:
    """Zig-zag whose growth rate is the largest real root of p."""
    lam = perron_root(p)
    return make_zigzag(m, sign, lam, FieldContext.from_polynomial(p, root=lam))


# orbits

def sort_exact(points: Sequence[FieldElement]) -> list[FieldElement]:
    """Sort by float value, then certify adjacent order exactly (exact sort as fallback)."""
    pts = sorted(points, key=float)
    if all(a < b for a, b in zip(pts, pts[1:])):
        return pts
    return sorted(points, key=cmp_to_key(lambda a, b: a.compare(b)))


def find_index(points: Sequence[FieldElement], x: FieldElement) -> int | None:
    """Index of x among exact points, using floats only to order the candidates."""
    xf = float(x)
    order = sorted(range(len(points)), key=lambda i: abs(float(points[i]) - xf))
    for i in order:
        if abs(float(points[i]) - xf) > 1e-9 * (1 + abs(xf)):
            return None
        if points[i] == x:
            return i
    return None


@dataclass(frozen=True)
class NotPeriodic:
    steps: int
    reason: str


@dataclass(frozen=True, eq=False)
class PostcriticalData:
    points: tuple[FieldElement, ...]     # sorted, labelled start, start+1, ...
    start: int                           # 0 when 0 lies on the orbit, else 1
    itinerary: tuple[int, ...]           # labels of 1, f(1), f^2(1), ...
    rho: Permutation
    period: int
    taxonomy: dict[int, str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.start + len(self.points) - 1

    def point(self, label: int) -> FieldElement:
        return self.points[label - self.start]

    def label_of(self, x: FieldElement) -> int | None:
        i = find_index(self.points, x)
        return None if i is None else i + self.start

    def boundary_hit(self) -> int:
        """Smallest k >= 1 with f^k(1) in {0, 1}."""
        for k, lab in enumerate(self.itinerary[1:], start=1):
            if lab == self.n or (self.start == 0 and lab == 0):
                return k
        return self.period


def default_max_steps(f: ZigZagMap) -> int:
    return 10 * f.ctx.degree * f.m


def orbit_of_one(f: ZigZagMap, max_steps: int | None = None) -> PostcriticalData | NotPeriodic:
    if max_steps is None:
        max_steps = default_max_steps(f)
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    seq = [f.ctx.one]
    for step in range(1, max_steps + 1):
        x = f.evaluate(seq[-1])
        hit = find_index(seq, x)
        if hit is not None:
            if hit != 0:
                return NotPeriodic(step, "orbit of 1 is preperiodic")
            break
        seq.append(x)
    else:
        return NotPeriodic(max_steps, f"no return to 1 within {max_steps} steps")
    period = len(seq)
    pts = sort_exact(seq)
    start = 0 if pts[0] == 0 else 1
    labels = [find_index(pts, x) + start for x in seq]
    images = [0] * period
    for i, lab in enumerate(labels):
        images[lab - start] = labels[(i + 1) % period]
    rho = Permutation(tuple(images), start)
    data = PostcriticalData(tuple(pts), start, tuple(labels), rho, period)
    data.taxonomy.update({lab: tag_point(f, data.point(lab)) for lab in rho.labels})
    return data


def tag_point(f: ZigZagMap, x: FieldElement) -> str:
    """Orbit-point taxonomy: endpoint, first critical point, or interval interiors."""
    if x == 0 or x == 1:
        return "E"
    cps = f.critical_points
    if x == cps[0]:
        return "C"
    j = f.branch_index(x)
    if j >= 1 and x == cps[j - 1]:
        return "-"
    if j == f.m - 1:
        return "R"
    if j == f.m - 2:
        return "P_{m-2}"
    if j == f.m:
        return "P_m"
    return "-"


def require_periodic(f: ZigZagMap, max_steps: int | None = None) -> PostcriticalData:
    data = orbit_of_one(f, max_steps)
    if isinstance(data, NotPeriodic):
        raise ZigZagError(f"map is not postcritically periodic: {data.reason}")
    return data


def digit_polynomial(f: ZigZagMap, orbit: PostcriticalData | None = None) -> Poly:
    """Monic D_f from composing branches symbolically along the orbit of 1."""
    orbit = orbit or require_periodic(f)
    n = orbit.boundary_hit()
    p = Poly([1])
    t = Poly.t()
    for k in range(n):
        j = f.branch_index(orbit.point(orbit.itinerary[k]))
        s, c = f.branch(j)
        p = t * p.scale(s) + c
    end = orbit.point(orbit.itinerary[n % orbit.period])
    end_value = 0 if end == 0 else 1
    d = p - end_value
    if d.lc not in (1, -1):
        raise ZigZagError("composed polynomial is not monic up to sign")
    d = d.scale(d.lc)
    if not f.ctx(d).is_zero():
        raise ZigZagError("digit polynomial does not vanish at lambda")
    return d


# Markov partitions

@dataclass(frozen=True, eq=False)
class MarkovPartition:
    weak: tuple[FieldElement, ...]
    postcritical: tuple[FieldElement, ...]

    @property
    def extra_count(self) -> int:
        """#(WPC \\ PC)."""
        return len(self.weak) - len(self.postcritical)

    def cuts(self, flavor: str) -> tuple[FieldElement, ...]:
        if flavor in ("weak", "W"):
            return self.weak
        if flavor in ("postcritical", "P"):
            return self.postcritical
        raise ValueError(f"unknown flavor {flavor!r}")


def _merge_unique(points: Sequence[FieldElement]) -> list[FieldElement]:
    out: list[FieldElement] = []
    for x in points:
        if find_index(out, x) is None:
            out.append(x)
    return sort_exact(out)


def markov_partition(f: ZigZagMap, orbit: PostcriticalData | None = None) -> MarkovPartition:
    orbit = orbit or require_periodic(f)
    pc = _merge_unique([f.ctx.zero, f.ctx.one, *orbit.points])
    wpc = _merge_unique([*pc, *f.critical_points])
    return MarkovPartition(tuple(wpc), tuple(pc))


@dataclass(frozen=True)
class TransitionMatrix:
    entries: tuple[tuple[int, ...], ...]
    flavor: str = "weak"

    @property
    def dim(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def charpoly(self) -> Poly:
        return charpoly(self.entries)


@dataclass(frozen=True, eq=False)
class CellImage:
    """A weak cell [left, right] with branch j mapping onto cut indices lo..hi."""
    index: int
    branch: int
    image_lo: int
    image_hi: int


def cell_images(f: ZigZagMap, cuts: Sequence[FieldElement], targets: Sequence[FieldElement]) -> list[CellImage]:
    """Branch and image span (as indices into targets) of every cell between consecutive cuts."""
    out = []
    for k in range(len(cuts) - 1):
        j = f.branch_index(cuts[k])
        a = find_index(targets, f.apply_branch(j, cuts[k]))
        b = find_index(targets, f.apply_branch(j, cuts[k + 1]))
        if a is None or b is None:
            raise ZigZagError("partition is not Markov: image endpoint is not a cut point")
        out.append(CellImage(k, j, min(a, b), max(a, b)))
    return out


def transition_matrix(f: ZigZagMap, flavor: str = "weak",
                      partition: MarkovPartition | None = None) -> TransitionMatrix:
    """Entry (i, j) counts how many times f(P_j) covers P_i."""
    partition = partition or markov_partition(f)
    cuts = partition.cuts(flavor)
    weak = partition.weak
    images = cell_images(f, weak, cuts)
    d = len(cuts) - 1
    # which flavor cell each weak cell sits in
    owner = []
    for k in range(len(weak) - 1):
        i = find_index(cuts, weak[k])
        owner.append(i if i is not None else owner[-1])
    entries = [[0] * d for _ in range(d)]
    for im in images:
        for i in range(im.image_lo, im.image_hi):
            entries[i][owner[im.index]] += 1
    name = "weak" if flavor in ("weak", "W") else "postcritical"
    return TransitionMatrix(tuple(tuple(r) for r in entries), name)


def charpoly(a: Sequence[Sequence[int]]) -> Poly:
    """det(tI - A) by Faddeev-LeVerrier (exact integer arithmetic)."""
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        mk = [[sum(a[i][l] * mk[l][j] for l in range(n)) + (c_prev if i == j else 0)
               for j in range(n)] for i in range(n)]
        tr = sum(a[i][l] * mk[l][i] for i in range(n) for l in range(n))
        if tr % k:
            raise ArithmeticError("non-integral trace step")
        coeffs[n - k] = -tr // k
    return Poly(coeffs)


def primitivity_exponent(m: TransitionMatrix | Sequence[Sequence[int]]) -> int | None:
    """Least k <= (d-1)^2 + 1 with M^k > 0, or None."""
    a = m.entries if isinstance(m, TransitionMatrix) else m
    d = len(a)
    if any(x < 0 for row in a for x in row):
        raise ValueError("matrix must be nonnegative")
    pattern = [[x > 0 for x in row] for row in a]
    power = pattern
    for k in range(1, (d - 1) ** 2 + 2):
        if all(all(row) for row in power):
            return k
        power = [[any(power[i][l] and pattern[l][j] for l in range(d)) for j in range(d)]
                 for i in range(d)]
    return None


def is_primitive(m: TransitionMatrix | Sequence[Sequence[int]]) -> bool:
    return primitivity_exponent(m) is not None


def strongly_connected_components(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Components of the graph j -> i whenever a[i][j] > 0 (Tarjan, iterative)."""
    n = len(a)
    succ = [[i for i in range(n) if a[i][j] > 0] for j in range(n)]
    index, low, on, stack, comps = {}, {}, set(), [], []
    counter = 0
    for root in range(n):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on.add(v)
            recurse = False
            for k in range(pi, len(succ[v])):
                w = succ[v][k]
                if w not in index:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return sorted(comps)


@dataclass(frozen=True, eq=False)
class PerronData:
    lam: FieldElement | float
    u: tuple
    v: tuple
    exact: bool

    @property
    def lambda_approx(self) -> float:
        return float(self.lam)


def _nullspace_vector(rows: list[list[FieldElement]]) -> list[FieldElement] | None:
    """A basis vector of a one-dimensional kernel, or None if the kernel has other dimension."""
    a = [list(r) for r in rows]
    n_rows, n_cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and not a[i][c].is_zero():
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    if len(free) != 1:
        return None
    ctx = a[0][0].ctx
    vec = [ctx.zero] * n_cols
    vec[free[0]] = ctx.one
    for i, c in enumerate(pivots):
        vec[c] = -a[i][free[0]]
    return vec


def perron_data(m: TransitionMatrix | Sequence[Sequence[int]],
                ctx: FieldContext | None = None) -> PerronData:
    """Perron eigenvalue with left/right eigenvectors, sum(u) = 1 and u.v = 1."""
    a = [list(r) for r in (m.entries if isinstance(m, TransitionMatrix) else m)]
    d = len(a)
    comps = strongly_connected_components(a)
    if len(comps) > 1:
        import numpy as np
        recurrent = []
        for comp in comps:
            sub = np.array([[a[i][j] for j in comp] for i in comp], dtype=float)
            rho = max(abs(np.linalg.eigvals(sub))) if sub.any() else 0.0
            recurrent.append((rho, comp))
        rho, block = max(recurrent, key=lambda t: t[0])
        raise ZigZagError(f"reducible matrix; recurrent block (1-based): {[i + 1 for i in block]}")
    if primitivity_exponent(a) is None:
        warnings.warn("matrix is irreducible but not primitive", stacklevel=2)
    chi = charpoly(a)
    if ctx is None:
        ctx = FieldContext.from_polynomial(chi)
    lam = ctx.gen
    if not ctx(chi).is_zero():
        raise ZigZagError("lambda is not an eigenvalue of the matrix")
    shifted = [[ctx(a[i][j]) - (lam if i == j else 0) for j in range(d)] for i in range(d)]
    v = _nullspace_vector(shifted)
    u = _nullspace_vector([list(col) for col in zip(*shifted)])
    if u is None or v is None:
        return _perron_numeric(a)
    su = sum(u, ctx.zero)
    u = [x / su for x in u]
    uv = sum((x * y for x, y in zip(u, v)), ctx.zero)
    v = [y / uv for y in v]
    return PerronData(lam, tuple(u), tuple(v), True)


def _perron_numeric(a: Sequence[Sequence[int]]) -> PerronData:
    import numpy as np
    mat = np.array(a, dtype=float)
    vals, right = np.linalg.eig(mat)
    k = int(np.argmax(vals.real))
    valsl, left = np.linalg.eig(mat.T)
    kl = int(np.argmax(valsl.real))
    v = np.abs(right[:, k].real)
    u = np.abs(left[:, kl].real)
    u = u / u.sum()
    v = v / float(u @ v)
    return PerronData(float(vals[k].real), tuple(map(float, u)), tuple(map(float, v)), False)


def cell_lengths(cuts: Sequence[FieldElement]) -> list[FieldElement]:
    return [b - a for a, b in zip(cuts, cuts[1:])]


__all__ = [
    "CellImage", "MarkovPartition", "NotPeriodic", "PerronData", "PostcriticalData", "TAGS",
    "TransitionMatrix", "ZigZagError", "ZigZagMap", "cell_images", "cell_lengths", "charpoly",
    "digit_polynomial", "find_index", "is_primitive", "make_zigzag", "markov_partition",
    "orbit_of_one", "perron_data", "primitivity_exponent", "require_periodic", "sort_exact",
    "strongly_connected_components", "tag_point", "transition_matrix", "zigzag_from_polynomial",
]
