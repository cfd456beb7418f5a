"""Galois lift of a zig-zag, its limit set, and the pseudo-Anosov criterion.

The lift acts on [0,1] x R by (x, y) -> (f_j(x), g_j(y)) where g_j has the
same constant as f_j and slope +/- lambda^-1.  Because the lift is affine on
each weak Markov cell, the fibres of the limit set are constant over cells.
Their convex hulls are the least fixed point of a discounted min/max system,
which we solve exactly by policy iteration (floats only propose the first
policy).  Rectangularity is then certified by checking that the branch images
of the hull rectangles tile every hull rectangle exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import FieldElement, Poly, UndecidedError, companion_polynomial
from .zigzag import (MarkovPartition, PostcriticalData, ZigZagError, ZigZagMap, cell_images,
                     digit_polynomial, find_index, markov_partition, perron_data,
                     require_periodic, transition_matrix)

MAX_POLICY_ROUNDS = 64


class OutOfScope(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GaloisLift:
    base: ZigZagMap

    def vertical(self, j: int) -> tuple[int, int]:
        """(slope sign, constant) of g_j(y) = constant + sign * y / lambda."""
        return self.base.branch(j)

    def apply_vertical(self, j: int, y: FieldElement) -> FieldElement:
        s, c = self.vertical(j)
        v = self.base.inv * y
        return (v if s > 0 else -v) + c

    def __call__(self, x: FieldElement, y: FieldElement) -> tuple[FieldElement, FieldElement]:
        j = self.base.branch_index(x)
        return self.base.apply_branch(j, x), self.apply_vertical(j, y)

    def vertical_float(self, j: int) -> tuple[float, float]:
        s, c = self.vertical(j)
        return float(c), s * float(self.base.inv)


def galois_lift(f: ZigZagMap) -> GaloisLift:
    return GaloisLift(f)


def periodic_lift(f: ZigZagMap, orbit: PostcriticalData) -> dict[int, tuple[FieldElement, FieldElement]]:
    """Lift of every orbit point to the periodic orbit of the Galois lift, keyed by label."""
    lift = galois_lift(f)
    a, b = f.ctx.one, f.ctx.zero        # composed map y -> b + a y
    branches = []
    for lab in orbit.itinerary:
        j = f.branch_index(orbit.point(lab))
        branches.append(j)
        s, c = lift.vertical(j)
        a, b = a * f.inv * s, b * f.inv * s + c
    y = b / (1 - a)
    out = {}
    for lab, j in zip(orbit.itinerary, branches):
        out[lab] = (orbit.point(lab), y)
        y = lift.apply_vertical(j, y)
    return out


def postcritical_lifts(f: ZigZagMap, orbit: PostcriticalData) -> list[tuple[FieldElement, FieldElement]]:
    """Lifts of all postcritical points (the orbit of 1, plus 0 when it is a fixed point)."""
    lifts = periodic_lift(f, orbit)
    pts = [lifts[lab] for lab in sorted(lifts)]
    if orbit.start == 1 and f.m >= 2:
        j = f.branch_index(f.ctx.zero)
        s, c = galois_lift(f).vertical(j)
        if f.apply_branch(j, f.ctx.zero) == 0:
            y0 = f.ctx(c) / (1 - f.inv * s)
            pts.insert(0, (f.ctx.zero, y0))
    return pts


# numeric phase

def _merge(intervals: list[tuple[float, float]], eps: float) -> list[tuple[float, float]]:
    intervals.sort()
    out = [list(intervals[0])]
    for lo, hi in intervals[1:]:
        if lo <= out[-1][1] + eps:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(a, b) for a, b in out]


def _directed(a: list[tuple[float, float]], b: list[tuple[float, float]]) -> float:
    """sup over points of a of the distance to b (unions of closed intervals)."""
    def dist(y):
        best = float("inf")
        for lo, hi in b:
            if lo <= y <= hi:
                return 0.0
            best = min(best, abs(y - lo), abs(y - hi))
        return best
    worst = 0.0
    for lo, hi in a:
        cands = [lo, hi]
        for (p, q), (r, _) in zip(b, b[1:]):
            mid = (q + r) / 2
            if lo <= mid <= hi:
                cands.append(mid)
        worst = max(worst, *(dist(y) for y in cands))
    return worst


def hausdorff(a: list[tuple[float, float]], b: list[tuple[float, float]]) -> float:
    return max(_directed(a, b), _directed(b, a))


@dataclass(frozen=True)
class NumericLimitSet:
    cuts: tuple[float, ...]
    fibers: tuple[tuple[tuple[float, float], ...], ...]
    iterations: int
    converged: bool
    verdict: str
    box: tuple[float, float]

    @property
    def hulls(self) -> list[tuple[float, float]]:
        return [(fib[0][0], fib[-1][1]) for fib in self.fibers]


@dataclass(frozen=True, eq=False)
class _CellData:
    partition: MarkovPartition
    images: list
    preds: list[list[int]]


def _cell_data(f: ZigZagMap, orbit: PostcriticalData) -> _CellData:
    part = markov_partition(f, orbit)
    images = cell_images(f, part.weak, part.weak)
    ncell = len(part.weak) - 1
    preds = [[] for _ in range(ncell)]
    for im in images:
        for i in range(im.image_lo, im.image_hi):
            preds[i].append(im.index)
    return _CellData(part, images, preds)


def limit_set_numeric(f: ZigZagMap, tol: float | Fraction = Fraction(1, 1 << 30),
                      max_iter: int = 400, fragment_cap: int = 64,
                      iterations: int | None = None,
                      orbit: PostcriticalData | None = None) -> NumericLimitSet:
    """Iterate the absorbing box under the lift, tracking per-cell fibre unions."""
    orbit = orbit or require_periodic(f)
    data = _cell_data(f, orbit)
    lift = galois_lift(f)
    maps = [lift.vertical_float(im.branch) for im in data.images]
    mu = float(f.inv)
    bound = max(abs(c) for c, _ in maps) / (1 - mu)
    box = (-bound, bound)
    fibers = [[box] for _ in data.preds]
    eps = 1e-13 * bound
    tol = float(tol)
    limit = max_iter if iterations is None else iterations
    converged, verdict, it = False, "inconclusive", 0
    for it in range(1, limit + 1):
        new = []
        for i, ks in enumerate(data.preds):
            pieces = []
            for k in ks:
                c, s = maps[k]
                pieces += [tuple(sorted((c + s * lo, c + s * hi))) for lo, hi in fibers[k]]
            new.append(_merge(pieces, eps))
        change = max(hausdorff(a, b) for a, b in zip(fibers, new))
        fibers = new
        if max(len(fb) for fb in fibers) > fragment_cap:
            verdict = "non-rectangular (fragmented)"
            break
        if change < tol:
            converged = True
            break
    else:
        it = limit
    if verdict == "inconclusive" and converged:
        single = all(len(fb) == 1 for fb in fibers)
        verdict = "rectangular" if single else "non-rectangular"
    cuts = tuple(float(x) for x in data.partition.weak)
    return NumericLimitSet(cuts, tuple(tuple(fb) for fb in fibers), it, converged, verdict, box)


# exact phase

@dataclass(frozen=True, eq=False)
class Rect:
    x_lo: FieldElement
    x_hi: FieldElement
    y_lo: FieldElement
    y_hi: FieldElement

    @property
    def width(self) -> FieldElement:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> FieldElement:
        return self.y_hi - self.y_lo

    @property
    def area(self) -> FieldElement:
        return self.width * self.height


@dataclass(frozen=True, eq=False)
class VerticalComponent:
    cut: int
    x: FieldElement
    y_lo: FieldElement
    y_hi: FieldElement

    @property
    def center(self) -> FieldElement:
        return (self.y_lo + self.y_hi) / 2


@dataclass(frozen=True, eq=False)
class LimitSet:
    f: ZigZagMap
    cuts: tuple[FieldElement, ...]
    rects: tuple[Rect, ...]
    alignment: tuple[str, ...]
    components: tuple[VerticalComponent, ...]
    lifts: tuple[tuple[FieldElement, FieldElement], ...]
    checks: dict[str, bool]
    notes: tuple[str, ...] = ()
    policy_rounds: int = 0
    rectangular: bool = True

    @property
    def verified(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True, eq=False)
class NotRectangular:
    reason: str
    cell: int | None
    hulls: tuple[Rect, ...]
    rectangular: bool = False


def _hull_candidates(f: ZigZagMap, data: _CellData) -> list[list[tuple[int, int]]]:
    """For each variable (lo_i, then -hi_i) the options (constant, variable index)."""
    lift = galois_lift(f)
    n = len(data.preds)
    options: list[list[tuple[int, int]]] = [[] for _ in range(2 * n)]
    for i, ks in enumerate(data.preds):
        for k in ks:
            s, c = lift.vertical(data.images[k].branch)
            if s > 0:
                options[i].append((c, k))
                options[n + i].append((-c, n + k))
            else:
                options[i].append((c, n + k))
                options[n + i].append((-c, k))
    return options


def _float_hulls(f: ZigZagMap, options, rounds: int = 2000) -> list[float]:
    mu = float(f.inv)
    bound = max(abs(c) for opts in options for c, _ in opts) / (1 - mu)
    z = [-bound] * len(options)
    for _ in range(rounds):
        nz = [min(c + mu * z[w] for c, w in opts) for opts in options]
        if max(abs(a - b) for a, b in zip(z, nz)) < 1e-15 * bound:
            z = nz
            break
        z = nz
    return z


def _solve_policy(f: ZigZagMap, options, policy: list[int]) -> list[FieldElement]:
    mu = f.inv
    n = len(options)
    succ = [options[v][policy[v]][1] for v in range(n)]
    const = [options[v][policy[v]][0] for v in range(n)]
    value: list[FieldElement | None] = [None] * n
    state = [0] * n    # 0 unseen, 1 on current path, 2 done
    for root in range(n):
        if state[root]:
            continue
        path = []
        v = root
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if state[v] == 1:
            # v starts a cycle inside the current path
            cyc = path[path.index(v):]
            s, scale = f.ctx.zero, f.ctx.one
            for w in cyc:
                s = s + scale * const[w]
                scale = scale * mu
            value[v] = s / (1 - scale)
            for w in reversed(cyc[1:]):
                value[w] = const[w] + mu * value[succ[w]]
            tail = path[:path.index(v)]
        else:
            tail = path
        for w in reversed(tail):
            value[w] = const[w] + mu * value[succ[w]]
        for w in path:
            state[w] = 2
    return value


def _argmin_exact(cands: list[FieldElement], current: int) -> int:
    best = current
    for i, c in enumerate(cands):
        if i != best and c < cands[best]:
            best = i
    return best


def _exact_hulls(f: ZigZagMap, data: _CellData) -> tuple[list[FieldElement], list[FieldElement], int]:
    options = _hull_candidates(f, data)
    z0 = _float_hulls(f, options)
    mu = float(f.inv)
    policy = [min(range(len(opts)), key=lambda t: opts[t][0] + mu * z0[opts[t][1]])
              for opts in options]
    for rounds in range(1, MAX_POLICY_ROUNDS + 1):
        z = _solve_policy(f, options, policy)
        changed = False
        for v, opts in enumerate(options):
            cands = [c + f.inv * z[w] for c, w in opts]
            best = _argmin_exact(cands, policy[v])
            if best != policy[v]:
                policy[v] = best
                changed = True
        if not changed:
            n = len(data.preds)
            return z[:n], [-x for x in z[n:]], rounds
    raise UndecidedError("hull policy iteration did not stabilise")


def _tiling_failure(f: ZigZagMap, data: _CellData, lo, hi) -> tuple[str, int] | None:
    lift = galois_lift(f)
    for i, ks in enumerate(data.preds):
        pieces = []
        for k in ks:
            a = lift.apply_vertical(data.images[k].branch, lo[k])
            b = lift.apply_vertical(data.images[k].branch, hi[k])
            pieces.append((a, b) if a < b else (b, a))
        pieces.sort(key=lambda p: float(p[0]))
        if not (pieces[0][0] == lo[i] and max((p[1] for p in pieces), key=float) == hi[i]):
            return "hull endpoints not attained", i
        for (a0, b0), (a1, b1) in zip(pieces, pieces[1:]):
            gap = a1 - b0
            sg = gap.sign()
            if sg > 0:
                return "gap between branch images", i
            if sg < 0:
                return "branch images overlap", i
    return None


def _alignment(lo, hi) -> list[str]:
    tags = []
    for i in range(len(lo) - 1):
        low, up = lo[i] == lo[i + 1], hi[i] == hi[i + 1]
        tags.append("both" if low and up else "lower" if low else "upper" if up else "offset")
    return tags


def _components(cuts, lo, hi, alignment) -> list[VerticalComponent]:
    def seg(k, a, b):
        return VerticalComponent(k, cuts[k], *((a, b) if a < b else (b, a)))
    comps = [VerticalComponent(0, cuts[0], lo[0], hi[0])]
    for k, tag in enumerate(alignment, start=1):
        if tag == "lower":
            comps.append(seg(k, hi[k - 1], hi[k]))
        elif tag == "upper":
            comps.append(seg(k, lo[k - 1], lo[k]))
        elif tag == "offset":
            comps.append(seg(k, lo[k - 1], lo[k]))
            comps.append(seg(k, hi[k - 1], hi[k]))
    last = len(cuts) - 1
    comps.append(VerticalComponent(last, cuts[last], lo[-1], hi[-1]))
    return comps


def limit_set_exact(f: ZigZagMap, orbit: PostcriticalData | None = None) -> LimitSet | NotRectangular:
    """Exact limit set over the weak Markov cells, or the certified reason it is not rectangular."""
    orbit = orbit or require_periodic(f)
    data = _cell_data(f, orbit)
    cuts = data.partition.weak
    lo, hi, rounds = _exact_hulls(f, data)
    hulls = tuple(Rect(cuts[i], cuts[i + 1], lo[i], hi[i]) for i in range(len(lo)))
    for i in range(len(lo)):
        if not lo[i] < hi[i]:
            return NotRectangular("degenerate fibre", i, hulls)
    failure = _tiling_failure(f, data, lo, hi)
    if failure is not None:
        return NotRectangular(failure[0], failure[1], hulls)
    checks: dict[str, bool] = {"invariance": True, "tiling": True}
    notes: list[str] = []

    image_area = f.ctx.zero
    for im in data.images:
        width = cuts[im.image_hi] - cuts[im.image_lo]
        image_area = image_area + width * (hulls[im.index].height * f.inv)
    checks["area"] = image_area == sum((r.area for r in hulls), f.ctx.zero)
    checks["connected_interior"] = all(
        _overlap(lo[i], hi[i], lo[i + 1], hi[i + 1]) for i in range(len(lo) - 1))
    if not (checks["area"] and checks["connected_interior"]):
        bad = "area" if not checks["area"] else "connected_interior"
        return NotRectangular(f"{bad} check failed", None, hulls)

    alignment = _alignment(lo, hi)
    pc_idx = {find_index(cuts, x) for x in data.partition.postcritical}
    checks["alignment_dichotomy"] = "offset" not in alignment
    # cuts that are not postcritical carry no vertical boundary
    checks["weak_cuts_aligned"] = all(
        (tag == "both") == (k + 1 not in pc_idx) for k, tag in enumerate(alignment))

    heights = [r.height for r in hulls]
    mw = transition_matrix(f, "weak", data.partition)
    lam = f.lam_el
    checks["heights_eigenvector"] = all(
        sum((mw[i, k] * heights[k] for k in range(len(heights))), f.ctx.zero) == lam * heights[i]
        for i in range(len(heights)))
    try:
        pd = perron_data(mw, f.ctx)
        if pd.exact:
            ratio = heights[0] / pd.v[0]
            checks["heights_match_perron"] = all(h == ratio * v for h, v in zip(heights, pd.v))
            checks["widths_match_perron"] = all(r.width == u for r, u in zip(hulls, pd.u))
        else:
            notes.append("Perron data only numeric; height comparison skipped")
    except ZigZagError as exc:
        notes.append(f"Perron data unavailable: {exc}")

    components = _components(cuts, lo, hi, alignment)
    lifts = postcritical_lifts(f, orbit)
    center_ok = True
    for x, y in lifts:
        k = find_index(cuts, x)
        here = [c for c in components if c.cut == k]
        if len(here) != 1 or here[0].center != y:
            center_ok = False
    checks["center"] = center_ok
    if any(c.y_lo == c.y_hi for c in components):
        notes.append("isolated point in the vertical boundary")
    return LimitSet(f, tuple(cuts), hulls, tuple(alignment), tuple(components), tuple(lifts),
                    checks, tuple(notes), rounds)


def _overlap(a0, a1, b0, b1) -> bool:
    top = a1 if a1 < b1 else b1
    bottom = a0 if a0 > b0 else b0
    return bottom < top


def verify_rectangles(f: ZigZagMap, rects: Sequence[Rect]) -> bool:
    """Independent exact check that the given rectangles tile themselves under the lift."""
    orbit = require_periodic(f)
    data = _cell_data(f, orbit)
    cuts = data.partition.weak
    if len(rects) != len(cuts) - 1:
        return False
    for r, a, b in zip(rects, cuts, cuts[1:]):
        if r.x_lo != a or r.x_hi != b or not r.y_lo < r.y_hi:
            return False
    lo = [r.y_lo for r in rects]
    hi = [r.y_hi for r in rects]
    return _tiling_failure(f, data, lo, hi) is None


# pseudo-Anosov criterion

def evaluate_at_inverse(p: Poly, f: ZigZagMap) -> FieldElement:
    acc = f.ctx.zero
    for c in reversed(p.coeffs):
        acc = acc * f.inv + c
    return acc


@dataclass(frozen=True, eq=False)
class PAVerdict:
    yes: bool
    reasons: tuple[str, ...]
    digit_poly: Poly
    condition1: bool
    witness: FieldElement
    limit_set: LimitSet | NotRectangular | None
    notes: tuple[str, ...] = ()

    @property
    def reason(self) -> str | None:
        return "; ".join(self.reasons) if self.reasons else None


def is_pA_type(f: ZigZagMap, orbit: PostcriticalData | None = None) -> PAVerdict:
    """Both conditions: D_f(1/lambda) = 0 and a rectangular limit set."""
    if not f.lam_el > 2:
        raise OutOfScope("out of scope: unimodal regime (lambda <= 2)")
    orbit = orbit or require_periodic(f)
    d = digit_polynomial(f, orbit)
    witness = evaluate_at_inverse(d, f)
    cond1 = witness.is_zero()
    reasons, notes = [], []
    if not cond1:
        reasons.append("D_f(λ⁻¹) ≠ 0")
    try:
        ls = limit_set_exact(f, orbit)
    except UndecidedError:
        if cond1:
            raise
        ls = None
        notes.append("limit set undecided; verdict already fixed by the first condition")
    if isinstance(ls, NotRectangular):
        reasons.append(f"limit set not rectangular: {ls.reason}")
    return PAVerdict(not reasons, tuple(reasons), d, cond1, witness, ls, tuple(notes))


@dataclass(frozen=True)
class SingularityReport:
    one_prong_count: int
    infinity_prongs: int
    euler_sum: int
    surface_genus: int
    marked_points: int
    double_cover_genus: int | None
    trace_field_degree: int | None
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "one_prong_count": self.one_prong_count,
            "infinity_prongs": self.infinity_prongs,
            "euler_sum": self.euler_sum,
            "surface": {"genus": self.surface_genus, "marked_points": self.marked_points},
            "double_cover_genus": self.double_cover_genus,
            "trace_field_degree": self.trace_field_degree,
            "notes": list(self.notes),
        }


def singularity_report(f: ZigZagMap, orbit: PostcriticalData,
                       verdict: PAVerdict | None = None) -> SingularityReport:
    """Singularity census of the sphere homeomorphism of a pA-type map."""
    verdict = verdict or is_pA_type(f, orbit)
    if not verdict.yes:
        raise ZigZagError(f"map is not of pseudo-Anosov type: {verdict.reason}")
    npc = len(markov_partition(f, orbit).postcritical)
    infinity = npc - 2
    euler = npc * (2 - 1) + (2 - infinity)
    notes = []
    cover = None
    if npc % 2 == 0:
        cover = (npc - 2) // 2
    else:
        notes.append("odd number of one-pronged singularities: no branched double cover")
    try:
        trace = companion_polynomial(f.ctx.modulus).degree
    except ValueError:
        trace = None
        notes.append("minimal polynomial is not reciprocal; trace field degree omitted")
    return SingularityReport(npc, infinity, euler, 0, npc, cover, trace, tuple(notes))


__all__ = [
    "GaloisLift", "LimitSet", "NotRectangular", "NumericLimitSet", "OutOfScope", "PAVerdict",
    "Rect", "SingularityReport", "VerticalComponent", "evaluate_at_inverse", "galois_lift",
    "hausdorff", "is_pA_type", "limit_set_exact", "limit_set_numeric", "periodic_lift",
    "postcritical_lifts", "singularity_report", "verify_rectangles",
]
