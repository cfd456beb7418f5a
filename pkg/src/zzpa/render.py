"""Deterministic SVG figures of zig-zag graphs and limit sets.

Only rect, polyline, circle and text elements are emitted, with coordinates
printed at a fixed precision so identical inputs give identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from xml.sax.saxutils import escape

from .galois import LimitSet
from .zigzag import PostcriticalData, ZigZagMap

DEFAULT_PALETTE = {
    "background": "#ffffff",
    "frame": "#000000",
    "graph": "#1f3b73",
    "critical": "#888888",
    "orbit": "#d62728",
    "rect_fill": "#c6dbef",
    "rect_stroke": "#2c5f8a",
    "boundary": "#d62728",
    "lift": "#000000",
    "text": "#222222",
    "E": "#000000",
    "C": "#2ca02c",
    "R": "#9467bd",
    "P_{m-2}": "#ff7f0e",
    "P_m": "#8c564b",
    "-": "#7f7f7f",
}


@dataclass(frozen=True)
class FigureSpec:
    width: int = 480
    height: int = 480
    margin: int = 40
    precision: int = 8
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    dot_radius: float = 4.0
    stroke_width: float = 1.5

    def with_style(self, **overrides) -> "FigureSpec":
        """Copy with palette entries overridden; unknown keys are rejected."""
        unknown = set(overrides) - set(self.palette)
        if unknown:
            raise KeyError(f"unknown style keys: {sorted(unknown)}")
        return replace(self, palette={**self.palette, **overrides})


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class Viewport:
    """Affine map from math coordinates to pixels (y axis pointing up)."""
    spec: FigureSpec
    x0: float
    x1: float
    y0: float
    y1: float

    def px(self, x: float) -> float:
        s = self.spec
        return s.margin + (x - self.x0) / (self.x1 - self.x0) * (s.width - 2 * s.margin)

    def py(self, y: float) -> float:
        s = self.spec
        return s.height - s.margin - (y - self.y0) / (self.y1 - self.y0) * (s.height - 2 * s.margin)

    def inv_x(self, px: float) -> float:
        s = self.spec
        return self.x0 + (px - s.margin) / (s.width - 2 * s.margin) * (self.x1 - self.x0)

    def inv_y(self, py: float) -> float:
        s = self.spec
        return self.y0 + (s.height - s.margin - py) / (s.height - 2 * s.margin) * (self.y1 - self.y0)


class _Svg:
    def __init__(self, spec: FigureSpec):
        self.spec = spec
        self.lines: list[str] = []

    def num(self, v: float) -> str:
        s = f"{v:.{self.spec.precision}f}"
        return "0." + "0" * self.spec.precision if s.startswith("-") and float(s) == 0 else s

    def rect(self, x, y, w, h, fill, stroke, extra=""):
        self.lines.append(
            f'<rect x="{self.num(x)}" y="{self.num(y)}" width="{self.num(w)}" '
            f'height="{self.num(h)}" fill="{fill}" stroke="{stroke}"{extra}/>')

    def polyline(self, pts, stroke, width, extra=""):
        coords = " ".join(f"{self.num(x)},{self.num(y)}" for x, y in pts)
        self.lines.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" '
            f'stroke-width="{self.num(width)}"{extra}/>')

    def circle(self, x, y, r, fill, stroke, extra=""):
        self.lines.append(
            f'<circle cx="{self.num(x)}" cy="{self.num(y)}" r="{self.num(r)}" '
            f'fill="{fill}" stroke="{stroke}"{extra}/>')

    def text(self, x, y, body, fill, size=12):
        self.lines.append(
            f'<text x="{self.num(x)}" y="{self.num(y)}" font-family="sans-serif" '
            f'font-size="{size}" fill="{fill}">{escape(body)}</text>')

    def render(self) -> str:
        s = self.spec
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s.width}" '
                f'height="{s.height}" viewBox="0 0 {s.width} {s.height}">')
        return "\n".join([head, *self.lines, "</svg>"]) + "\n"


def render_zigzag_svg(f: ZigZagMap, orbit: PostcriticalData, spec: FigureSpec | None = None) -> str:
    """Graph of f on the unit square with dashed critical lines and the orbit of 1."""
    spec = spec or FigureSpec()
    pal = spec.palette
    vp = Viewport(spec, 0.0, 1.0, 0.0, 1.0)
    svg = _Svg(spec)
    svg.rect(0, 0, spec.width, spec.height, pal["background"], "none")
    svg.rect(vp.px(0), vp.py(1), vp.px(1) - vp.px(0), vp.py(0) - vp.py(1), "none", pal["frame"])
    for c in f.critical_points:
        x = vp.px(float(c))
        svg.polyline([(x, vp.py(0)), (x, vp.py(1))], pal["critical"], 1.0,
                     ' stroke-dasharray="4,4"')
    bounds = [f.ctx.zero, *f.critical_points, f.ctx.one]
    for j in range(f.m + 1):
        a, b = bounds[j], bounds[j + 1]
        pts = [(vp.px(float(a)), vp.py(float(f.apply_branch(j, a)))),
               (vp.px(float(b)), vp.py(float(f.apply_branch(j, b))))]
        svg.polyline(pts, pal["graph"], spec.stroke_width)
    for lab in orbit.rho.labels:
        x = orbit.point(lab)
        tag = orbit.taxonomy.get(lab, "-")
        cx, cy = vp.px(float(x)), vp.py(0)
        svg.circle(cx, cy, spec.dot_radius, pal["orbit"], pal.get(tag, pal["-"]))
        svg.text(cx - 4, cy + 16, tag, pal["text"], 10)
    title = f"{'positive' if f.positive else 'negative'} zig-zag, m = {f.m}, lambda = {f.lam_el.decimal(6)}"
    svg.text(spec.margin, spec.margin / 2, title, pal["text"])
    return svg.render()


def limit_set_viewport(L: LimitSet, spec: FigureSpec) -> Viewport:
    ys = [float(r.y_lo) for r in L.rects] + [float(r.y_hi) for r in L.rects]
    return Viewport(spec, 0.0, 1.0, min(ys), max(ys))


def render_limit_set_svg(L: LimitSet, spec: FigureSpec | None = None) -> str:
    """Rectangles of a rectangular limit set, its vertical boundary and periodic lifts."""
    if not isinstance(L, LimitSet) or not L.rectangular:
        raise RenderError("limit set is not rectangular")
    spec = spec or FigureSpec()
    pal = spec.palette
    vp = limit_set_viewport(L, spec)
    svg = _Svg(spec)
    svg.rect(0, 0, spec.width, spec.height, pal["background"], "none")
    for r in L.rects:
        x0, x1 = vp.px(float(r.x_lo)), vp.px(float(r.x_hi))
        top, bottom = vp.py(float(r.y_hi)), vp.py(float(r.y_lo))
        svg.rect(x0, top, x1 - x0, bottom - top, pal["rect_fill"], pal["rect_stroke"])
    for comp in L.components:
        x = vp.px(float(comp.x))
        svg.polyline([(x, vp.py(float(comp.y_lo))), (x, vp.py(float(comp.y_hi)))],
                     pal["boundary"], 2 * spec.stroke_width)
    for x, y in L.lifts:
        svg.circle(vp.px(float(x)), vp.py(float(y)), spec.dot_radius, pal["lift"], pal["lift"])
    svg.text(spec.margin, spec.margin / 2,
             f"limit set: {len(L.rects)} rectangles, {len(L.lifts)} postcritical lifts", pal["text"])
    return svg.render()
