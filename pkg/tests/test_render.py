import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from zzpa.classify import FractionLabel, build_zigzag
from zzpa.galois import NotRectangular, limit_set_exact
from zzpa.render import (FigureSpec, RenderError, limit_set_viewport, render_limit_set_svg,
                         render_zigzag_svg)

NS = "{http://www.w3.org/2000/svg}"


def _parse(svg):
    return ET.fromstring(svg)


@pytest.fixture(scope="module")
def f1():
    built = build_zigzag(2, FractionLabel(1, 2))
    return built, limit_set_exact(built.f, built.orbit)


@pytest.fixture(scope="module")
def f2():
    built = build_zigzag(2, FractionLabel(1, 4))
    return built, limit_set_exact(built.f, built.orbit)


def test_only_allowed_elements(f1):
    built, L = f1
    for svg in (render_zigzag_svg(built.f, built.orbit), render_limit_set_svg(L)):
        tags = {el.tag.replace(NS, "") for el in _parse(svg).iter()}
        assert tags <= {"svg", "rect", "polyline", "circle", "text"}


def test_markov1_graph(markov1):
    f, orbit = markov1
    root = _parse(render_zigzag_svg(f, orbit))
    lines = root.findall(f"{NS}polyline")
    graph = [p for p in lines if "stroke-dasharray" not in p.attrib]
    dashed = [p for p in lines if "stroke-dasharray" in p.attrib]
    assert len(graph) == 3 and len(dashed) == 2
    dots = root.findall(f"{NS}circle")
    assert len(dots) == 3
    assert {d.attrib["fill"] for d in dots} == {FigureSpec().palette["orbit"]}


def test_tent_graph(tent):
    f, orbit = tent
    root = _parse(render_zigzag_svg(f, orbit))
    graph = [p for p in root.findall(f"{NS}polyline") if "stroke-dasharray" not in p.attrib]
    assert len(graph) == 2


def test_deterministic(f1, markov1):
    built, L = f1
    assert render_limit_set_svg(L) == render_limit_set_svg(L)
    f, orbit = markov1
    assert render_zigzag_svg(f, orbit, FigureSpec()) == render_zigzag_svg(f, orbit, FigureSpec())


def test_empty_style_override_is_default(markov1):
    f, orbit = markov1
    assert render_zigzag_svg(f, orbit, FigureSpec().with_style()) == render_zigzag_svg(f, orbit)
    with pytest.raises(KeyError):
        FigureSpec().with_style(nonsense="#000")


def test_style_override_applies(markov1):
    f, orbit = markov1
    svg = render_zigzag_svg(f, orbit, FigureSpec().with_style(orbit="#00ff00"))
    assert 'fill="#00ff00"' in svg


def test_staircase_of_four_rectangles(f1):
    _, L = f1
    rects = _parse(render_limit_set_svg(L)).findall(f"{NS}rect")
    assert len(rects) == 1 + 4   # background plus cells


def test_six_lifts_for_second_member(f2):
    _, L = f2
    assert len(_parse(render_limit_set_svg(L)).findall(f"{NS}circle")) == 6


@pytest.mark.parametrize("precision", [4, 6, 8])
def test_rectangle_coordinates_parse_back(f2, precision):
    _, L = f2
    spec = FigureSpec(precision=precision)
    vp = limit_set_viewport(L, spec)
    cells = _parse(render_limit_set_svg(L, spec)).findall(f"{NS}rect")[1:]
    tol = Fraction(1, 10 ** (precision - 1))
    for el, r in zip(cells, L.rects):
        x, y = float(el.attrib["x"]), float(el.attrib["y"])
        w, h = float(el.attrib["width"]), float(el.attrib["height"])
        got = [vp.inv_x(x), vp.inv_x(x + w), vp.inv_y(y + h), vp.inv_y(y)]
        for value, exact in zip(got, (r.x_lo, r.x_hi, r.y_lo, r.y_hi)):
            lo, hi = exact.enclosure(Fraction(1, 10 ** 15))
            assert abs(Fraction(value) - lo) < tol


def test_coordinates_have_fixed_precision(f1):
    _, L = f1
    svg = render_limit_set_svg(L, FigureSpec(precision=5))
    numbers = [el.attrib[k] for el in _parse(svg).findall(f"{NS}rect") for k in ("x", "y", "width", "height")]
    assert numbers and all(len(n.split(".")[1]) == 5 for n in numbers)


def test_non_rectangular_refused():
    fake = NotRectangular("gap between branch images", 0, ())
    with pytest.raises(RenderError):
        render_limit_set_svg(fake)
