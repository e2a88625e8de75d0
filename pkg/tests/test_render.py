import math
import random
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from apollo import domain, packing, render
from apollo import lorentz as lz
from apollo.lorentz import dot

SVG = "{http://www.w3.org/2000/svg}"


@pytest.mark.parametrize("rho", [4, 5, 7])
def test_chart_is_isometric(rho):
    # Lorentz distance between boundary points equals Euclidean distance in the chart
    chart = render.make_chart(rho)
    E = chart.E
    g = packing.build_group(rho)
    rng = random.Random(rho)
    pts = []
    while len(pts) < 12:
        m = g.apply_word(packing.random_word(g, 6, rng), lz.basis(1, rho))
        if dot(m, E) != 0:
            pts.append(lz.center(m, E))
    for A in pts:
        for B in pts:
            if lz.same_ray(A, B):
                continue
            d2 = float(lz.euclid_dist2(A, B, E))
            got = float(np.sum((chart(A) - chart(B)) ** 2))
            assert math.isclose(got, d2, rel_tol=1e-9, abs_tol=1e-9)


def test_chart_basis_orthonormal():
    chart = render.make_chart(6)
    b = chart.basis
    form = 2 * (b @ b.T) - np.outer(b.sum(axis=1), b.sum(axis=1))
    assert np.allclose(form, np.eye(4))
    assert chart.dim == 4 and chart.rho == 6


def test_chart_rejects_infinity_and_bad_perspective():
    chart = render.make_chart(4)
    with pytest.raises(lz.LatticeError):
        chart(chart.E)
    with pytest.raises(lz.NotIsotropic):
        render.make_chart(4, E=(1, 0, 0, 0))


def test_strip_lines_horizontal(enum):
    data = render.strip_figure(enum(4, 2).records)
    lines = [d for d in data if d.is_line]
    assert len(lines) == 2
    for d in lines:
        assert abs(d.normal[0]) < 1e-12 and abs(abs(d.normal[1]) - 1) < 1e-12
    assert math.isclose(abs(lines[0].offset - lines[1].offset), 1.0, rel_tol=1e-12)


def test_strip_tangencies(enum):
    recs = enum(4, 40).records
    data = render.strip_figure(recs)
    for i, a in enumerate(recs):
        for j in range(i + 1, len(recs)):
            if dot(a.vector, recs[j].vector) == -1:
                assert render.tangency_residual(data[i], data[j]) < 1e-9


def test_radius_is_inverse_curvature(enum):
    for d in render.strip_figure(enum(4, 18).records):
        if not d.is_line:
            assert math.isclose(d.radius * d.curvature, 1.0)


def test_slice_selection_is_exact(enum):
    recs = enum(5, 10).records
    n = lz.transposition(4, 5, 5)
    data = render.slice_figure(recs, n)
    crossing = [r for r in recs if dot(r.vector, n) ** 2 < dot(r.vector, r.vector) * dot(n, n) and dot(r.vector, domain.perspective(5))]
    assert len(data) == len(crossing)
    assert all(len(d.center) == 2 for d in data)


def test_slice_errors(enum):
    with pytest.raises(ValueError):
        render.slice_figure(enum(5, 10).records, n=lz.basis(1, 5))
    with pytest.raises(ValueError):
        render.slice_figure(enum(4, 2).records)
    with pytest.raises(ValueError):
        render.strip_figure(enum(5, 10).records)
    with pytest.raises(render.EmptyFigure):
        render.strip_figure([])


def test_emit_svg_structure(tmp_path, enum):
    data = render.strip_figure(enum(4, 18).records)
    path = tmp_path / "strip.svg"
    text = render.emit_svg(data, path, title="strip")
    assert path.read_text() == text
    root = ET.fromstring(text)
    assert root.tag == SVG + "svg" and root.get("version") == "1.1"
    circles = root.findall(f".//{SVG}circle")
    lines = root.findall(f".//{SVG}line")
    assert len(circles) + len(lines) == len(data)
    assert root.find(f"{SVG}title").text == "strip"


def test_emit_svg_is_order_independent(enum):
    data = render.strip_figure(enum(4, 18).records)
    assert render.emit_svg(data) == render.emit_svg(list(reversed(data)))


def test_emit_svg_empty():
    with pytest.raises(render.EmptyFigure):
        render.emit_svg([])
