"""Euclidean charts of the boundary and SVG output.

This is the only module that uses floating point.  A boundary point A
(isotropic, ``A.E != 0``) is scaled so ``A.E = -1`` and then projected onto
an orthonormal basis of ``span{E, F}``-perp, which is spacelike; differences
of such points have Lorentz norm equal to the squared Euclidean distance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import domain
from . import lorentz as lz
from .lorentz import dot
from .packing import SphereRecord


class EmptyFigure(ValueError):
    pass


@dataclass(frozen=True)
class EuclideanChart:
    E: tuple[int, ...]
    F: tuple[int, ...]
    basis: np.ndarray  # rows: orthonormal spacelike vectors orthogonal to E and F

    @property
    def rho(self) -> int:
        return len(self.E)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _pair(self, x: np.ndarray) -> np.ndarray:
        return 2 * (self.basis @ x) - self.basis.sum(axis=1) * x.sum()

    def __call__(self, A: Sequence) -> np.ndarray:
        """Chart coordinates of the boundary point A."""
        ae = dot(A, self.E)
        if ae == 0:
            raise lz.LatticeError("the point at infinity has no chart coordinates")
        return self._pair(np.array([float(x) for x in A]) / -float(ae))

    def hyperplane(self, n: Sequence) -> tuple[np.ndarray, float]:
        """``(g, c)`` with the plane ``H_n`` (through E) equal to ``{x : g.x + c = 0}``."""
        # X = w + a E + b F with X.E = -1 forces b = -1 / (F.E)
        g = self._pair(np.array(n, dtype=float))
        b = -1.0 / dot(self.F, self.E)
        return g, b * dot(n, self.F)


def _gram_schmidt(vectors: list[np.ndarray]) -> np.ndarray:
    def form(u, v):
        return 2 * float(u @ v) - float(u.sum()) * float(v.sum())

    out: list[np.ndarray] = []
    for v in vectors:
        w = v.astype(float).copy()
        for b in out:
            w = w - form(b, w) * b
        nrm = form(w, w)
        if nrm <= 1e-12:
            continue
        out.append(w / math.sqrt(nrm))
    return np.array(out)


def default_origin(rho: int) -> tuple[int, ...]:
    """Tangency point of ``e_1`` and ``e_rho``."""
    return lz.add(lz.basis(1, rho), lz.basis(rho, rho))


def make_chart(rho: int, E: Sequence[int] | None = None, F: Sequence[int] | None = None, first: Sequence[int] | None = None) -> EuclideanChart:
    """Deterministic chart; ``first`` (a vector orthogonal to E) fixes the first axis."""
    lz.check_rho(rho)
    E = tuple(E) if E is not None else domain.perspective(rho)
    if dot(E, E) != 0 or not any(E):
        raise lz.NotIsotropic(f"{E} is not isotropic")
    F = tuple(F) if F is not None else default_origin(rho)
    if dot(E, F) == 0:
        F = next(
            lz.add(lz.basis(i, rho), lz.basis(j, rho))
            for i in range(1, rho + 1)
            for j in range(i + 1, rho + 1)
            if dot(E, lz.add(lz.basis(i, rho), lz.basis(j, rho))) != 0
        )
    J = lz.gram_matrix(rho)
    rows = [[sum(J[i][k] * v[k] for k in range(rho)) for i in range(rho)] for v in (E, F)]
    null = [np.array([float(x) for x in v]) for v in lz.nullspace(rows)]
    seed = []
    if first is not None:
        # component of `first` orthogonal to E and F
        fe, ff, ef = dot(first, E), dot(first, F), dot(E, F)
        seed.append(np.array(lz.sub(first, lz.add(lz.scale(Fraction(ff, ef), E), lz.scale(Fraction(fe, ef), F))), dtype=float))
    basis = _gram_schmidt(seed + null)
    return EuclideanChart(E, F, basis[: rho - 2])


# -- data ---------------------------------------------------------------------


@dataclass(frozen=True)
class CircleDatum:
    """A circle (sphere) or, at curvature 0, a line (plane) ``normal . x = offset``."""

    center: tuple[float, ...]
    radius: float
    curvature_sign: int
    normal: tuple[float, ...] | None = None
    offset: float | None = None
    curvature: float = 0.0
    vector: tuple[int, ...] | None = None

    @property
    def is_line(self) -> bool:
        return self.curvature_sign == 0

    def sort_key(self):
        return (self.curvature, self.center if not self.is_line else (self.offset,), self.vector or ())


def sphere_to_datum(m: SphereRecord | Sequence[int], chart: EuclideanChart) -> CircleDatum:
    vec = m.vector if isinstance(m, SphereRecord) else tuple(m)
    k = -dot(vec, chart.E)
    nn = dot(vec, vec)
    if nn <= 0:
        raise lz.LatticeError("sphere vectors must be spacelike")
    scale = math.sqrt(nn)
    if k == 0:
        g, c = chart.hyperplane(vec)
        gn = float(np.linalg.norm(g))
        return CircleDatum((), math.inf, 0, tuple(g / gn), -c / gn, 0.0, vec)
    C = chart(lz.center(vec, chart.E))
    kk = k / scale
    return CircleDatum(tuple(C.tolist()), 1.0 / abs(kk), 1 if kk > 0 else -1, None, None, kk, vec)


def slice_datum(d: CircleDatum, g: np.ndarray, c: float) -> CircleDatum | None:
    """Cross-section of a sphere datum with the plane ``g.x + c = 0``, in the plane's coordinates.

    Plane coordinates drop the first chart axis, which must be along g.
    """
    gn = float(np.linalg.norm(g))
    dist = (float(np.dot(g, d.center)) + c) / gn
    r2 = d.radius**2 - dist**2
    if r2 <= 0:
        return None
    return CircleDatum(tuple(d.center[1:]), math.sqrt(r2), d.curvature_sign, curvature=1 / math.sqrt(r2), vector=d.vector)


def tangency_residual(a: CircleDatum, b: CircleDatum) -> float:
    """Zero for tangent data: ``min(|d - r1 - r2|, |d - |r1 - r2||)`` or its line analogue."""
    if a.is_line and b.is_line:
        # parallel lines meet at infinity; residual measures non-parallelism
        return abs(abs(float(np.dot(a.normal, b.normal))) - 1.0)
    if a.is_line or b.is_line:
        line, circ = (a, b) if a.is_line else (b, a)
        dist = abs(float(np.dot(line.normal, circ.center)) - line.offset)
        return abs(dist - circ.radius)
    d = math.dist(a.center, b.center)
    return min(abs(d - a.radius - b.radius), abs(d - abs(a.radius - b.radius)))


# -- SVG -------------------------------------------------------------------------


def _extent(data: Sequence[CircleDatum]) -> tuple[float, float, float, float]:
    circles = [d for d in data if not d.is_line]
    if circles:
        xs = [d.center[0] - d.radius for d in circles] + [d.center[0] + d.radius for d in circles]
        ys = [d.center[1] - d.radius for d in circles] + [d.center[1] + d.radius for d in circles]
    else:
        xs, ys = [-1.0, 1.0], [-1.0, 1.0]
    for d in data:
        if d.is_line:
            # the foot of the perpendicular from the origin keeps lines on canvas
            foot = [d.normal[0] * d.offset, d.normal[1] * d.offset]
            xs.append(foot[0])
            ys.append(foot[1])
    return min(xs), min(ys), max(xs), max(ys)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def emit_svg(data: Iterable[CircleDatum], path: str | Path | None = None, title: str = "") -> str:
    """Write an SVG 1.1 document; returns the text.  Elements are ordered by curvature then centre."""
    data = sorted(data, key=CircleDatum.sort_key)
    if not data:
        raise EmptyFigure("nothing to draw")
    x0, y0, x1, y1 = _extent(data)
    w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
    mx, my = 0.05 * w, 0.05 * h
    x0, y0, w, h = x0 - mx, y0 - my, w + 2 * mx, h + 2 * my
    stroke = 0.005 * max(w, h)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">',
    ]
    if title:
        out.append(f"  <title>{title}</title>")
    out.append(f'  <g fill="none" stroke="black" stroke-width="{_fmt(stroke)}">')
    for d in data:
        if d.is_line:
            nx, ny = d.normal[0], d.normal[1]
            px, py = nx * d.offset, ny * d.offset
            L = 2 * (w + h)
            out.append(
                f'    <line x1="{_fmt(px - ny * L)}" y1="{_fmt(py + nx * L)}" '
                f'x2="{_fmt(px + ny * L)}" y2="{_fmt(py - nx * L)}"/>'
            )
        else:
            out.append(f'    <circle cx="{_fmt(d.center[0])}" cy="{_fmt(d.center[1])}" r="{_fmt(d.radius)}"/>')
    out.append("  </g>")
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def strip_figure(records: Sequence[SphereRecord], chart: EuclideanChart | None = None) -> list[CircleDatum]:
    """Planar data for a rho = 4 enumeration."""
    if not records:
        raise EmptyFigure("no records")
    rho = records[0].rho
    if rho != 4:
        raise ValueError("the strip figure is planar; use slice_figure for rho = 5")
    if chart is None:
        # first axis along the strip normal, then swap so the strip lines run horizontally
        c = make_chart(4, first=lz.basis(4, 4))
        chart = EuclideanChart(c.E, c.F, c.basis[::-1].copy())
    return [sphere_to_datum(r, chart) for r in records]


def slice_figure(records: Sequence[SphereRecord], n: Sequence[int] | None = None) -> list[CircleDatum]:
    """Cross-section of a rho = 5 enumeration on the plane ``H_n`` (default ``v_45``).

    A sphere m meets ``H_n`` transversally iff ``(m.n)^2 < (m.m)(n.n)``; that
    test is exact and runs before any projection.
    """
    if not records:
        raise EmptyFigure("no records")
    rho = records[0].rho
    if rho != 5:
        raise ValueError("slice_figure is for rho = 5")
    n = tuple(n) if n is not None else lz.transposition(4, 5, 5)
    E = domain.perspective(5)
    if dot(n, E) != 0:
        raise ValueError("the slicing plane must pass through the point at infinity")
    chart = make_chart(5, E, first=n)
    g, c = chart.hyperplane(n)
    out = []
    for r in records:
        m = r.vector
        if dot(m, n) ** 2 >= dot(m, m) * dot(n, n) or dot(m, E) == 0:
            continue
        s = slice_datum(sphere_to_datum(r, chart), g, c)
        if s is not None:
            out.append(s)
    if not out:
        raise EmptyFigure("no sphere meets the slicing plane")
    return out
