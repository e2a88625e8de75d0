"""Fundamental domains for rho = 4..10 and the exact checks that bound them.

For every rho the domain is a chimney over a prism in the boundary picture
with ``E = e_{rho-1} + e_rho`` at infinity, cut off below by one or more
domes.  This module builds the faces, solves for the prism vertices, and
runs the sign checklist that shows the domes cover the prism.

Half-space convention: ``H+_n = {x : n.x > 0}`` is the side belonging to the
sphere ``n``; a vertex V is *covered* by a dome d when ``d.V >= 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import lorentz as lz
from .lorentz import DegenerateSolve, LatticeError, dot
from .surd import Surd, sign

# Vertex tables known in closed form, used to cross-check the solver.
KNOWN_VERTICES: dict[int, tuple[list[tuple[int, ...]], list[tuple[int, ...]]]] = {
    5: (
        [(4, 0, 0, 1, 1), (8, 8, -4, 3, 3), (4, 4, 4, -1, -1)],
        [(1, 0, 0, 0, 1), (2, 2, -1, 0, 3), (1, 1, 1, -1, 2)],
    ),
    9: (
        [
            (4, 0, 0, 0, 0, 0, 0, 1, 1),
            (24, 24, -4, -4, -4, -4, -4, 15, 15),
            (20, 20, 20, -8, -8, -8, -8, 19, 19),
            (16, 16, 16, 16, -12, -12, -12, 19, 19),
            (12, 12, 12, 12, 12, -16, -16, 15, 15),
            (8, 8, 8, 8, 8, 8, -20, 7, 7),
            (4, 4, 4, 4, 4, 4, 4, -5, -5),
        ],
        [
            (1, 0, 0, 0, 0, 0, 0, 0, 1),
            (6, 6, -1, -1, -1, -1, -1, 2, 9),
            (5, 5, 5, -2, -2, -2, -2, 3, 10),
            (4, 4, 4, 4, -3, -3, -3, 3, 10),
            (3, 3, 3, 3, 3, -4, -4, 2, 9),
            (2, 2, 2, 2, 2, 2, -5, 0, 7),
            (1, 1, 1, 1, 1, 1, 1, -3, 4),
        ],
    ),
}

# Special vectors for the two cusped cases.
N1_9 = (1, 1, 1, 1, -6, 1, 1, 1, 1)
N2_9 = (3, 3, 3, 3, 3, -4, -4, 3, 3)
P2_9 = (1, 1, 1, 1, 2, -1, -2, 1, 2)
P1_9 = (1, 1, 1, 1, 0, -1, -1, 1, 1)
P1_9_PRINTED = (1, 1, 1, 0, -1, -1, 1, 1)  # as printed: one entry short

N_10 = (1, 1, 1, 1, 1, -1, -1, -1, 1, 1)
N1_10 = (1, 1, 1, 1, -3, -3, 1, 1, 1, 1)
N2_10 = (3, 3, 3, 3, 3, 3, -5, -5, 3, 3)
P1_10 = (1, 1, 1, 1, 0, 0, -1, -1, 1, 1)
P2_10 = (1, 1, 1, 1, 2, 2, -1, -3, 1, 3)
F_10 = (1, 1, 1, 1, 1, 1, -1, -2, 1, 1)

PASS, FAIL, DISCREPANCY = "pass", "fail", "discrepancy"


class NoCrossing(LatticeError):
    """The line does not meet the dome in real points."""


# -- data types --------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A bounding hyperplane ``H_n`` of the fundamental domain.

    ``inward`` is the sign s for which the domain lies in ``{s * n.x <= 0}``.
    """

    index: int
    name: str
    vector: tuple[int, ...]
    role: str  # transposition | u-face | base | dome | phi-wall
    kind: str  # reflection | phi-wall
    inward: int = 1

    @property
    def label(self) -> str:
        return f"F_{self.index}"

    @property
    def self_product(self) -> int:
        return dot(self.vector, self.vector)

    @property
    def oriented(self) -> tuple[int, ...]:
        return lz.scale(self.inward, self.vector)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "name": self.name,
            "role": self.role,
            "kind": self.kind,
            "vector": list(self.vector),
            "self_product": self.self_product,
        }


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: object
    verdict: str
    vectors: dict = field(default_factory=dict)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": _jsonable(self.value),
            "verdict": self.verdict,
            "vectors": {k: _jsonable(v) for k, v in self.vectors.items()},
            "note": self.note,
        }


@dataclass(frozen=True)
class EdgePoint:
    """Intersection of a boundary line AB with a face.

    ``coords`` are ints for lattice-rational points and :class:`Surd` values
    otherwise; ``t`` is the affine parameter along AB (0 at A, 1 at B).
    """

    coords: tuple
    t: object

    @property
    def rational(self) -> bool:
        return not any(isinstance(x, Surd) for x in self.coords)

    @property
    def on_segment(self) -> bool:
        return 0 <= self.t <= 1


@dataclass
class DomainCase:
    rho: int
    faces: list[Face]
    vertices_Q: list[tuple[int, ...]]
    vertices_Qprime: list[tuple[int, ...]]
    special_points: dict = field(default_factory=dict)
    checklist: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checklist)

    def face(self, index: int) -> Face:
        return self.faces[index - 1]

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checklist if c.verdict == FAIL]

    def discrepancies(self) -> list[CheckResult]:
        return [c for c in self.checklist if c.verdict == DISCREPANCY]

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "faces": [f.to_dict() for f in self.faces],
            "vertices": {
                "Q": [list(v) for v in self.vertices_Q],
                "Qprime": [list(v) for v in self.vertices_Qprime],
            },
            "special_points": {k: _jsonable(v) for k, v in self.special_points.items()},
            "checks": [c.to_dict() for c in self.checklist],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"rho = {self.rho}", "faces:"]
        for f in self.faces:
            lines.append(f"  {f.label:5} {f.name:8} {lz.format_vector(f.vector):30} {f.role}")
        lines.append("vertices:")
        for i, (q, qp) in enumerate(zip(self.vertices_Q, self.vertices_Qprime), 1):
            lines.append(f"  Q_{i} = ({lz.format_vector(q)})   Q_{i}' = ({lz.format_vector(qp)})")
        lines.append("checks:")
        for c in self.checklist:
            lines.append(f"  [{c.verdict}] {c.name}: {_jsonable(c.value)}")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, (Fraction, Surd)):
        return str(v)
    if isinstance(v, EdgePoint):
        return [_jsonable(x) for x in v.coords]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


# -- faces and vertices ---------------------------------------------------------


def perspective(rho: int) -> tuple[int, ...]:
    return lz.strip_point(lz.check_rho(rho))


def u_face(rho: int, i: int = 1, j: int | None = None) -> tuple[int, ...]:
    """``u = e_i - e_j + E``; the default is the prism face with j = rho-2."""
    j = rho - 2 if j is None else j
    return lz.add(lz.transposition(i, j, rho), perspective(rho))


def u_equation(rho: int) -> tuple:
    """Coefficients of the linear form ``-u.x / 2``."""
    u = u_face(rho)
    return tuple(Fraction(-dot(u, lz.basis(k, rho)), 2) for k in range(1, rho + 1))


def u_equation_expected(rho: int) -> tuple[int, ...]:
    """``x_2 + ... + x_{rho-3} + 2 x_{rho-2}``, written out coefficient by coefficient."""
    return tuple(1 if 2 <= k <= rho - 3 else 2 if k == rho - 2 else 0 for k in range(1, rho + 1))


def build_faces(rho: int) -> list[Face]:
    lz.check_rho(rho)
    faces = []
    for i in range(1, rho - 2):
        faces.append(Face(i, f"v_{i}{i + 1}", lz.transposition(i, i + 1, rho), "transposition", "reflection"))
    faces.append(Face(rho - 2, "u", u_face(rho), "u-face", "reflection"))
    faces.append(Face(rho - 1, _vname(rho - 1, rho), lz.transposition(rho - 1, rho, rho), "transposition", "reflection"))
    faces.append(Face(rho, f"e_{rho}", lz.basis(rho, rho), "base", "reflection"))
    faces.append(Face(rho + 1, _vname(1, rho - 1), lz.transposition(1, rho - 1, rho), "dome", "reflection"))
    if rho == 9:
        faces.append(Face(11, "n_1", N1_9, "phi-wall", "phi-wall"))
        faces.append(Face(12, "n_2", N2_9, "phi-wall", "phi-wall"))
    elif rho == 10:
        faces.append(Face(12, "n", N_10, "dome", "reflection"))
        faces.append(Face(13, "n_1", N1_10, "phi-wall", "phi-wall"))
        faces.append(Face(14, "n_2", N2_10, "phi-wall", "phi-wall"))
    return _orient(rho, faces)


def _vname(i: int, j: int) -> str:
    return f"v_{i}{j}" if i < 10 and j < 10 else f"v_{i},{j}"


def _orient(rho: int, faces: list[Face]) -> list[Face]:
    # Vertical prism faces: orient by the vertex centroid, which is interior.
    # Domes and walls keep the given sign: the domain is on their E side.
    Q, Qp = _solve_vertices_for(rho, faces)
    E = perspective(rho)
    centroid = lz.add(*[lz.horo_normalize(v, E) for v in Q + Qp])
    out = []
    for f in faces:
        if f.index <= rho:
            s = -sign(dot(f.vector, centroid))
            if s == 0:
                raise DegenerateSolve(f"prism centroid lies on {f.label}")
            out.append(Face(f.index, f.name, f.vector, f.role, f.kind, inward=s))
        else:
            out.append(f)
    return out


def _solve_vertices_for(rho: int, faces: Sequence[Face]):
    E = perspective(rho)
    eqs = [f.vector for f in faces[: rho - 2]]
    mid, base = faces[rho - 2].vector, faces[rho - 1].vector
    span = [lz.basis(k, rho) for k in range(1, rho + 1)]
    Q, Qp = [], []
    for i in range(rho - 2):
        rest = eqs[:i] + eqs[i + 1 :]
        Q.append(lz.isotropic_on_plane(span, rest + [mid], E))
        Qp.append(lz.isotropic_on_plane(span, rest + [base], E))
    return Q, Qp


def solve_vertices(rho: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Prism vertices: Q_i lies on F_{rho-1} and Q_i' on F_rho, both off the i-th prism equation."""
    lz.check_rho(rho)
    return _solve_vertices_for(rho, build_faces_unoriented(rho))


def build_faces_unoriented(rho: int) -> list[Face]:
    # The prism faces do not depend on orientation, so vertices can be solved first.
    lz.check_rho(rho)
    faces = [Face(i, "", lz.transposition(i, i + 1, rho), "", "") for i in range(1, rho - 2)]
    faces.append(Face(rho - 2, "", u_face(rho), "", ""))
    faces.append(Face(rho - 1, "", lz.transposition(rho - 1, rho, rho), "", ""))
    faces.append(Face(rho, "", lz.basis(rho, rho), "", ""))
    return faces


def vertex_side(face: Face | Sequence, V: Sequence) -> int:
    n = face.vector if isinstance(face, Face) else face
    return sign(dot(n, V))


# -- intersections and coverage ---------------------------------------------------


def edge_dome_point(A, B, dome: Face | Sequence, E, near) -> EdgePoint:
    """Point on the boundary line AB that also lies on ``dome``.

    A dome not through E meets the line in up to two points, and the one
    nearer to ``near`` is returned.  A wall through E meets it once.
    """
    d = dome.vector if isinstance(dome, Face) else tuple(dome)
    for X, nm in ((A, "A"), (B, "B")):
        if dot(X, X) != 0:
            raise lz.NotIsotropic(f"{nm} is not isotropic")
    span = [tuple(A), tuple(B), tuple(E)]
    coeffs = lz.nullspace([[dot(d, s) for s in span]])
    if len(coeffs) != 2:
        raise DegenerateSolve("the dome equation vanishes on span{A, B, E}")
    if dot(d, E) == 0:
        # pencil through E: the other isotropic ray is unique
        c1, c2 = coeffs
        a, b = lz.combine(c1, span), lz.combine(c2, span)
        if dot(E, a) == 0:
            c1, c2, a, b = c2, c1, b, a
        if dot(E, a) == 0:
            raise DegenerateSolve("line AB is orthogonal to E")
        lam = Fraction(-dot(a, a), 2 * dot(E, a))
        c = tuple(x + lam * y for x, y in zip(c1, _e_coeff()))
        return _edge_point(c, span)
    c1, c2 = coeffs
    a, b = lz.combine(c1, span), lz.combine(c2, span)
    aa, ab, bb = dot(a, a), dot(a, b), dot(b, b)
    cands = []
    if aa == 0:
        cands.append(c1)
        if ab != 0:
            s = Fraction(-bb, 2 * ab)
            cands.append(tuple(s * x + y for x, y in zip(c1, c2)))
    else:
        disc = Fraction(ab * ab - aa * bb)
        if disc < 0:
            raise NoCrossing("line does not meet the dome")
        root = Surd.sqrt_of(disc)
        for sg in (1, -1):
            s = (-ab + sg * root) / aa
            cands.append(tuple(s * x + y for x, y in zip(c1, c2)))
    pts = [_edge_point(c, span) for c in cands]
    pts = [p for p in pts if not _is_ray_of(p.coords, E)]
    if not pts:
        raise NoCrossing("only the point at infinity satisfies the equations")
    nd = dot(near, E)
    return min(pts, key=lambda p: _dist2_key(p.coords, near, E, nd))


def _e_coeff():
    return (0, 0, 1)


def _dist2_key(P, near, E, nd):
    return _div(-2 * dot(P, near), dot(P, E) * nd)


def _div(a, b):
    if isinstance(a, Surd) or isinstance(b, Surd):
        return a / b
    return Fraction(a) / Fraction(b)


def _is_ray_of(P, E) -> bool:
    if any(isinstance(x, Surd) for x in P):
        return False
    return lz.same_ray(P, E) or lz.same_ray(lz.scale(-1, P), E)


def _edge_point(c, span) -> EdgePoint:
    A, B, E = span
    P = tuple(_collapse(x) for x in lz.combine(c, span))
    if any(isinstance(x, Surd) for x in P):
        if sign(sum(P)) < 0:
            P = tuple(-x for x in P)
    else:
        P = lz.future_ray(P)
    wa, wb = c[0] * -dot(A, E), c[1] * -dot(B, E)
    return EdgePoint(tuple(P), _collapse(_div(wb, wa + wb)))


def _collapse(x):
    if isinstance(x, Surd) and x.b == 0:
        x = x.a
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def cover_point(vertices: Sequence, domes: Sequence, E) -> tuple[int, ...]:
    """The line where the domes meet inside the vertical space over the vertices."""
    span = [tuple(v) for v in vertices] + [tuple(E)]
    if _rank(span) < len(span):
        raise DegenerateSolve("the vertices and E are linearly dependent")
    sol = lz.solve_in_span(span, [d.vector if isinstance(d, Face) else d for d in domes])
    if len(sol) != 1:
        raise DegenerateSolve(f"expected a one-dimensional intersection, got {len(sol)}")
    return lz.clear_denominators(sol[0])


def _covered_by(d: Face | Sequence, V) -> bool:
    return vertex_side(d, V) >= 0


def edge_covered(A, B, E, dome1: Face, dome2: Face, name: str = "") -> CheckResult:
    """Whether the segment AB is covered by dome1 (containing A) and dome2 (containing B).

    The domes meet above AB exactly when their common line P in span{A, B, E}
    is timelike or isotropic, i.e. ``P.P <= 0`` under this form.
    """
    name = name or f"edge covered by {_fname(dome1)}, {_fname(dome2)}"
    vecs = {"A": tuple(A), "B": tuple(B)}
    if not (_covered_by(dome1, A) and _covered_by(dome2, B)):
        return CheckResult(name, None, FAIL, vecs, "an endpoint is not inside its dome")
    if _fvec(dome1) == _fvec(dome2):
        return CheckResult(name, None, PASS, vecs, "both endpoints lie in one dome")
    if _rank([A, B, E]) < 3:
        raise DegenerateSolve("A, B and E are linearly dependent")
    P = cover_point([A, B], [dome1, dome2], E)
    pp = dot(P, P)
    vecs["P"] = P
    return CheckResult(name, pp, PASS if pp <= 0 else FAIL, vecs)


def face2_covered(A, B, C, E, d1: Face, d2: Face, d3: Face, name: str = "") -> CheckResult:
    """Three-dome version of :func:`edge_covered` for the triangle ABC."""
    name = name or f"2-face covered by {_fname(d1)}, {_fname(d2)}, {_fname(d3)}"
    vecs = {"A": tuple(A), "B": tuple(B), "C": tuple(C)}
    if _rank([A, B, C, E]) < 4:
        raise DegenerateSolve("A, B, C and E are linearly dependent")
    if not (_covered_by(d1, A) and _covered_by(d2, B) and _covered_by(d3, C)):
        return CheckResult(name, None, FAIL, vecs, "a vertex is not inside its dome")
    P = cover_point([A, B, C], [d1, d2, d3], E)
    pp = dot(P, P)
    vecs["P"] = P
    return CheckResult(name, pp, PASS if pp <= 0 else FAIL, vecs)


def _rank(vectors) -> int:
    import sympy

    return sympy.Matrix([list(v) for v in vectors]).rank()


def _fvec(d):
    return tuple(d.vector) if isinstance(d, Face) else tuple(d)


def _fname(d) -> str:
    return d.label if isinstance(d, Face) else lz.format_vector(d)


# -- the checklists ------------------------------------------------------------


class _Checklist:
    def __init__(self):
        self.items: list[CheckResult] = []

    def expect(self, name, value, ok: bool, vectors=None, note="", discrepancy=False):
        verdict = PASS if ok else (DISCREPANCY if discrepancy else FAIL)
        if isinstance(value, (Surd, Fraction)):
            value = _collapse(value)
        self.items.append(CheckResult(name, value, verdict, dict(vectors or {}), note))
        return ok

    def add(self, result: CheckResult):
        self.items.append(result)


def run_case(rho: int) -> DomainCase:
    lz.check_rho(rho)
    faces = build_faces(rho)
    E = perspective(rho)
    Q, Qp = _solve_vertices_for(rho, faces)
    case = DomainCase(rho, faces, Q, Qp)
    ck = _Checklist()
    _common_checks(case, ck, E)
    if rho <= 8:
        _single_dome_checks(case, ck, E)
    elif rho == 9:
        _rho9_checks(case, ck, E)
    else:
        _rho10_checks(case, ck, E)
    case.checklist = ck.items
    return case


def _common_checks(case: DomainCase, ck: _Checklist, E) -> None:
    rho, faces = case.rho, case.faces
    for f in faces:
        sp = f.self_product
        if f.index <= rho + 1:
            want = 1 if f.index == rho else 4
            ck.expect(f"{f.label} self-product", sp, sp == want, {f.name: f.vector})
        else:
            ck.expect(f"{f.label} self-product positive", sp, sp > 0, {f.name: f.vector})
    for f in faces:
        if f.kind == "reflection":
            try:
                M = lz.reflection_matrix(f.vector)
                ok = M.preserves_form() and M.is_involution()
            except lz.NonIntegral:
                ok = False
            ck.expect(f"reflection in {f.label} is a lattice isometry", ok, ok)
    ck.expect(
        "u-face equation equals -u.x/2",
        list(u_equation(rho)),
        u_equation(rho) == u_equation_expected(rho),
    )
    for f in faces[:rho]:
        ck.expect(f"E lies on {f.label}", dot(f.vector, E), dot(f.vector, E) == 0)
    span = [lz.basis(k, rho) for k in range(1, rho + 1)]
    eqs = [f.vector for f in faces[: rho - 1]]
    sol = lz.solve_in_span(span, eqs)
    ck.expect(
        "all prism equations together leave only the ray E",
        len(sol),
        len(sol) == 1 and lz.same_ray(lz.primitive(sol[0]), lz.primitive(E)),
    )
    dims = []
    for i in range(rho - 2):
        sub = lz.solve_in_span(span, eqs[:i] + eqs[i + 1 :])
        dims.append(len(sub) if _rank(sub + [E]) == len(sub) else -1)
    ck.expect("dropping one equation leaves a 2-dimensional space containing E", dims, set(dims) == {2})
    for nm, verts, plane in (("Q", case.vertices_Q, faces[rho - 2]), ("Q'", case.vertices_Qprime, faces[rho - 1])):
        for i, V in enumerate(verts, 1):
            ok = (
                dot(V, V) == 0
                and sum(V) > 0
                and dot(plane.vector, V) == 0
                and all(dot(faces[j].vector, V) == 0 for j in range(rho - 2) if j != i - 1)
            )
            ck.expect(f"{nm}_{i} solves its equations", V, ok)
    known = KNOWN_VERTICES.get(rho)
    if known:
        ok = case.vertices_Q == known[0] and case.vertices_Qprime == known[1]
        ck.expect("vertex table matches the known table", ok, ok)
    base = _height_base(rho)
    worst = max(dot(f.oriented, base) for f in faces)
    ck.expect("Q_1 + 3E is on the domain side of every face", worst, worst <= 0, {"Q_1+3E": base})


def _height_base(rho: int) -> tuple[int, ...]:
    E = perspective(rho)
    return lz.add(lz.center(lz.basis(1, rho), E), lz.scale(3, E))


def _single_dome_checks(case: DomainCase, ck: _Checklist, E) -> None:
    rho = case.rho
    dome = case.face(rho + 1)
    ck.expect(f"E is outside the dome {dome.label}", dot(dome.vector, E), dot(dome.vector, E) < 0)
    on_dome = []
    for nm, verts in (("Q", case.vertices_Q), ("Q'", case.vertices_Qprime)):
        for i, V in enumerate(verts, 1):
            val = dot(dome.vector, V)
            ck.expect(f"{nm}_{i} covered by {dome.label}", val, val >= 0)
            if val == 0:
                on_dome.append(f"{nm}_{i}")
    expected = ["Q_4"] if rho == 8 else []
    ck.expect("vertices on the dome (cusps besides E)", on_dome, on_dome == expected)
    if rho == 8:
        case.special_points["second_cusp"] = case.vertices_Q[3]


def _rho9_checks(case: DomainCase, ck: _Checklist, E) -> None:
    Q, Qp = case.vertices_Q, case.vertices_Qprime
    F10, F11, F12 = case.face(10), case.face(11), case.face(12)
    ck.expect("E is outside the dome F_10", dot(F10.vector, E), dot(F10.vector, E) < 0)
    for nm, verts in (("Q", Q), ("Q'", Qp)):
        for i, V in enumerate(verts, 1):
            val = dot(F10.vector, V)
            uncovered = nm == "Q" and i in (4, 5)
            ck.expect(
                f"{nm}_{i} {'outside' if uncovered else 'covered by'} F_10",
                val,
                val < 0 if uncovered else val >= 0,
            )
    P1 = lz.midpoint(Q[3], Q[4], E)
    case.special_points["P_1"] = P1
    case.special_points["P_2"] = P2_9
    case.special_points["n_1"] = N1_9
    case.special_points["n_2"] = N2_9
    ck.expect("P_1 = midpoint(Q_4, Q_5) is isotropic", dot(P1, P1), dot(P1, P1) == 0, {"P_1": P1})
    ck.expect("P_1 lies on F_10", dot(F10.vector, P1), dot(F10.vector, P1) == 0)
    ck.expect(
        "printed P_1 has rho entries",
        {"printed": P1_9_PRINTED, "derived": P1},
        len(P1_9_PRINTED) == 9,
        note="the printed vector has 8 entries; the derived 9-entry midpoint is used",
        discrepancy=True,
    )
    ck.expect("n_1.E = 0", dot(N1_9, E), dot(N1_9, E) == 0)
    ck.expect("n_1.P_1 = 0", dot(N1_9, P1), dot(N1_9, P1) == 0)
    ck.expect(
        "n_1.Q_4 = 0",
        dot(N1_9, Q[3]),
        dot(N1_9, Q[3]) == 0,
        note="stated as zero; P_1 satisfies the intended incidence instead",
        discrepancy=True,
    )
    ck.expect("P_2 is isotropic", dot(P2_9, P2_9), dot(P2_9, P2_9) == 0)
    ck.expect("n_2 passes through P_1", dot(N2_9, P1), dot(N2_9, P1) == 0)
    ck.expect("n_2 passes through P_2", dot(N2_9, P2_9), dot(N2_9, P2_9) == 0)
    q = Fraction(dot(N1_9, N2_9) ** 2, dot(N1_9, N1_9) * dot(N2_9, N2_9))
    ck.expect("F_11 and F_12 are tangent", q, q == 1)
    _phi_checks(ck, P1, P2_9, E)
    for nm, verts in (("Q", Q), ("Q'", Qp)):
        for i, V in enumerate(verts, 1):
            val = dot(N1_9, V)
            want = 0 if i == 1 else 1 if i in (2, 3, 4) else -1
            ck.expect(f"{nm}_{i} side of F_11", val, sign(val) == want)
    for k, wall, nm in ((4, F11, "n_1"), (5, F12, "n_2")):
        apex = Q[k - 1]
        ck.expect(f"Q_{k} in H+ of {nm}", dot(wall.vector, apex), dot(wall.vector, apex) >= 0)
        for i in range(1, 8):
            other = Qp[k - 1] if i == k else Q[i - 1]
            P = edge_dome_point(apex, other, F10, E, apex)
            tag = f"P_{k}{i}"
            case.special_points[tag] = P
            ck.expect(f"{tag} lies on its prism edge", P.t, P.on_segment)
            val = dot(wall.vector, P.coords)
            ck.expect(f"{tag} in H+ of {nm}", val, sign(val) >= 0)
        partner = 5 if k == 4 else 4
        same = case.special_points[f"P_{k}{partner}"].coords == P1
        ck.expect(f"P_{k}{partner} = P_1", same, same)
    ck.expect("E in H- of n_2", dot(N2_9, E), dot(N2_9, E) < 0)


def _phi_checks(ck: _Checklist, P1, P2, E) -> None:
    for nm, (P, X) in (("phi(P_1, E)", (P1, E)), ("phi(P_1, P_2)", (P1, P2))):
        try:
            M = lz.phi_matrix(P, X)
            ok = M.preserves_form() and M.is_involution() and M.preserves_future()
        except lz.NonIntegral:
            ok = False
        ck.expect(f"{nm} is a lattice isometry", ok, ok)


def rho10_top_set(case: DomainCase) -> dict[str, tuple]:
    """Top-of-prism vertices covered by F_11: Q_1, Q_7, Q_8 and the nine P_ij."""
    Q = case.vertices_Q
    S = {"Q_1": Q[0], "Q_7": Q[6], "Q_8": Q[7]}
    for i in (6, 7, 8):
        for j in (2, 3, 4):
            S[f"P_{i}{j}"] = case.special_points[f"P_{i}{j}"]
    return S


def _rho10_checks(case: DomainCase, ck: _Checklist, E) -> None:
    Q, Qp = case.vertices_Q, case.vertices_Qprime
    F9, F10, F11, F12, F13, F14 = (case.face(i) for i in (9, 10, 11, 12, 13, 14))
    ck.expect("E is outside the dome F_11", dot(F11.vector, E), dot(F11.vector, E) < 0)
    for nm, verts in (("Q", Q), ("Q'", Qp)):
        for i, V in enumerate(verts, 1):
            val = dot(F11.vector, V)
            uncovered = nm == "Q" and i in (4, 5, 6)
            ck.expect(
                f"{nm}_{i} {'outside' if uncovered else 'covered by'} F_11",
                val,
                val < 0 if uncovered else val >= 0,
            )
    ck.expect("Q_5' lies on F_11", dot(F11.vector, Qp[4]), dot(F11.vector, Qp[4]) == 0)
    ck.expect("n passes through Q_5'", dot(N_10, Qp[4]), dot(N_10, Qp[4]) == 0)
    c = lz.center(N_10, E)
    ck.expect("n is centred at Q_5", c, c == Q[4], {"center": c, "Q_5": Q[4]})
    P1 = lz.midpoint(Q[3], Q[5], E)
    case.special_points.update({"P_1": P1, "P_2": P2_10, "f": F_10, "n": N_10, "n_1": N1_10, "n_2": N2_10})
    ck.expect("midpoint(Q_4, Q_6) = P_1", P1, P1 == P1_10)
    for f in (F11, F12, F13):
        ck.expect(f"P_1 lies on {f.label}", dot(f.vector, P1), dot(f.vector, P1) == 0)
    ck.expect("f is a unit lattice vector", dot(F_10, F_10), dot(F_10, F_10) == 1 and sum(F_10) > 0)
    ck.expect("P_2 is isotropic", dot(P2_10, P2_10), dot(P2_10, P2_10) == 0)
    ck.expect("n_1.E = 0", dot(N1_10, E), dot(N1_10, E) == 0)
    ck.expect("n_2 passes through P_1", dot(N2_10, P1), dot(N2_10, P1) == 0)
    ck.expect("n_2 passes through P_2", dot(N2_10, P2_10), dot(N2_10, P2_10) == 0)
    _phi_checks(ck, P1, P2_10, E)
    for nm, verts in (("Q", Q), ("Q'", Qp)):
        for i, V in enumerate(verts, 1):
            val = dot(N1_10, V)
            want = 1 if i in (2, 3, 4) else 0 if i in (1, 5) else -1
            ck.expect(f"{nm}_{i} side of F_13", val, sign(val) == want)
    ck.expect("F_13 is perpendicular to F_10", dot(N1_10, F10.vector), dot(N1_10, F10.vector) == 0)
    ck.expect("F_13 is perpendicular to F_9", dot(N1_10, F9.vector), dot(N1_10, F9.vector) == 0)
    for i in (6, 7, 8):
        for j in (2, 3, 4):
            for prime, verts, plane in (("", Q, F9), ("'", Qp, F10)):
                P = edge_dome_point(verts[i - 1], verts[j - 1], F13, E, verts[i - 1])
                tag = f"P_{i}{j}{prime}"
                case.special_points[tag] = P.coords
                ok = (
                    P.rational
                    and P.on_segment
                    and dot(P.coords, P.coords) == 0
                    and dot(N1_10, P.coords) == 0
                    and dot(plane.vector, P.coords) == 0
                )
                ck.expect(f"{tag} on Q{prime}_{i}Q{prime}_{j}, F_13 and {plane.label}", P.coords, ok)
    top = rho10_top_set(case)
    bottom = {"Q_1'": Qp[0], "Q_5'": Qp[4], "Q_6'": Qp[5], "Q_7'": Qp[6], "Q_8'": Qp[7]}
    for i in (6, 7, 8):
        for j in (2, 3, 4):
            bottom[f"P_{i}{j}'"] = case.special_points[f"P_{i}{j}'"]
    verts = {**top, "Q_5": Q[4], "Q_6": Q[5], **bottom}
    ck.expect("F_E has 28 vertices", len(verts), len(verts) == 28)
    domes = (F11, F12, F14)
    for nm, V in verts.items():
        by = [d.label for d in domes if _covered_by(d, V)]
        ck.expect(f"{nm} covered", by, bool(by))
    for nm, V in top.items():
        ck.expect(f"{nm} in S covered by F_11", dot(F11.vector, V), _covered_by(F11, V))
    ck.expect("F_12 covers Q_5", dot(N_10, Q[4]), _covered_by(F12, Q[4]))
    ck.expect("F_12 misses Q_6", dot(N_10, Q[5]), not _covered_by(F12, Q[5]))
    ck.expect("F_14 covers Q_6", dot(N2_10, Q[5]), _covered_by(F14, Q[5]))
    for res in rho10_coverage(case):
        ck.add(res)


def rho10_coverage(case: DomainCase) -> list[CheckResult]:
    """Every edge and 2-face check needed to cover F_E by F_11, F_12 and F_14."""
    E = perspective(10)
    Q, Qp = case.vertices_Q, case.vertices_Qprime
    F11, F12, F14 = case.face(11), case.face(12), case.face(14)
    S = rho10_top_set(case)
    out = []
    for apex, dome, prime in (("Q_5", F12, ("Q_5'", Qp[4])), ("Q_6", F14, ("Q_6'", Qp[5]))):
        V = Q[4] if apex == "Q_5" else Q[5]
        for nm, A in list(S.items()) + [prime]:
            out.append(edge_covered(V, A, E, dome, F11, f"edge {apex}{nm} by {dome.label}, F_11"))
    out.append(edge_covered(Q[4], Q[5], E, F12, F14, "edge Q_5Q_6 by F_12, F_14"))
    for nm, A in list(S.items()) + [("Q_5'", Qp[4]), ("Q_6'", Qp[5])]:
        out.append(
            face2_covered(Q[4], Q[5], A, E, F12, F14, F11, f"2-face Q_5Q_6{nm} by F_12, F_14, F_11")
        )
    return out
