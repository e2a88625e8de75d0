"""Exact Lorentzian arithmetic on the lattice spanned by mutually tangent spheres.

Vectors are plain tuples of coordinates in the basis ``e_1 .. e_rho`` whose Gram
matrix has 1 on the diagonal and -1 off it.  Integer tuples are lattice
vectors; tuples of :class:`fractions.Fraction` appear as intermediate values.
Nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence

import sympy

Vector = tuple  # tuple[int, ...] or tuple[Fraction, ...]

RHO_MIN, RHO_MAX = 4, 10


class LatticeError(ValueError):
    """Base class for invalid inputs to the lattice operations."""


class DimensionMismatch(LatticeError):
    pass


class NonIntegral(LatticeError):
    """A reflection or involution does not preserve the lattice."""


class NotIsotropic(LatticeError):
    pass


class DegenerateSolve(LatticeError):
    """A linear solve did not have the expected solution space."""


class CurvatureZero(LatticeError):
    """The sphere passes through the point at infinity, so it has no centre."""


def check_rho(rho: int) -> int:
    if not RHO_MIN <= rho <= RHO_MAX:
        raise LatticeError(f"rho must be in [{RHO_MIN}, {RHO_MAX}], got {rho}")
    return rho


# -- construction helpers ---------------------------------------------------


def basis(i: int, rho: int) -> tuple[int, ...]:
    """The 1-indexed basis vector ``e_i``."""
    if not 1 <= i <= rho:
        raise LatticeError(f"basis index {i} out of range for rho={rho}")
    return tuple(1 if k == i - 1 else 0 for k in range(rho))


def transposition(i: int, j: int, rho: int) -> tuple[int, ...]:
    """``v_ij = e_i - e_j``; reflection in it swaps coordinates i and j."""
    return sub(basis(i, rho), basis(j, rho))


def strip_point(rho: int) -> tuple[int, ...]:
    """Tangency point ``e_{rho-1} + e_rho`` of the two base planes."""
    return add(basis(rho - 1, rho), basis(rho, rho))


def all_ones(rho: int) -> tuple[int, ...]:
    """The timelike reference vector ``D = e_1 + ... + e_rho``."""
    return (1,) * rho


def viete_vector(i: int, rho: int) -> tuple[int, ...]:
    """Normal of the sphere orthogonal to every ``e_j`` with ``j != i``.

    Solving ``s . e_j = 0`` for ``j != i`` forces all other coordinates equal;
    normalising them to 1 gives ``s_i = 3 - rho``.
    """
    return tuple(3 - rho if k == i - 1 else 1 for k in range(rho))


def add(*vectors: Sequence) -> tuple:
    _same_length(*vectors)
    return tuple(sum(xs) for xs in zip(*vectors))


def sub(u: Sequence, v: Sequence) -> tuple:
    _same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def _same_length(*vectors: Sequence) -> None:
    if len({len(v) for v in vectors}) > 1:
        raise DimensionMismatch(f"vector lengths differ: {[len(v) for v in vectors]}")


# -- the form ---------------------------------------------------------------


def gram_matrix(rho: int) -> list[list[int]]:
    return [[1 if i == j else -1 for j in range(rho)] for i in range(rho)]


def dot(u: Sequence, v: Sequence):
    """Lorentz product ``u^t J v``.

    Uses ``2 sum(u_i v_i) - sum(u) sum(v)``, which is the same thing as
    evaluating against ``J`` because ``J = 2I - 11^t``.
    """
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot pair vectors of length {len(u)} and {len(v)}")
    return 2 * sum(a * b for a, b in zip(u, v)) - sum(u) * sum(v)


def dot_gram(u: Sequence, v: Sequence):
    """Direct ``u^t J v`` evaluation; slow, kept as a cross-check for :func:`dot`."""
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot pair vectors of length {len(u)} and {len(v)}")
    J = gram_matrix(len(u))
    return sum(u[i] * J[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def norm2(v: Sequence):
    return dot(v, v)


# -- ray normalisation -------------------------------------------------------


def clear_denominators(v: Iterable) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to a primitive integer one."""
    fr = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise LatticeError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def primitive(v: Iterable) -> tuple[int, ...]:
    """Primitive representative of the ray, first nonzero coordinate positive."""
    w = clear_denominators(v)
    lead = next(x for x in w if x)
    return w if lead > 0 else tuple(-x for x in w)


def future_ray(v: Iterable) -> tuple[int, ...]:
    """Primitive representative with ``v . D < 0`` (used for isotropic points).

    Since ``e_k . D = 2 - rho`` for every k, the sign condition is ``sum(v) > 0``.
    """
    w = clear_denominators(v)
    s = sum(w)
    if s == 0:
        raise LatticeError(f"{w} is orthogonal to D; no future orientation")
    return w if s > 0 else tuple(-x for x in w)


def same_ray(u: Sequence, v: Sequence) -> bool:
    """True when u is a positive multiple of v."""
    return clear_denominators(u) == clear_denominators(v)


# -- reflections and involutions --------------------------------------------


def reflect(n: Sequence, x: Sequence) -> tuple:
    """Reflection of x in the hyperplane ``n . y = 0``."""
    nn = dot(n, n)
    if nn <= 0:
        raise LatticeError(f"reflection needs n.n > 0, got {nn}")
    c = Fraction(2 * dot(n, x), nn)
    return tuple(_simplify(a - c * b) for a, b in zip(x, n))


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _integral_columns(images: list[tuple], what: str) -> tuple[tuple[int, ...], ...]:
    for col in images:
        for y in col:
            if isinstance(y, Fraction) and y.denominator != 1:
                raise NonIntegral(f"{what} has a non-integral entry {y}")
    rho = len(images)
    return tuple(tuple(int(images[j][i]) for j in range(rho)) for i in range(rho))


@dataclass(frozen=True)
class Isometry:
    """Integer matrix acting on column coordinate vectors, plus provenance."""

    matrix: tuple[tuple[int, ...], ...]
    word: tuple[str, ...] = field(default=())

    @property
    def rho(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence) -> tuple:
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.matrix)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        cols = [self(col) for col in zip(*other.matrix)]
        m = tuple(tuple(c[i] for c in cols) for i in range(self.rho))
        return Isometry(m, other.word + self.word)

    def transpose(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.matrix))

    def preserves_form(self) -> bool:
        cols = list(zip(*self.matrix))
        rho = self.rho
        return all(
            dot(cols[i], cols[j]) == (1 if i == j else -1)
            for i in range(rho)
            for j in range(i, rho)
        )

    def is_involution(self) -> bool:
        sq = self @ self
        return all(sq.matrix[i][j] == (i == j) for i in range(self.rho) for j in range(self.rho))

    def preserves_future(self) -> bool:
        D = all_ones(self.rho)
        return dot(self(D), D) < 0


def reflection_matrix(n: Sequence, label: str | None = None) -> Isometry:
    """Matrix of the reflection in ``n``; raises :class:`NonIntegral` if it leaves the lattice."""
    rho = len(n)
    cols = [reflect(n, basis(i, rho)) for i in range(1, rho + 1)]
    m = _integral_columns(cols, f"reflection in {tuple(n)}")
    return Isometry(m, (label,) if label else ())


def phi_map(P: Sequence, E: Sequence, x: Sequence) -> tuple:
    """The -1 map centred at P in the Euclidean picture with E at infinity."""
    _check_isotropic(P, "P")
    _check_isotropic(E, "E")
    pe = dot(P, E)
    if pe == 0:
        raise LatticeError("phi map needs P.E != 0")
    px, ex = dot(P, x), dot(E, x)
    return tuple(_simplify(Fraction(2 * (px * e + ex * p), pe) - xi) for e, p, xi in zip(E, P, x))


def phi_matrix(P: Sequence, E: Sequence, label: str | None = None) -> Isometry:
    rho = len(P)
    cols = [phi_map(P, E, basis(i, rho)) for i in range(1, rho + 1)]
    m = _integral_columns(cols, f"phi map at {tuple(P)}")
    return Isometry(m, (label,) if label else ())


def _check_isotropic(v: Sequence, name: str) -> None:
    if dot(v, v) != 0:
        raise NotIsotropic(f"{name}={tuple(v)} is not isotropic")


# -- Euclidean data in a perspective -----------------------------------------


def curvature(n: Sequence, E: Sequence) -> Fraction:
    """Signed curvature ``-n.E / |n|`` of the sphere ``n`` seen with E at infinity.

    Exact only when ``n.n`` is a perfect square; otherwise raise and let the
    caller use :func:`curvature_squared`.
    """
    nn = dot(n, n)
    if nn <= 0:
        raise LatticeError(f"n.n must be positive, got {nn}")
    r = isqrt(nn)
    if r * r != nn:
        raise LatticeError(f"n.n = {nn} is not a perfect square; use curvature_squared")
    return Fraction(-dot(n, E), r)


def curvature_squared(n: Sequence, E: Sequence) -> Fraction:
    nn = dot(n, n)
    if nn <= 0:
        raise LatticeError(f"n.n must be positive, got {nn}")
    return Fraction(dot(n, E) ** 2, nn)


def center(m: Sequence, E: Sequence) -> tuple[int, ...]:
    """Centre of the sphere m: the image of the point at infinity under inversion in m."""
    if dot(m, E) == 0:
        raise CurvatureZero(f"{tuple(m)} has curvature 0 with respect to {tuple(E)}")
    return future_ray(reflect(m, E))


def euclid_dist2(A: Sequence, B: Sequence, E: Sequence) -> Fraction:
    """Squared Euclidean distance ``-2 A.B / ((A.E)(B.E))`` on the boundary.

    The value depends on the representative chosen for E: doubling E halves it.
    """
    _check_isotropic(A, "A")
    _check_isotropic(B, "B")
    ae, be = dot(A, E), dot(B, E)
    if ae == 0 or be == 0:
        raise LatticeError("point coincides with the point at infinity")
    return Fraction(-2 * dot(A, B)) / (ae * be)


# -- exact linear solves ----------------------------------------------------


def nullspace(rows: Sequence[Sequence]) -> list[tuple]:
    """Rational basis of ``{c : rows . c = 0}`` (plain matrix product, not the form)."""
    if not rows:
        raise DegenerateSolve("empty system")
    M = sympy.Matrix([[sympy.Rational(x) for x in r] for r in rows])
    return [tuple(_to_fraction(c) for c in vec) for vec in M.nullspace()]


def _to_fraction(x) -> Fraction:
    q = sympy.Rational(x)
    return _simplify(Fraction(int(q.p), int(q.q)))


def solve_in_span(span: Sequence[Sequence], walls: Sequence[Sequence]) -> list[tuple]:
    """Basis of ``{x in span(span) : w . x = 0 for all w in walls}``."""
    rows = [[dot(w, s) for s in span] for w in walls]
    if not rows:
        coeffs = [tuple(int(i == j) for j in range(len(span))) for i in range(len(span))]
    else:
        coeffs = nullspace(rows)
    return [combine(c, span) for c in coeffs]


def combine(coeffs: Sequence, vectors: Sequence[Sequence]) -> tuple:
    return tuple(_simplify(sum(c * v[k] for c, v in zip(coeffs, vectors))) for k in range(len(vectors[0])))


def isotropic_on_plane(
    span: Sequence[Sequence], walls: Sequence[Sequence], known: Sequence
) -> tuple[int, ...]:
    """Second isotropic ray in a 2-dimensional solution space containing ``known``.

    Writing the space as ``span{known, w}``, the isotropic combinations are
    ``known`` itself and ``a*known + b*w`` with ``a = -(w.w) b / (2 known.w)``.
    """
    sol = solve_in_span(span, walls)
    if len(sol) != 2:
        raise DegenerateSolve(f"expected a 2-dimensional solution space, got {len(sol)}")
    if dot(known, known) != 0:
        raise NotIsotropic("known ray must be isotropic")
    for s in sol:
        if any(dot(w, s) for w in walls):
            raise DegenerateSolve("solver returned a non-solution")
    if any(dot(w, known) for w in walls):
        raise DegenerateSolve("known ray does not satisfy the wall equations")
    w = next((s for s in sol if dot(known, s) != 0), None)
    if w is None:
        raise DegenerateSolve("degenerate pencil: known is orthogonal to the solution space")
    kw = dot(known, w)
    a = Fraction(-dot(w, w), 2 * kw)
    Q = future_ray(add(scale(a, known), w))
    if clear_denominators(Q) == clear_denominators(known):
        raise DegenerateSolve("second isotropic ray coincides with the known one")
    return Q


def horo_normalize(A: Sequence, E: Sequence) -> tuple:
    """Scale an isotropic A so that ``A.E = -1``."""
    ae = dot(A, E)
    if ae == 0:
        raise LatticeError("point coincides with the point at infinity")
    return tuple(Fraction(x, 1) / -ae for x in A)


def midpoint(A: Sequence, B: Sequence, E: Sequence) -> tuple[int, ...]:
    """Euclidean midpoint of A and B on the boundary with E at infinity."""
    _check_isotropic(A, "A")
    _check_isotropic(B, "B")
    M0 = add(horo_normalize(A, E), horo_normalize(B, E))
    lam = Fraction(-dot(M0, M0)) / (2 * dot(M0, E))
    return future_ray(add(M0, scale(lam, E)))


# -- text format ------------------------------------------------------------


def parse_vector(text: str) -> tuple[int, ...]:
    """Parse ``"16,16,-12"``-style text; rho is the number of entries."""
    parts = [p.strip() for p in text.replace("(", "").replace(")", "").split(",")]
    try:
        v = tuple(int(p) for p in parts if p)
    except ValueError as exc:
        raise LatticeError(f"not an integer vector: {text!r}") from exc
    check_rho(len(v))
    return v


def format_vector(v: Sequence) -> str:
    return ",".join(str(x) for x in v)
