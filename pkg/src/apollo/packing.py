"""The packing group, orbit enumeration, descent and the packing properties.

The packing is the orbit of ``e_rho`` under the group generated by the
reflections in the faces of the fundamental domain, minus ``e_rho`` itself,
together with the two phi maps when rho is 9 or 10.  With
``E = e_{rho-1} + e_rho`` at infinity the packing fills a slab between the
planes ``e_{rho-1}`` and ``e_rho`` and is periodic along it, so enumeration
works in a bounded window (see :func:`in_window`).
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import ceil
from typing import Sequence

import numpy as np

from . import domain, kernels
from . import lorentz as lz
from . import _kernels_py
from .lorentz import Isometry, dot

DEFAULT_DESCENT_CAP = 10**6


class MembershipError(RuntimeError):
    """Descent did not certify that a vector lies in the packing orbit."""


class DescentCapExceeded(RuntimeError):
    pass


# -- generators ------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    rho: int
    generators: tuple[Isometry, ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.generators)

    def as_array(self) -> np.ndarray:
        return np.array([g.matrix for g in self.generators], dtype=np.int64)

    def apply_word(self, word: Sequence[int], x: Sequence[int]) -> tuple[int, ...]:
        """Apply ``word[0]`` first, then ``word[1]``, and so on."""
        for a in word:
            x = self.generators[a](x)
        return tuple(x)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def build_group(rho: int) -> GeneratorSet:
    """Reflections in every reflective face except ``e_rho``, plus the phi maps."""
    lz.check_rho(rho)
    gens, labels = [], []
    for f in domain.build_faces(rho):
        if f.kind != "reflection" or f.role == "base":
            continue
        gens.append(lz.reflection_matrix(f.vector, f.label))
        labels.append(f.label)
    if rho in (9, 10):
        E = domain.perspective(rho)
        P1 = domain.P1_10 if rho == 10 else domain.P1_9
        P2 = domain.P2_10 if rho == 10 else domain.P2_9
        gens.append(lz.phi_matrix(P1, E, "phi(P_1,E)"))
        gens.append(lz.phi_matrix(P1, P2, "phi(P_1,P_2)"))
        labels += ["phi(P_1,E)", "phi(P_1,P_2)"]
    return GeneratorSet(rho, tuple(gens), tuple(labels))


# -- heights and the window ---------------------------------------------------------


def height_base(rho: int) -> tuple[int, ...]:
    """``Q_1 + 3E`` with ``Q_1 = R_{e_1}(E)``."""
    E = domain.perspective(rho)
    return lz.add(lz.reflect(lz.basis(1, rho), E), lz.scale(3, E))


def height(m: Sequence[int], rho: int | None = None) -> int:
    rho = rho or len(m)
    return -dot(height_base(rho), m)


def window_base(rho: int) -> tuple[int, ...]:
    """Sum of ``Q_i + 3E`` over i <= rho-2, divided by 4.

    Unlike ``Q_1 + 3E`` this is fixed by every permutation of
    ``e_1 .. e_{rho-2}``, so its height balls are centred on the window.
    """
    return (1,) * (rho - 2) + (rho - 2, rho - 2)


def window_height(m: Sequence[int], rho: int | None = None) -> int:
    rho = rho or len(m)
    return -dot(window_base(rho), m)


def in_window(m: Sequence[int], rho: int | None = None) -> bool:
    """Whether the sphere's centre lies in the window cell.

    The cell is ``{X : (e_i - e_j + E).X <= 0 for all i != j <= rho-2}``; for
    ``m`` with curvature k this reduces to ``2 (max - min) <= k`` over the
    first rho-2 coordinates.  Curvature-0 planes pass only if they are the
    two slab walls.
    """
    rho = rho or len(m)
    head = m[: rho - 2]
    k = -dot(m, domain.perspective(rho))
    return 2 * (max(head) - min(head)) <= k


def window_bound(rho: int, kmax: int) -> int:
    """Largest window height of a sphere with curvature <= kmax centred in the cell.

    A sphere with curvature k > 0 and horo-normalised centre C is
    ``m = k C - E / (2k)``, so its window height is ``k (-B.C) + B.E / (2k)``.
    That is convex in the centre and invariant under the permutations that
    tile the cell by prisms, so its maximum is at a prism vertex.
    """
    E = domain.perspective(rho)
    B = window_base(rho)
    Q, Qp = domain.solve_vertices(rho)
    best = max(window_height(lz.basis(rho, rho)), window_height(lz.basis(rho - 1, rho)))
    if kmax > 0:
        be = Fraction(dot(B, E))
        for V in Q + Qp:
            C = lz.horo_normalize(V, E)
            best = max(best, kmax * -dot(B, C) + be / (2 * kmax))
    return ceil(best)


@cache
def descent_base(rho: int, lift: int = 2) -> tuple[int, ...]:
    """A timelike point strictly inside the fundamental domain.

    The centroid of the horo-normalised cell vertices, raised by ``lift * E``
    so it sits above every dome.  ``Q_1 + 3E`` lies on several prism faces,
    and reflections in those leave its height unchanged, so greedy descent
    on it can stall (e_2 and e_3 tie at rho = 5); this point does not.
    """
    E = domain.perspective(rho)
    Q, Qp = domain.solve_vertices(rho)
    pts = [lz.horo_normalize(V, E) for V in Q + Qp]
    X = [sum(Fraction(p[i]) for p in pts) / len(pts) + lift * E[i] for i in range(rho)]
    return lz.clear_denominators(X)


# -- records ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SphereRecord:
    vector: tuple[int, ...]
    curvature: int
    word: tuple[str, ...]
    height: int

    @property
    def rho(self) -> int:
        return len(self.vector)


@dataclass(frozen=True)
class Cluster:
    members: tuple[tuple[int, ...], ...]
    word: tuple[str, ...]

    def contains(self, m: Sequence[int]) -> bool:
        return tuple(m) in self.members

    def pairwise_products(self) -> list[int]:
        ms = self.members
        return [dot(ms[i], ms[j]) for i in range(len(ms)) for j in range(i + 1, len(ms))]

    def curvatures(self, E: Sequence[int]) -> tuple[int, ...]:
        return tuple(-dot(m, E) for m in self.members)


@dataclass
class Enumeration:
    rho: int
    E: tuple[int, ...]
    kmax: int
    records: list[SphereRecord]
    height_bound: int
    heights_tried: list[int]
    retained_counts: list[int]
    visited: int
    windowed: bool
    truncated: bool = False
    backend: str = kernels.BACKEND

    def vectors(self) -> list[tuple[int, ...]]:
        return [r.vector for r in self.records]

    def curvatures(self) -> list[int]:
        return [r.curvature for r in self.records]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["curvature", "vector", "word_length"])
        for r in self.records:
            w.writerow([r.curvature, lz.format_vector(r.vector), len(r.word)])
        return buf.getvalue()


# -- enumeration -------------------------------------------------------------------------


class _Orbit:
    """Incremental breadth-first closure of ``e_rho`` under a window-height cap.

    Vectors with some neighbour above the current cap form the boundary;
    raising the cap re-expands only those.
    """

    def __init__(self, group: GeneratorSet, base: Sequence[int]):
        self.group = group
        self.rho = group.rho
        self.ngens = len(group)
        self.gens = group.as_array()
        self.base = np.array(base, dtype=np.int64)
        start = lz.basis(self.rho, self.rho)
        self.parent: dict[tuple, tuple] = {start: (None, -1)}
        self.order: list[tuple] = [start]
        self.boundary: list[tuple] = [start]
        self.H: int | None = None
        self.exact = False

    def _expand(self, rows: list[tuple], H: int):
        arr = np.array(rows, dtype=object if self.exact else np.int64)
        if not self.exact:
            try:
                return kernels.expand(arr, self.gens, np.zeros(self.rho, np.int64), self.base, H)
            except OverflowError:
                self.exact = True
                arr = arr.astype(object)
        return _kernels_py.expand(arr, self.gens.astype(object), None, self.base.astype(object), H)

    def grow(self, H: int, cap: int | None = None) -> bool:
        """Extend the closure to window height H; False if ``cap`` was hit."""
        self.H = H
        frontier = sorted(self.boundary)
        boundary: list[tuple] = []
        while frontier:
            nxt = []
            for lo in range(0, len(frontier), 8192):
                chunk = frontier[lo : lo + 8192]
                imgs, par, gen, _ = self._expand(chunk, H)
                full = np.bincount(np.asarray(par, dtype=np.int64), minlength=len(chunk))
                boundary.extend(v for v, c in zip(chunk, full.tolist()) if c < self.ngens)
                for row, p, a in zip(imgs.tolist(), par.tolist(), gen.tolist()):
                    v = tuple(row)
                    if v not in self.parent:
                        self.parent[v] = (chunk[p], a)
                        nxt.append(v)
                        self.order.append(v)
                if cap is not None and len(self.parent) > cap:
                    self.boundary = boundary + nxt + frontier[lo + 8192 :]
                    return False
            frontier = sorted(nxt)
        self.boundary = boundary
        return True

    def word(self, v: tuple) -> tuple[int, ...]:
        out = []
        while True:
            p, a = self.parent[v]
            if p is None:
                return tuple(reversed(out))
            out.append(a)
            v = p


_INF = 1 << 62


def enumerate_packing(
    rho: int,
    kmax: int,
    E: Sequence[int] | None = None,
    max_records: int = 2_000_000,
) -> Enumeration:
    """Spheres of the packing with curvature in ``[0, kmax]``.

    In the default perspective only spheres centred in the window cell are
    kept (the full strip is infinite).  The window height cap starts at
    :func:`window_bound`, which every kept sphere satisfies, and grows until
    two consecutive deepenings add nothing new.
    """
    lz.check_rho(rho)
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    default_E = domain.perspective(rho)
    E = tuple(E) if E is not None else default_E
    if len(E) != rho or dot(E, E) != 0 or sum(E) <= 0:
        raise lz.NotIsotropic(f"perspective {E} is not a future isotropic lattice vector")
    windowed = E == default_E
    group = build_group(rho)
    orbit = _Orbit(group, window_base(rho))
    H = window_bound(rho, kmax) if windowed else window_bound(rho, max(kmax, 1))
    step = max(4, -(-H // 10))
    tried, counts = [], []
    quiet = 0
    retainer = _Retainer(rho, E, kmax, windowed)
    truncated = False
    prev = None
    while True:
        complete = orbit.grow(H, cap=max_records)
        kept = retainer.update(orbit)
        tried.append(H)
        counts.append(len(kept))
        if not complete:
            truncated = True
            break
        if prev is not None and len(kept) == len(prev):
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
        prev = kept
        # without a window nothing bounds the start height, so grow geometrically
        H = H + step if windowed else 2 * H
    records = [
        SphereRecord(
            v,
            -dot(v, E),
            tuple(group.labels[a] for a in orbit.word(v)),
            height(v, rho),
        )
        for v in sorted(kept, key=lambda v: (-dot(v, E), v))
    ]
    return Enumeration(rho, E, kmax, records, H, tried, counts, len(orbit.parent), windowed, truncated)


class _Retainer:
    """Incrementally filters newly visited vectors by curvature and window."""

    def __init__(self, rho: int, E, kmax: int, windowed: bool):
        self.E = np.array(E, dtype=object)
        self.rho, self.kmax, self.windowed = rho, kmax, windowed
        self.seen = 0
        self.kept: set[tuple] = set()

    def update(self, orbit: _Orbit) -> frozenset:
        new = orbit.order[self.seen :]
        self.seen = len(orbit.order)
        if new:
            V = np.array(new, dtype=np.int64 if not orbit.exact else object)
            k = -_kernels_py.products_with(V, self.E.astype(V.dtype))
            ok = (k >= 0) & (k <= self.kmax)
            if self.windowed:
                head = V[:, : self.rho - 2]
                ok &= 2 * (head.max(axis=1) - head.min(axis=1)) <= k
            self.kept.update(new[i] for i in np.nonzero(ok)[0].tolist())
        return frozenset(self.kept)


def closure_defects(rho: int, kmax: int, H: int) -> list[tuple]:
    """Images of visited vectors that are neither visited nor beyond the cap.

    Empty by construction; exposed so tests can assert orbit closure.
    """
    group = build_group(rho)
    orbit = _Orbit(group, window_base(rho))
    orbit.grow(H)
    bad = []
    for v in orbit.parent:
        for g in group.generators:
            y = g(v)
            if y not in orbit.parent and window_height(y) <= H:
                bad.append((v, y))
    return bad


# -- descent and clusters -----------------------------------------------------------


def descend(
    m: Sequence[int],
    rho: int | None = None,
    group: GeneratorSet | None = None,
    cap: int = DEFAULT_DESCENT_CAP,
) -> tuple[tuple[int, ...], list[str]]:
    """Greedy descent on ``(-p.m, curvature)`` with p from :func:`descent_base`.

    At each step the generator giving the smallest key is applied, lowest
    index on ties, while that key is strictly below the current one.
    Orbit members end in the base cluster ``e_1 .. e_rho``.
    """
    rho = rho or len(m)
    group = group or build_group(rho)
    E = domain.perspective(rho)
    Bh = descent_base(rho)
    cur = tuple(m)
    if dot(cur, cur) != 1:
        raise lz.LatticeError("descent needs m.m = 1")
    if -dot(E, cur) < 0:
        raise MembershipError(f"{cur} has negative curvature, so it is not a packing sphere")
    key = (-dot(Bh, cur), -dot(E, cur))
    word: list[str] = []
    for _ in range(cap):
        best = None
        for i, g in enumerate(group.generators):
            y = g(cur)
            ky = (-dot(Bh, y), -dot(E, y))
            if ky < key and (best is None or ky < best[0]):
                best = (ky, i, y)
        if best is None:
            return cur, word
        key, i, cur = best
        word.append(group.labels[i])
    raise DescentCapExceeded(f"descent did not stop within {cap} steps")


def base_cluster(rho: int) -> tuple[tuple[int, ...], ...]:
    return tuple(lz.basis(i, rho) for i in range(1, rho + 1))


def find_cluster(m: Sequence[int], rho: int | None = None, group: GeneratorSet | None = None) -> Cluster:
    """A set of rho mutually tangent packing spheres containing m."""
    rho = rho or len(m)
    group = group or build_group(rho)
    terminal, word = descend(m, rho, group)
    base = base_cluster(rho)
    if -dot(terminal, domain.perspective(rho)) != 0 or terminal not in base:
        raise MembershipError(f"descent of {tuple(m)} ended at {terminal}, not a base plane")
    idx = [group.index(lbl) for lbl in reversed(word)]
    members = tuple(group.apply_word(idx, e) for e in base)
    if tuple(m) not in members:
        raise MembershipError("cluster does not contain the starting vector")
    return Cluster(members, tuple(reversed(word)))


def random_word(group: GeneratorSet, length: int, rng: random.Random) -> list[int]:
    return [rng.randrange(len(group)) for _ in range(length)]


def random_cluster(rho: int, rng: random.Random, length: int = 12, group: GeneratorSet | None = None) -> Cluster:
    group = group or build_group(rho)
    word = random_word(group, length, rng)
    members = tuple(group.apply_word(word, e) for e in base_cluster(rho))
    return Cluster(members, tuple(group.labels[a] for a in word))


# -- verification ----------------------------------------------------------------------


@dataclass
class PackingReport:
    rho: int
    count: int
    pairs: int
    tangent_pairs: int
    violations: int
    first_violation: tuple | None
    negative_curvatures: list[tuple]
    even_parity: list[tuple]
    unit_norm_failures: list[tuple]

    @property
    def ok(self) -> bool:
        return not (self.violations or self.negative_curvatures or self.even_parity or self.unit_norm_failures)

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=list)


def verify_packing(records: Sequence[SphereRecord] | Sequence[Sequence[int]], E: Sequence[int] | None = None) -> PackingReport:
    """Exact pairwise and per-sphere checks on an enumerated set.

    Distinct spheres must have product <= -1 (tangent at -1, disjoint
    below); curvatures must be non-negative integers and ``m.e_rho`` odd.
    """
    vecs = [r.vector if isinstance(r, SphereRecord) else tuple(r) for r in records]
    if not vecs:
        raise ValueError("nothing to verify")
    rho = len(vecs[0])
    E = tuple(E) if E is not None else domain.perspective(rho)
    if len(set(vecs)) != len(vecs):
        raise ValueError("duplicate vectors in the record set")
    try:
        tangent, bad, fi, fj, fv = kernels.pair_scan(np.array(vecs, dtype=np.int64))
    except OverflowError:
        tangent, bad, fi, fj, fv = _kernels_py.pair_scan(np.array(vecs, dtype=object))
    first = (vecs[fi], vecs[fj], fv) if bad else None
    er = lz.basis(rho, rho)
    return PackingReport(
        rho=rho,
        count=len(vecs),
        pairs=len(vecs) * (len(vecs) - 1) // 2,
        tangent_pairs=int(tangent),
        violations=int(bad),
        first_violation=first,
        negative_curvatures=[v for v in vecs if -dot(v, E) < 0],
        even_parity=[v for v in vecs if dot(v, er) % 2 == 0],
        unit_norm_failures=[v for v in vecs if dot(v, v) != 1],
    )


def parity_samples(rho: int, n: int, seed: int = 0, max_length: int = 30) -> tuple[int, list[tuple]]:
    """Images of ``e_rho`` under random words; returns (count, even-parity offenders)."""
    group = build_group(rho)
    rng = random.Random(seed)
    er = lz.basis(rho, rho)
    bad = []
    for _ in range(n):
        v = group.apply_word(random_word(group, rng.randint(1, max_length), rng), er)
        if dot(v, er) % 2 == 0 or dot(v, v) != 1:
            bad.append(v)
    return n, bad


# -- Descartes ----------------------------------------------------------------------------


def gram_inverse(rho: int) -> list[list[Fraction]]:
    """``J^{-1} = (I + 11^t / (2 - rho)) / 2``, checked against J."""
    c = Fraction(1, 2 - rho)
    Ji = [[Fraction(1, 2) * ((1 if i == j else 0) + c) for j in range(rho)] for i in range(rho)]
    J = lz.gram_matrix(rho)
    for i in range(rho):
        for j in range(rho):
            if sum(J[i][k] * Ji[k][j] for k in range(rho)) != (1 if i == j else 0):
                raise ArithmeticError("J times its inverse is not the identity")
    return Ji


@dataclass(frozen=True)
class DescartesReport:
    curvatures: tuple
    quadratic_form: Fraction
    classical: bool | None

    @property
    def ok(self) -> bool:
        return self.quadratic_form == 0 and self.classical is not False


def descartes_check(cluster: Cluster | Sequence[int], E: Sequence[int] | None = None) -> DescartesReport:
    """Evaluate ``k^t J^{-1} k`` for the cluster's curvatures (zero for tangent clusters).

    At rho = 4 the classical ``(sum k)^2 = 2 sum k^2`` is checked as well.
    """
    if isinstance(cluster, Cluster):
        rho = len(cluster.members)
        E = tuple(E) if E is not None else domain.perspective(rho)
        k = cluster.curvatures(E)
    else:
        k = tuple(cluster)
        rho = len(k)
    Ji = gram_inverse(rho)
    val = sum(k[i] * Ji[i][j] * k[j] for i in range(rho) for j in range(rho))
    classical = None
    if rho == 4:
        classical = sum(k) ** 2 == 2 * sum(x * x for x in k)
    return DescartesReport(k, Fraction(val), classical)
