"""Coxeter-graph data from exact pairwise products of reflection normals."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import domain
from . import lorentz as lz
from .lorentz import dot

# q = cos^2(pi/k) for the crystallographic orders
_ORDERS = {Fraction(1, 4): 3, Fraction(1, 2): 4, Fraction(3, 4): 6}


@dataclass(frozen=True)
class Relation:
    kind: str  # orthogonal | order | parallel | ultraparallel | non-crystallographic
    q: Fraction
    order: int | None = None

    @property
    def is_edge(self) -> bool:
        return self.kind != "orthogonal"

    @property
    def label(self) -> str:
        if self.kind == "order":
            return str(self.order)
        if self.kind == "parallel":
            return "inf"
        return str(self.q)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "q": str(self.q)}
        if self.order is not None:
            d["order"] = self.order
        return d


def pair_relation(n: Sequence[int], m: Sequence[int]) -> Relation:
    """Classify the pair of hyperplanes with normals n, m by ``q = cos^2`` of their angle."""
    nn, mm = dot(n, n), dot(m, m)
    if nn <= 0 or mm <= 0:
        raise lz.LatticeError("pair_relation needs spacelike normals")
    q = Fraction(dot(n, m) ** 2, nn * mm)
    if q == 0:
        return Relation("orthogonal", q)
    if q in _ORDERS:
        return Relation("order", q, _ORDERS[q])
    if q == 1:
        return Relation("parallel", q)
    if q > 1:
        return Relation("ultraparallel", q)
    return Relation("non-crystallographic", q)


@dataclass
class CoxeterGraph:
    nodes: list[tuple[str, int]]
    vectors: list[tuple[int, ...]]
    edges: list[tuple[int, int, Relation]]
    notes: list[str]

    def self_products(self) -> tuple[int, ...]:
        return tuple(sp for _, sp in self.nodes)

    def relation(self, a: str, b: str) -> Relation:
        i = [lbl for lbl, _ in self.nodes].index(a)
        j = [lbl for lbl, _ in self.nodes].index(b)
        return pair_relation(self.vectors[i], self.vectors[j])

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"label": lbl, "self_product": sp, "vector": list(v)}
                for (lbl, sp), v in zip(self.nodes, self.vectors)
            ],
            "edges": [
                {"source": self.nodes[i][0], "target": self.nodes[j][0], **rel.to_dict()}
                for i, j, rel in self.edges
            ],
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_dot(self, name: str = "coxeter") -> str:
        out = [f"graph {name} {{"]
        for note in self.notes:
            out.append(f"  // {note}")
        for lbl, sp in self.nodes:
            out.append(f'  "{lbl}" [label="{lbl}\\n{sp}"];')
        for i, j, rel in self.edges:
            a, b = self.nodes[i][0], self.nodes[j][0]
            style = {"parallel": "bold", "ultraparallel": "dashed"}.get(rel.kind, "solid")
            attrs = f'style={style}'
            if not (rel.kind == "order" and rel.order == 3):
                attrs = f'label="{rel.label}", ' + attrs
            out.append(f'  "{a}" -- "{b}" [{attrs}];')
        out.append("}")
        return "\n".join(out) + "\n"


def graph_from_vectors(labels: Sequence[str], vectors: Sequence[Sequence[int]], notes=()) -> CoxeterGraph:
    vecs = [tuple(v) for v in vectors]
    nodes = [(lbl, dot(v, v)) for lbl, v in zip(labels, vecs)]
    edges = []
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            rel = pair_relation(vecs[i], vecs[j])
            if rel.is_edge:
                edges.append((i, j, rel))
    return CoxeterGraph(nodes, vecs, edges, list(notes))


def graph_for(rho: int, faces: Sequence[domain.Face] | None = None) -> CoxeterGraph:
    """Graph of the reflective faces of the fundamental domain, in face order."""
    faces = faces if faces is not None else domain.build_faces(rho)
    refl = [f for f in faces if f.kind == "reflection"]
    return graph_from_vectors([f.label for f in refl], [f.vector for f in refl])


def gamma_prime_w() -> tuple[int, ...]:
    """Normal of the line through the tangency of e_1, e_2, perpendicular to the strip.

    Obtained as ``R_{s_2}(v_12)``; derived, not printed.
    """
    return lz.reflect(lz.viete_vector(2, 4), lz.transposition(1, 2, 4))


def demo_set(name: str) -> CoxeterGraph:
    """Named rho = 4 generating sets: ``apollonian``, ``gamma`` and ``gamma-prime``."""
    v12, v34, v14 = (lz.transposition(i, j, 4) for i, j in ((1, 2), (3, 4), (1, 4)))
    if name == "apollonian":
        return graph_from_vectors([f"s_{i}" for i in range(1, 5)], [lz.viete_vector(i, 4) for i in range(1, 5)])
    if name == "gamma":
        return graph_from_vectors(["v_12", "v_34", "v_14", "s_2"], [v12, v34, v14, lz.viete_vector(2, 4)])
    if name == "gamma-prime":
        return graph_from_vectors(
            ["v_12", "v_34", "v_14", "w"],
            [v12, v34, v14, gamma_prime_w()],
            notes=["w = R_{s_2}(v_12) is derived: it passes through the tangency of e_1, e_2 and is orthogonal to e_3, e_4"],
        )
    raise KeyError(f"unknown generating set {name!r}")


DEMO_SETS = ("apollonian", "gamma", "gamma-prime")
