"""Exact integer construction of generalized Apollonian hypersphere packings, rho = 4..10."""

from .kernels import BACKEND
from .lorentz import (
    Isometry,
    LatticeError,
    center,
    curvature,
    dot,
    euclid_dist2,
    isotropic_on_plane,
    midpoint,
    phi_map,
    reflect,
    reflection_matrix,
)
from .domain import DomainCase, build_faces, run_case, solve_vertices
from .packing import (
    build_group,
    descartes_check,
    descend,
    enumerate_packing,
    find_cluster,
    height,
    verify_packing,
)
from .coxeter import graph_for, pair_relation
from .render import emit_svg, make_chart, sphere_to_datum

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainCase",
    "Isometry",
    "LatticeError",
    "build_faces",
    "build_group",
    "center",
    "curvature",
    "descartes_check",
    "descend",
    "dot",
    "emit_svg",
    "enumerate_packing",
    "euclid_dist2",
    "find_cluster",
    "graph_for",
    "height",
    "isotropic_on_plane",
    "make_chart",
    "midpoint",
    "pair_relation",
    "phi_map",
    "reflect",
    "reflection_matrix",
    "run_case",
    "solve_vertices",
    "sphere_to_datum",
    "verify_packing",
]
