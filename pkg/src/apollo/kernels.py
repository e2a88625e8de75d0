"""Kernel dispatch: the compiled extension when built, numpy otherwise.

Set ``APOLLO_PURE=1`` to force the numpy versions.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("APOLLO_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "numpy"
ENTRY_LIMIT = _kernels_py.ENTRY_LIMIT


def _c(a):
    return np.ascontiguousarray(a)


def expand(frontier, gens, E, B, H):
    """Images of every frontier row under every generator with ``-B.y <= H``.

    Returns ``(images, parent_row, gen_index, heights)`` ordered by
    (parent row, generator).
    """
    return _impl.expand(_c(frontier), _c(gens), _c(E), _c(B), H)


def _guard(*arrays):
    for a in arrays:
        if a.size and np.abs(a).max() >= ENTRY_LIMIT:
            raise OverflowError("entries too large for int64 kernels")


def products_with(V, w):
    V, w = _c(V), _c(w)
    _guard(V, w)
    return _impl.products_with(V, w)


def pair_scan(V):
    """``(n_tangent, n_bad, first_i, first_j, first_value)`` over distinct pairs."""
    V = _c(V)
    _guard(V)
    return _impl.pair_scan(V)


def thread_count() -> int:
    """Worker cap from ``APOLLO_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("APOLLO_THREADS", "1")))
    except ValueError:
        return 1
