"""Pure numpy versions of the compiled kernels, with the same signatures.

Besides int64 input these also accept ``dtype=object`` arrays of Python
ints, which never overflow; the packing engine switches to that mode when
vectors outgrow the int64 limit.
"""

from __future__ import annotations

import numpy as np

ENTRY_LIMIT = 1 << 26


def _dots(V: np.ndarray, w: np.ndarray) -> np.ndarray:
    return 2 * (V @ w) - V.sum(axis=1) * w.sum()


def expand(frontier, gens, E, B, H):
    frontier = np.asarray(frontier)
    gens = np.asarray(gens)
    n, rho = frontier.shape
    g = gens.shape[0]
    # image of row i under generator a lands at position i*g + a
    imgs = np.einsum("arc,nc->nar", gens, frontier).reshape(n * g, rho)
    if imgs.dtype != object and imgs.size and np.abs(imgs).max() >= ENTRY_LIMIT:
        raise OverflowError("orbit vectors too large for int64 kernels")
    hts = -_dots(imgs, np.asarray(B))
    keep = hts <= H
    idx = np.nonzero(keep)[0]
    return imgs[idx], idx // g, idx % g, hts[idx]


def products_with(V, w):
    return _dots(np.asarray(V), np.asarray(w))


def pair_scan(V):
    V = np.asarray(V)
    if V.dtype != object and V.size and np.abs(V).max() >= ENTRY_LIMIT:
        raise OverflowError("entries too large for int64 kernels")
    n = V.shape[0]
    tangent = bad = 0
    first = (-1, -1, 0)
    sums = V.sum(axis=1)
    # row blocks keep memory at O(block * n)
    block = 256
    for start in range(0, n, block):
        stop = min(n, start + block)
        P = 2 * (V[start:stop] @ V.T) - np.outer(sums[start:stop], sums)
        rows = np.arange(start, stop)[:, None]
        upper = np.arange(n)[None, :] > rows
        tangent += int(np.count_nonzero((P == -1) & upper))
        badmask = (P > -1) & upper
        nb = int(np.count_nonzero(badmask))
        if nb and bad == 0:
            r, c = np.argwhere(badmask)[0]
            first = (start + int(r), int(c), int(P[r, c]))
        bad += nb
    return tangent, bad, first[0], first[1], first[2]
