import os
import subprocess
import sys

import numpy as np
import pytest

from apollo import _kernels_py, kernels, packing


def _frontier(rho, n=200):
    g = packing.build_group(rho)
    orb = packing._Orbit(g, packing.window_base(rho))
    orb.grow(packing.window_bound(rho, 3))
    rows = np.array(orb.order[:n], dtype=np.int64)
    return rows, g.as_array(), np.array(packing.window_base(rho), dtype=np.int64)


def test_compiled_backend_is_built():
    assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("rho", [4, 6, 9])
def test_expand_backends_agree(rho):
    F, G, B = _frontier(rho)
    E = np.zeros(rho, np.int64)
    H = packing.window_bound(rho, 3)
    a = kernels.expand(F, G, E, B, H)
    b = _kernels_py.expand(F, G, E, B, H)
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


@pytest.mark.parametrize("rho", [5, 10])
def test_pair_scan_backends_agree(enum, rho):
    V = np.array(enum(rho, 5).vectors(), dtype=np.int64)
    assert kernels.pair_scan(V) == _kernels_py.pair_scan(V)
    w = np.array(packing.window_base(rho), dtype=np.int64)
    assert np.array_equal(kernels.products_with(V, w), _kernels_py.products_with(V, w))


def test_pair_scan_reports_first_bad_pair():
    V = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]], dtype=np.int64)
    got = kernels.pair_scan(V)
    assert got == _kernels_py.pair_scan(V)
    assert got[1] > 0 and got[2:4] == (0, 2)


def test_expand_overflow_raises():
    big = np.array([[kernels.ENTRY_LIMIT, 0, 0, 1]], dtype=np.int64)
    G = packing.build_group(4).as_array()
    with pytest.raises(OverflowError):
        kernels.expand(big, G, np.zeros(4, np.int64), np.ones(4, np.int64), 10**15)


def test_object_dtype_never_overflows():
    V = np.array([[1 << 70, 0, 0, 0], [0, 0, 0, 1]], dtype=object)
    assert _kernels_py.pair_scan(V)[1] == 0


def test_pure_fallback_selected_by_environment():
    code = "from apollo import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, APOLLO_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_thread_count(monkeypatch):
    monkeypatch.setenv("APOLLO_THREADS", "3")
    assert kernels.thread_count() == 3
    monkeypatch.setenv("APOLLO_THREADS", "junk")
    assert kernels.thread_count() == 1
