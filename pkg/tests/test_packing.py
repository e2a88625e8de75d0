import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from apollo import domain, packing
from apollo import lorentz as lz
from apollo.lorentz import dot

# -- group -----------------------------------------------------------------------------


@pytest.mark.parametrize("rho,n", [(4, 4), (5, 5), (6, 6), (7, 7), (8, 8), (9, 11), (10, 13)])
def test_generator_counts(gens, rho, n):
    assert len(gens(rho)) == n


def test_rho5_labels(gens):
    assert gens(5).labels == ("F_1", "F_2", "F_3", "F_4", "F_6")


@pytest.mark.parametrize("rho", range(4, 11))
def test_generators_are_lattice_involutions(gens, rho):
    for g in gens(rho).generators:
        assert g.preserves_form() and g.is_involution() and g.preserves_future()


def test_group_fixes_perspective_only_by_prism(gens):
    g = gens(6)
    E = domain.perspective(6)
    moved = [lbl for M, lbl in zip(g.generators, g.labels) if M(E) != E]
    assert moved == ["F_7"]


def test_heights():
    assert packing.height_base(4) == (4, 0, 4, 4)
    assert packing.height(lz.basis(4, 4)) == 4
    assert packing.height((2, -1, 2, 2)) == 12


def test_window_membership():
    # two curvature-2 circles: e_1 is centred in the cell, its translate is not
    assert packing.in_window(lz.basis(1, 4))
    assert not packing.in_window((2, -1, 2, 2))


# -- enumeration vs the Descartes oracle ---------------------------------------------------


@pytest.mark.parametrize("kmax", [0, 2, 8, 18, 40, 100])
def test_rho4_matches_descartes(enum, kmax):
    got = Counter(enum(4, kmax).curvatures())
    assert got == oracles.descartes_curvatures(kmax)


def test_kmax_zero_is_the_two_walls(enum):
    assert sorted(enum(4, 0).vectors()) == sorted([lz.basis(3, 4), lz.basis(4, 4)])


def test_rho4_brute_force_subset(enum, gens):
    mats = gens(4).as_array().tolist()
    brute = oracles.orbit_by_words(mats, lz.basis(4, 4), 8)
    E = domain.perspective(4)
    want = {v for v in brute if 0 <= -oracles.form(v, E) <= 18 and packing.in_window(v)}
    assert want <= set(enum(4, 18).vectors())


@pytest.mark.parametrize("rho,kmax", [(4, 40), (5, 10), (6, 10), (9, 5)])
def test_records_are_consistent(enum, gens, rho, kmax):
    e = enum(rho, kmax)
    g = gens(rho)
    E = domain.perspective(rho)
    for r in e.records:
        assert dot(r.vector, r.vector) == 1
        assert r.curvature == -dot(r.vector, E)
        assert 0 <= r.curvature <= kmax
        assert packing.in_window(r.vector)
        assert g.apply_word([g.index(lbl) for lbl in r.word], lz.basis(rho, rho)) == r.vector
    assert e.curvatures() == sorted(e.curvatures())
    assert not e.truncated


@pytest.mark.parametrize("rho,kmax,count", [(4, 40, 16), (5, 10, 19), (6, 10, 136)])
def test_counts(enum, rho, kmax, count):
    assert len(enum(rho, kmax).records) == count


def test_deepening_stops_on_stable_counts(enum):
    e = enum(5, 10)
    assert e.retained_counts[-1] == e.retained_counts[-2] == e.retained_counts[-3]
    assert e.heights_tried[0] == packing.window_bound(5, 10)


@pytest.mark.parametrize("rho", [4, 5, 6])
def test_orbit_closure(rho):
    assert packing.closure_defects(rho, 10, packing.window_bound(rho, 10) + 8) == []


def test_enumeration_is_deterministic():
    a, b = packing.enumerate_packing(5, 10), packing.enumerate_packing(5, 10)
    assert a.to_csv() == b.to_csv()


def test_csv_header(enum):
    lines = enum(4, 2).to_csv().splitlines()
    assert lines[0] == "curvature,vector,word_length"
    assert len(lines) == 1 + len(enum(4, 2).records)


def test_interior_perspective():
    e = packing.enumerate_packing(4, 6, E=(4, 0, 1, 1))
    assert not e.windowed and not e.truncated
    assert sorted(e.curvatures()) == [4, 4, 6, 6]


def test_cusp_perspective_is_truncated():
    e = packing.enumerate_packing(4, 2, E=(1, 0, 0, 1), max_records=5000)
    assert e.truncated


def test_enumeration_errors():
    with pytest.raises(ValueError):
        packing.enumerate_packing(4, -1)
    with pytest.raises(lz.NotIsotropic):
        packing.enumerate_packing(4, 4, E=(1, 0, 0, 0))
    with pytest.raises(lz.LatticeError):
        packing.enumerate_packing(3, 4)


def test_exact_fallback_matches_int64(gens):
    orb = packing._Orbit(gens(5), packing.window_base(5))
    H = packing.window_bound(5, 10)
    orb.grow(H)
    exact = packing._Orbit(gens(5), packing.window_base(5))
    exact.exact = True
    exact.grow(H)
    assert exact.order == orb.order


# -- descent and clusters ---------------------------------------------------------------


@pytest.mark.parametrize("rho,kmax", [(4, 40), (5, 10), (7, 10), (9, 5), (10, 5)])
def test_every_record_descends(enum, gens, rho, kmax):
    g = gens(rho)
    base = packing.base_cluster(rho)
    for r in enum(rho, kmax).records[:300]:
        end, _ = packing.descend(r.vector, rho, g)
        assert end in base


@given(st.integers(4, 10), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_find_cluster_random(rho, seed):
    g = packing.build_group(rho)
    rng = random.Random(seed)
    m = g.apply_word(packing.random_word(g, rng.randint(0, 10), rng), lz.basis(rho, rho))
    c = packing.find_cluster(m, rho, g)
    assert c.contains(m)
    assert all(p == -1 for p in c.pairwise_products())
    assert packing.descartes_check(c).ok


def test_find_cluster_rejects_non_members():
    with pytest.raises(lz.LatticeError):
        packing.find_cluster((1, 1, 0, 0))
    with pytest.raises(packing.MembershipError):
        packing.find_cluster((-1, 0, 0, 0))


def test_descent_cap():
    m = packing.build_group(5).apply_word([0, 4, 1, 4, 2, 4], lz.basis(5, 5))
    with pytest.raises(packing.DescentCapExceeded):
        packing.descend(m, cap=0)


def test_random_cluster_is_tangent():
    c = packing.random_cluster(6, random.Random(3), length=20)
    assert len(c.members) == 6 and all(p == -1 for p in c.pairwise_products())


# -- verification ------------------------------------------------------------------------


def test_verify_packing_on_enumeration(enum):
    rep = packing.verify_packing(enum(6, 10).records)
    assert rep.ok and rep.count == 136
    assert rep.pairs == 136 * 135 // 2
    assert '"ok": true' in rep.to_json()


def test_verify_packing_flags_overlap():
    rep = packing.verify_packing([lz.basis(1, 4), lz.basis(2, 4), (1, 1, 0, 0)])
    assert not rep.ok
    assert rep.violations >= 1 and rep.first_violation is not None


def test_verify_packing_flags_bad_norm_and_parity():
    rep = packing.verify_packing([(1, 1, 0, 0), lz.basis(4, 4)])
    assert rep.unit_norm_failures == [(1, 1, 0, 0)]
    assert (1, 1, 0, 0) in rep.even_parity


def test_verify_packing_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        packing.verify_packing([lz.basis(1, 4), lz.basis(1, 4)])
    with pytest.raises(ValueError):
        packing.verify_packing([])


def test_verify_packing_exact_fallback():
    big = 1 << 40
    rep = packing.verify_packing([(big, 0, 0, 0), (0, big, 0, 0)])
    assert rep.violations == 0  # product is -big^2
    huge = 1 << 70
    rep = packing.verify_packing([(huge, 0, 0, 0), (0, 0, 0, 1)])
    assert rep.violations == 0 and rep.tangent_pairs == 0


@pytest.mark.parametrize("rho", range(4, 11))
def test_parity(rho):
    n, bad = packing.parity_samples(rho, 200, seed=rho)
    assert n == 200 and bad == []


# -- Descartes ------------------------------------------------------------------------------


@pytest.mark.parametrize("rho", range(4, 11))
def test_gram_inverse(rho):
    Ji = packing.gram_inverse(rho)
    J = oracles.gram(rho)
    for i in range(rho):
        for j in range(rho):
            assert sum(J[i][k] * Ji[k][j] for k in range(rho)) == (i == j)


def test_descartes_classical_quadruples():
    assert packing.descartes_check((0, 0, 2, 2)).ok
    r = packing.descartes_check((-1, 2, 2, 3))
    assert r.ok and r.classical
    assert not packing.descartes_check((1, 1, 1, 1)).ok


def test_descartes_general_rho():
    rep = packing.descartes_check(packing.Cluster(packing.base_cluster(7), ()))
    assert rep.quadratic_form == Fraction(0) and rep.classical is None


def test_gens_array_dtype(gens):
    assert gens(4).as_array().dtype == np.int64
