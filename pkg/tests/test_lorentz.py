from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from apollo import domain
from apollo import lorentz as lz
from apollo.lorentz import dot


def vec(rho, lo=-20, hi=20):
    return st.lists(st.integers(lo, hi), min_size=rho, max_size=rho).map(tuple)


rhos = st.integers(4, 10)


@st.composite
def vec_pair(draw):
    rho = draw(rhos)
    return draw(vec(rho)), draw(vec(rho))


# -- dot ----------------------------------------------------------------------------------


def test_basis_products():
    assert dot(lz.basis(1, 4), lz.basis(1, 4)) == 1
    assert dot(lz.basis(1, 4), lz.basis(2, 4)) == -1


@pytest.mark.parametrize("rho", range(4, 11))
def test_all_ones_norm(rho):
    D = lz.all_ones(rho)
    assert dot(D, D) == rho * (2 - rho)
    assert dot(D, D) == oracles.form(D, D)


def test_all_ones_norm_rho4_value():
    assert dot((1, 1, 1, 1), (1, 1, 1, 1)) == -8


def test_u_face_norm_rho5():
    assert dot((1, 0, -1, 1, 1), (1, 0, -1, 1, 1)) == 4


def test_dot_rejects_mixed_lengths():
    with pytest.raises(lz.DimensionMismatch):
        dot((1, 0, 0, 0), (1, 0, 0, 0, 0))


@given(vec_pair())
def test_closed_form_matches_gram(pair):
    u, v = pair
    assert dot(u, v) == oracles.form(u, v) == lz.dot_gram(u, v)
    assert dot(u, v) == dot(v, u)


@given(rhos.flatmap(lambda r: st.tuples(vec(r), vec(r), vec(r), st.integers(-5, 5))))
def test_bilinear(args):
    u, v, w, c = args
    assert dot(lz.add(u, lz.scale(c, v)), w) == dot(u, w) + c * dot(v, w)


@given(rhos.flatmap(lambda r: st.tuples(st.just(r), vec(r), st.integers(1, r))))
def test_basis_product_identity(args):
    rho, x, k = args
    assert dot(lz.basis(k, rho), x) == 2 * x[k - 1] - sum(x)


@given(rhos.flatmap(lambda r: st.tuples(st.just(r), vec(r))))
def test_u_face_identity_and_parity(args):
    rho, x = args
    for i, j in ((1, rho - 2), (2, 1)):
        u = lz.add(lz.transposition(i, j, rho), domain.perspective(rho))
        val = dot(u, x)
        assert val == 2 * x[i - 1] - 2 * x[j - 1] + 2 * x[rho - 2] + 2 * x[rho - 1] - 2 * sum(x)
        assert val % 2 == 0


@pytest.mark.parametrize("rho", range(4, 11))
def test_gram_eigenvalues(rho):
    J = lz.gram_matrix(rho)
    assert [sum(r) for r in J] == [2 - rho] * rho
    z = [1, -1] + [0] * (rho - 2)
    assert [sum(a * b for a, b in zip(r, z)) for r in J] == [2 * x for x in z]


# -- reflect -------------------------------------------------------------------------------


def test_reflect_viete_rho4():
    y = lz.reflect((1, -1, 1, 1), (0, 1, 0, 0))
    assert y == (2, -1, 2, 2)
    assert dot(y, y) == 1


def test_reflect_normal_is_negated():
    n = (1, -1, 1, 1)
    assert lz.reflect(n, n) == (-1, 1, -1, -1)


def test_transposition_swaps_coordinates():
    assert lz.reflect(lz.transposition(4, 5, 5), lz.basis(4, 5)) == lz.basis(5, 5)


def test_reflect_rejects_non_spacelike():
    with pytest.raises(lz.LatticeError):
        lz.reflect((1, 1, 1, 1), (1, 0, 0, 0))
    with pytest.raises(lz.LatticeError):
        lz.reflect((0, 0, 1, 1), (1, 0, 0, 0))


def test_reflect_can_leave_the_lattice():
    y = lz.reflect(lz.viete_vector(1, 6), lz.basis(1, 6))
    assert any(isinstance(c, Fraction) for c in y)


@given(rhos.flatmap(lambda r: st.tuples(vec(r, -6, 6), vec(r), vec(r))))
@settings(max_examples=60)
def test_reflect_is_isometric_involution(args):
    n, x, y = args
    if dot(n, n) <= 0:
        return
    rx, ry = lz.reflect(n, x), lz.reflect(n, y)
    assert dot(rx, ry) == dot(x, y)
    assert lz.reflect(n, rx) == tuple(x)


# -- reflection matrices ------------------------------------------------------------------------


def test_base_reflection_integral_rho4():
    M = lz.reflection_matrix(lz.basis(4, 4))
    assert M.preserves_form() and M.is_involution() and M.preserves_future()


@pytest.mark.parametrize("rho", range(4, 11))
def test_u_reflection_always_integral(rho):
    u = lz.add(lz.transposition(1, 7 if rho >= 9 else rho - 2, rho), domain.perspective(rho))
    M = lz.reflection_matrix(u)
    assert M.preserves_form() and M.is_involution()


def test_u_reflection_rho9_example():
    u = lz.add(lz.transposition(1, 7, 9), lz.add(lz.basis(8, 9), lz.basis(9, 9)))
    assert lz.reflection_matrix(u).preserves_form()


@pytest.mark.parametrize("rho", [4, 5])
def test_viete_integral_for_small_rho(rho):
    for i in range(1, rho + 1):
        assert lz.reflection_matrix(lz.viete_vector(i, rho)).preserves_form()


@pytest.mark.parametrize("rho", range(6, 11))
def test_viete_not_integral_from_rho6(rho):
    s = lz.viete_vector(3, rho)
    assert all(dot(s, lz.basis(j, rho)) == 0 for j in range(1, rho + 1) if j != 3)
    with pytest.raises(lz.NonIntegral):
        lz.reflection_matrix(s)


def test_isometry_composition_and_word():
    a = lz.reflection_matrix(lz.transposition(1, 2, 4), "a")
    b = lz.reflection_matrix(lz.transposition(2, 3, 4), "b")
    ab = a @ b
    assert ab.word == ("b", "a")
    x = (3, -1, 4, 1)
    assert ab(x) == a(b(x))
    assert ab.preserves_form() and not ab.is_involution()


# -- phi -----------------------------------------------------------------------------------------


P1_9 = (1, 1, 1, 1, 0, -1, -1, 1, 1)
E9 = (0,) * 7 + (1, 1)


def test_phi_fixes_its_centre_and_infinity():
    assert lz.phi_map(P1_9, E9, P1_9) == P1_9
    assert lz.phi_map(P1_9, E9, E9) == E9


def test_phi_rho9_is_lattice_isometry():
    M = lz.phi_matrix(P1_9, E9)
    assert M.preserves_form() and M.is_involution() and M.preserves_future()


@given(vec(9), vec(9))
@settings(max_examples=40)
def test_phi_preserves_form(x, y):
    fx, fy = lz.phi_map(P1_9, E9, x), lz.phi_map(P1_9, E9, y)
    assert dot(fx, fy) == dot(x, y)
    assert lz.phi_map(P1_9, E9, fx) == x


def test_phi_errors():
    with pytest.raises(lz.NotIsotropic):
        lz.phi_map((1, 0, 0, 0, 0, 0, 0, 0, 0), E9, E9)
    with pytest.raises(lz.LatticeError):
        lz.phi_map(E9, E9, P1_9)


# -- curvature, centre, distance ---------------------------------------------------------------


def test_curvature_examples():
    assert lz.curvature(lz.basis(9, 9), E9) == 0
    assert lz.curvature(lz.basis(1, 4), (0, 0, 1, 1)) == 2
    assert lz.curvature((2, -1, 2, 2), (0, 0, 1, 1)) == 2


def test_curvature_needs_square_norm():
    with pytest.raises(lz.LatticeError):
        lz.curvature((1, 0, 0, -1, 1), (0, 0, 0, 1, 1))  # norm 5
    v, E = (1, 0, 0, -1, 1), (0, 0, 0, 1, 1)
    assert lz.curvature_squared(v, E) == Fraction(dot(v, E) ** 2, dot(v, v))
    with pytest.raises(lz.LatticeError):
        lz.curvature((1, 1, 1, 1), (0, 0, 1, 1))


def test_center_examples():
    assert lz.center(lz.basis(1, 4), (0, 0, 1, 1)) == (4, 0, 1, 1)
    assert lz.center(lz.basis(1, 5), (0, 0, 0, 1, 1)) == (4, 0, 0, 1, 1)
    with pytest.raises(lz.CurvatureZero):
        lz.center(lz.basis(9, 9), E9)


def test_center_is_isotropic():
    c = lz.center((2, -1, 2, 2), (0, 0, 1, 1))
    assert dot(c, c) == 0


def test_euclid_dist2():
    E = (0, 0, 0, 1, 1)
    A = (1, 0, 0, 0, 1)
    B = lz.reflect(lz.transposition(4, 5, 5), A)
    assert B == (1, 0, 0, 1, 0)
    # tangency points of e_1 with the two slab walls: the diameter of e_1 (radius 1/2)
    assert lz.euclid_dist2(A, B, E) == 1
    assert lz.euclid_dist2(A, A, E) == 0
    assert lz.euclid_dist2(A, B, lz.scale(2, E)) == Fraction(1, 4)


@given(st.integers(0, 10**6))
@settings(max_examples=30)
def test_euclid_dist2_symmetric(seed):
    import random

    from apollo import packing

    rng = random.Random(seed)
    g = packing.build_group(5)
    A = g.apply_word(packing.random_word(g, 6, rng), (1, 0, 0, 0, 1))
    B = g.apply_word(packing.random_word(g, 6, rng), (1, 0, 0, 0, 1))
    E = (0, 0, 0, 1, 1)
    if dot(A, E) and dot(B, E):
        assert lz.euclid_dist2(A, B, E) == lz.euclid_dist2(B, A, E) >= 0


def test_euclid_dist2_errors():
    with pytest.raises(lz.NotIsotropic):
        lz.euclid_dist2((1, 0, 0, 0, 0), (1, 0, 0, 0, 1), (0, 0, 0, 1, 1))
    with pytest.raises(lz.LatticeError):
        lz.euclid_dist2((0, 0, 0, 1, 1), (1, 0, 0, 0, 1), (0, 0, 0, 1, 1))


# -- isotropic solving -------------------------------------------------------------------------------


def _faces(rho):
    return [f.vector for f in domain.build_faces(rho)]


def test_isotropic_on_plane_rho9_q4():
    F = _faces(9)
    walls = [F[j - 1] for j in range(1, 8) if j != 4] + [F[7]]
    span = [lz.basis(k, 9) for k in range(1, 10)]
    assert lz.isotropic_on_plane(span, walls, E9) == (16, 16, 16, 16, -12, -12, -12, 19, 19)


def test_isotropic_on_plane_rho5_tangency():
    F = _faces(5)
    walls = [F[1], F[2], F[4]]  # omit (1), keep the base e_5
    span = [lz.basis(k, 5) for k in range(1, 6)]
    Q = lz.isotropic_on_plane(span, walls, (0, 0, 0, 1, 1))
    assert Q == (1, 0, 0, 0, 1)
    assert dot(Q, Q) == 0


def test_isotropic_on_plane_errors():
    span = [lz.basis(k, 5) for k in range(1, 6)]
    E = (0, 0, 0, 1, 1)
    with pytest.raises(lz.DegenerateSolve):
        lz.isotropic_on_plane(span, [lz.transposition(1, 2, 5)], E)
    with pytest.raises(lz.NotIsotropic):
        F = _faces(5)
        lz.isotropic_on_plane(span, [F[1], F[2], F[4]], (1, 0, 0, 0, 0))


def test_midpoint_examples():
    Q9, _ = domain.solve_vertices(9)
    P = lz.midpoint(Q9[3], Q9[4], E9)
    assert P == P1_9
    assert dot(P, P) == 0
    assert lz.euclid_dist2(P, Q9[3], E9) == lz.euclid_dist2(P, Q9[4], E9)
    Q10, _ = domain.solve_vertices(10)
    assert lz.midpoint(Q10[3], Q10[5], domain.perspective(10)) == (1, 1, 1, 1, 0, 0, -1, -1, 1, 1)


def test_midpoint_rejects_infinity():
    with pytest.raises(lz.LatticeError):
        lz.midpoint(E9, P1_9, E9)


# -- normalisation and text ------------------------------------------------------------------------


def test_primitive_and_future_ray():
    assert lz.clear_denominators((Fraction(1, 2), Fraction(3, 4), 0)) == (2, 3, 0)
    assert lz.future_ray((-2, -4, 0, 0)) == (1, 2, 0, 0)
    assert lz.same_ray((2, 4, 0, 0), (1, 2, 0, 0))
    with pytest.raises(lz.LatticeError):
        lz.clear_denominators((0, 0))


@given(rhos.flatmap(vec))
def test_vector_text_round_trip(v):
    assert lz.parse_vector(lz.format_vector(v)) == v


def test_parse_vector_errors():
    with pytest.raises(lz.LatticeError):
        lz.parse_vector("1,2,x,4")
    with pytest.raises(lz.LatticeError):
        lz.parse_vector("1,2,3")
    assert lz.parse_vector("(16, 16, -12, 19)") == (16, 16, -12, 19)


def test_check_rho_bounds():
    for bad in (3, 11):
        with pytest.raises(lz.LatticeError):
            lz.check_rho(bad)
