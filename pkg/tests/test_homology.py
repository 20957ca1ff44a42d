import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import betti_oracle
from pendulum_topology.complexes import SimplicialComplex, disk_complex, sphere_complex
from pendulum_topology.errors import (
    DimensionMismatch,
    InvalidComplex,
    NotASubcomplex,
    NotClosedConnected,
    TorsionPresent,
)
from pendulum_topology.homology import (
    INTEGERS,
    RATIONALS,
    ChainComplex,
    HomologyProfile,
    binomial_profile,
    connected_sum,
    euler_characteristic,
    homology,
    kunneth,
    point_profile,
    poincare_dual_check,
    relative_homology,
    sphere_profile,
)
from pendulum_topology.intmatrix import IntegerMatrix

S2xS2 = HomologyProfile.from_betti((1, 0, 2, 0, 1))
S2xS5 = HomologyProfile.from_betti((1, 0, 1, 0, 0, 1, 0, 1))

# 6-vertex projective plane
RP2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
       (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


@pytest.mark.parametrize("n", [0, 1, 2, 3, 7])
def test_sphere_homology(n):
    assert sphere_complex(n).homology().betti == sphere_profile(n).betti


def test_projective_plane_torsion():
    K = SimplicialComplex(6, RP2)
    hZ = K.homology(INTEGERS)
    assert hZ.betti == (1, 0, 0)
    assert hZ.torsion_at(1) == (2,)
    assert hZ.group(1) == "Z_2"
    # over Q the torsion disappears, and mod nothing else changes
    assert K.homology(RATIONALS).betti == (1, 0, 0)


def test_torus_integer_homology():
    # 7-vertex torus
    tris = []
    for i in range(7):
        tris += [(i, (i + 1) % 7, (i + 3) % 7), (i, (i + 2) % 7, (i + 3) % 7)]
    T = SimplicialComplex(7, tris)
    h = T.homology(INTEGERS)
    assert h.betti == (1, 2, 1) and h.is_torsion_free


def test_bad_complex_rejected():
    d1 = IntegerMatrix.from_dense([[1], [1]])
    d2 = IntegerMatrix.from_dense([[1]])
    C = ChainComplex([2, 1, 1], [d1, d2])
    with pytest.raises(InvalidComplex):
        homology(C)


def test_profile_validation():
    with pytest.raises(ValueError):
        HomologyProfile((1, 0), ((), (4, 6)))
    with pytest.raises(ValueError):
        HomologyProfile((1, 0), ((), (1,)))
    with pytest.raises(ValueError):
        HomologyProfile((1, 0), ((), (2,)), RATIONALS)
    p = HomologyProfile((1, 0, 1), ((), (2, 4), ()))
    assert p.rank(5) == 0 and p.rank(-1) == 0 and p.torsion_at(9) == ()
    assert HomologyProfile.from_dict(p.to_dict()) == p
    assert str(p) == "(Z, Z_2 + Z_4, Z)"


def _pair(K, sub_simplices):
    sub = SimplicialComplex(K.n_vertices, sub_simplices)
    return [list(f) for f in sub.faces]


def test_relative_disk_mod_boundary():
    D = disk_complex(2)
    rel = relative_homology(D.chain_complex, _pair(D, [(0, 1), (1, 2), (0, 2)]), check_les=True)
    assert rel.betti == (0, 0, 1)


def test_relative_with_itself_vanishes():
    K = sphere_complex(2)
    assert relative_homology(K.chain_complex, [list(f) for f in K.faces]).betti == (0, 0, 0)


def test_relative_rejects_non_subcomplex():
    D = disk_complex(2)
    with pytest.raises(NotASubcomplex):
        relative_homology(D.chain_complex, [[], [(0, 1)]])


def test_relative_integer_torsion():
    # (D^2, S^1) glued with degree 2 is RP^2; here: relative H of RP^2 modulo a point
    K = SimplicialComplex(6, RP2)
    rel = relative_homology(K.chain_complex, [[(0,)]], coeffs=INTEGERS)
    assert rel.betti == (0, 0, 0) and rel.torsion_at(1) == (2,)


@pytest.mark.parametrize("P, Q, expected", [
    (sphere_profile(2), sphere_profile(2), (1, 0, 2, 0, 1)),
    (sphere_profile(2), sphere_profile(5), (1, 0, 1, 0, 0, 1, 0, 1)),
    (S2xS2, point_profile(), (1, 0, 2, 0, 1)),
])
def test_kunneth(P, Q, expected):
    assert kunneth(P, Q).betti == expected


def test_kunneth_refuses_torsion():
    with pytest.raises(TorsionPresent):
        kunneth(HomologyProfile((1, 0, 0), ((), (2,), ())), sphere_profile(1))


def test_connected_sums():
    assert connected_sum(S2xS5, S2xS5, 7).betti == (1, 0, 2, 0, 0, 2, 0, 1)
    assert connected_sum(S2xS5, sphere_profile(7), 7) == S2xS5
    three = connected_sum(connected_sum(S2xS5, S2xS5, 7), S2xS5, 7)
    assert three.rank(2) == three.rank(5) == 3
    with pytest.raises(DimensionMismatch):
        connected_sum(S2xS5, S2xS2, 7)
    with pytest.raises(NotClosedConnected):
        connected_sum(HomologyProfile.from_betti((2, 0, 1)), sphere_profile(2), 2)


def test_connected_sum_merges_torsion():
    a = HomologyProfile((1, 0, 0, 1), ((), (2,), (), ()))
    b = HomologyProfile((1, 0, 0, 1), ((), (3,), (), ()))
    assert connected_sum(a, b, 3).torsion_at(1) == (6,)


@pytest.mark.parametrize("row", [
    (1, 0, 0, 0, 0, 0, 0, 1),
    (1, 0, 1, 0, 0, 1, 0, 1),
    (1, 0, 2, 0, 0, 2, 0, 1),
])
def test_seven_manifold_rows(row):
    p = HomologyProfile.from_betti(row)
    assert euler_characteristic(p) == 0
    assert poincare_dual_check(p, 7)


def test_euler_and_duality_examples():
    assert euler_characteristic(S2xS2) == 4
    assert euler_characteristic(point_profile()) == 1
    assert poincare_dual_check(S2xS2, 4)
    assert not poincare_dual_check(HomologyProfile.from_betti((1, 1, 0)), 2)
    assert binomial_profile(4).betti == (1, 4, 6, 4, 1)


betti_rows = st.lists(st.integers(0, 3), min_size=1, max_size=4)


@given(betti_rows, betti_rows)
def test_euler_multiplicative(a, b):
    P, Q = HomologyProfile.from_betti(a), HomologyProfile.from_betti(b)
    assert euler_characteristic(kunneth(P, Q)) == euler_characteristic(P) * euler_characteristic(Q)


# --- random complexes against the Fraction oracle -------------------------------


@st.composite
def random_complexes(draw):
    n = draw(st.integers(3, 7))
    simplex = st.lists(st.integers(0, n - 1), min_size=1, max_size=4, unique=True)
    return n, draw(st.lists(simplex, min_size=1, max_size=9))


@settings(max_examples=20, deadline=None)
@given(random_complexes())
def test_random_complexes_against_oracle(data):
    n, simplices = data
    K = SimplicialComplex(n, simplices, vertices=sorted({v for s in simplices for v in s}))
    K.chain_complex.check()
    hQ = K.homology(RATIONALS)
    hZ = K.homology(INTEGERS)
    assert hQ.betti == betti_oracle(simplices)
    # universal coefficients: rational Betti = integer free rank
    assert hQ.betti == hZ.betti
    assert euler_characteristic(hQ) == K.euler_characteristic()


@settings(max_examples=20, deadline=None)
@given(random_complexes(), st.data())
def test_random_pairs_satisfy_exactness(data, draw):
    n, simplices = data
    K = SimplicialComplex(n, simplices, vertices=sorted({v for s in simplices for v in s}))
    mask = draw.draw(st.lists(st.booleans(), min_size=n, max_size=n))
    # check_les raises if the pair sequence cannot be exact
    rel = relative_homology(K.chain_complex, K.vertex_selection(mask), check_les=True)
    A = K.full_subcomplex(mask)
    chi_A = A.euler_characteristic() if A.vertices else 0
    assert euler_characteristic(rel) == K.euler_characteristic() - chi_A
