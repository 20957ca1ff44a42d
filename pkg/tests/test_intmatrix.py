import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import divisors_by_minors, fraction_rank
from pendulum_topology.intmatrix import (
    IntegerMatrix,
    elementary_divisors,
    rank_exact,
    rank_modp,
    smith_normal_form,
)


def small_matrices(max_side=5, lo=-4, hi=4):
    return st.integers(1, max_side).flatmap(
        lambda m: st.integers(1, max_side).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def test_sparse_storage_roundtrip():
    A = IntegerMatrix.from_entries(3, 4, [(0, 1, 2), (2, 3, -5), (0, 1, 1)])
    assert A[0, 1] == 3
    assert A.nnz == 2
    assert A.to_dense() == [[0, 3, 0, 0], [0, 0, 0, 0], [0, 0, 0, -5]]
    assert A.transpose().shape == (4, 3)
    with pytest.raises(IndexError):
        A[3, 0]


def test_big_integers_do_not_overflow():
    big = 2 ** 80
    A = IntegerMatrix.from_dense([[big, 0], [0, big * 3]])
    assert elementary_divisors(A) == (big, 3 * big)
    assert (A @ A)[1, 1] == 9 * big * big


@pytest.mark.parametrize("rows, expected", [
    ([[0, 0], [0, 0]], ()),
    ([[2, 0], [0, 3]], (1, 6)),
    # edges of a triangle: d_1 of the hollow triangle on 3 vertices
    ([[-1, -1, 0], [1, 0, -1], [0, 1, 1]], (1, 1)),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
])
def test_smith_examples(rows, expected):
    S = smith_normal_form(IntegerMatrix.from_dense(rows))
    assert S.divisors == expected
    assert S.rank == len(expected)
    assert elementary_divisors(IntegerMatrix.from_dense(rows)) == expected


def _unimodular(M):
    d = round(np.linalg.det(np.array(M.to_dense(), dtype=float)))
    return abs(d) == 1


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_smith_reconstruction(rows):
    A = IntegerMatrix.from_dense(rows)
    S = smith_normal_form(A)
    assert S.U @ A @ S.V == S.D
    # D is diagonal with the divisors on the diagonal
    diag = [S.D[i, i] for i in range(min(A.shape))]
    assert [d for d in diag if d] == list(S.divisors)
    assert S.D.nnz == len(S.divisors)
    assert all(b % a == 0 for a, b in zip(S.divisors, S.divisors[1:]))
    assert _unimodular(S.U) and _unimodular(S.V)


@settings(max_examples=60, deadline=None)
@given(small_matrices(max_side=4, lo=-3, hi=3))
def test_divisors_match_minor_gcds(rows):
    assert elementary_divisors(IntegerMatrix.from_dense(rows)) == divisors_by_minors(rows)


@settings(max_examples=80, deadline=None)
@given(small_matrices(max_side=6))
def test_ranks_agree_with_fraction_oracle(rows):
    A = IntegerMatrix.from_dense(rows)
    r = fraction_rank(rows)
    assert rank_exact(A) == r
    assert rank_modp(A) == r
    assert smith_normal_form(A).rank == r


def test_rank_modp_small_prime_can_undercount():
    # 7 vanishes mod 7 but not over Q; the default prime is large
    A = IntegerMatrix.from_dense([[7]])
    assert rank_modp(A, p=7) == 0
    assert rank_modp(A) == 1
