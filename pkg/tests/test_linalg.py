from fractions import Fraction

import pytest

from sullivan.cohomology import differential_matrix
from sullivan.linalg import (RationalMatrix, gf2_solve, image_membership, integer_kernel, kernel_basis, rank,
                             rref)


def test_rref_identity_and_zero():
    I3 = RationalMatrix.identity(3)
    R, piv, r = rref(I3)
    assert R == I3 and piv == [0, 1, 2] and r == 3
    assert rank(RationalMatrix.zeros(2, 4)) == 0


def test_rref_deterministic_and_idempotent():
    M = RationalMatrix.from_dense([[2, 4, 1], [1, 2, 0], [3, 6, 1]])
    R1, p1, r1 = rref(M)
    R2, p2, r2 = rref(R1)
    assert (R1, p1, r1) == (R2, p2, r2) == rref(M)
    assert r1 == 2


def test_family_matrix_rank(fam1):
    M = differential_matrix(fam1.algebra, 19, 18)
    assert M.cols == 1 and rank(M) == 1


def test_kernel_and_membership():
    M = RationalMatrix.from_dense([[1, 1], [2, 2]])
    K = kernel_basis(M)
    assert len(K) == 1
    assert K[0][0] == -K[0][1] != 0
    assert image_membership(M, [0, 0]) == [0, 0]
    x = image_membership(M, [3, 6])
    assert M.apply(x) == [3, 6]
    assert image_membership(M, [1, 0]) is None
    with pytest.raises(ValueError):
        image_membership(M, [1, 2, 3])


def test_integer_kernel_examples():
    assert integer_kernel([[2, -1]]).basis == [[1, 2]]
    assert integer_kernel([[0, 0, 0]]).rank == 3
    # 36 v1 = 18 v2 = 9 (v1 + v3) = 9 v1 + 5 v2 + 6 v3
    rows = [[36, -18, 0], [27, 0, -9], [27, -5, -6]]
    assert integer_kernel(rows).is_trivial()


def test_integer_kernel_saturated():
    L = integer_kernel([[4, 6, 0], [0, 0, 1]])
    assert L.basis == [[3, -2, 0]]


def test_gf2():
    sol = gf2_solve([([1, 1], 0)], 2)
    assert sorted(sol.solutions()) == [(0, 0), (1, 1)]
    assert gf2_solve([([1], 0), ([1], 1)], 1) is None
    assert gf2_solve([], 3).count() == 8


def test_matrix_ops():
    A = RationalMatrix.from_dense([[1, 2], [3, 4]])
    B = RationalMatrix.from_dense([[0, 1], [1, 0]])
    assert (A @ B).to_dense() == [[2, 1], [4, 3]]
    assert A.transpose().to_dense() == [[1, 3], [2, 4]]
    assert RationalMatrix.from_dense([[Fraction(1, 2), 0]])[(0, 0)] == Fraction(1, 2)
    assert not RationalMatrix.from_dense([[0, 0]]).entries
