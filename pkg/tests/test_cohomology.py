from fractions import Fraction

import pytest
import sympy

from sullivan.bases import hilbert_count
from sullivan.cohomology import (check_naturality, cohomology, differential_matrix, induced_map_on_H,
                                 obstruction_b, same_class, to_element, to_vector)
from sullivan.linalg import RationalMatrix
from sullivan.morphism import CochainMorphism, compose, diagonal, identity
from sullivan.selfequiv import brute_force_diagonal_oracle


def sympy_rank(M: RationalMatrix) -> int:
    if not M.rows or not M.cols:
        return 0
    return sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.Rational(M[(i, j)])).rank()


def test_matrix_at_y2_degree(fam2):
    A = fam2.algebra
    M = differential_matrix(A, 43, 42)
    from sullivan.bases import enumerate_basis
    src = enumerate_basis(A, 43, 42)
    images = {A.free.format_monomial(m): str(A.d(A.free.monomial(m))) for m in src}
    assert images == {"x1^3*y1": "x1^3*x3^3*x4", "x1*x2*y1": "x1*x2*x3^3*x4"}
    assert sympy_rank(M) == 2


def test_matrix_shapes(fam1):
    A = fam1.algebra
    M = differential_matrix(A, 17, 16)
    assert (M.rows, M.cols) == (hilbert_count(A, 18, 16), 0)
    top = differential_matrix(A, 71, 70)
    assert (top.rows, top.cols) == (hilbert_count(A, 72, 70), hilbert_count(A, 71, 70))


def test_low_degree_cohomology_vanishes(fam1):
    assert cohomology(fam1.algebra, 1, 1).dim == 0


# dimensions of H^d(ΛV^{<d}) in the w and z degrees, checked below against
# independent sympy ranks for n = 1; the n = 2 values come from the same
# comparison run once and frozen here
FROZEN_H = {(1, "w"): (55, 30), (1, "z"): (71, 43), (2, "w"): (127, 323), (2, "z"): (143, 467)}


@pytest.mark.parametrize("gen", ["w", "z"])
def test_cohomology_in_w_z_degrees_n1_against_sympy(fam1, gen):
    A = fam1.algebra
    d, h = FROZEN_H[(1, gen)]
    H = cohomology(A, d, d - 1)
    Dd = differential_matrix(A, d, d - 1)
    Dprev = differential_matrix(A, d - 1, d - 1)
    z = Dd.cols - sympy_rank(Dd)
    b = sympy_rank(Dprev)
    assert (H.cocycle_dim, H.coboundary_dim, H.dim) == (z, b, z - b)
    assert H.dim == h


@pytest.mark.parametrize("gen", ["w", "z"])
def test_cohomology_in_w_z_degrees_n2_frozen(fam2, gen):
    d, h = FROZEN_H[(2, gen)]
    assert cohomology(fam2.algebra, d, d - 1).dim == h


def test_explicit_non_bounding_cocycle(fam1):
    A = fam1.algebra
    x1, x2, x3, y1, y2 = (A.gen(g) for g in ("x1", "x2", "x3", "y1", "y2"))
    c = x1 ** 16 * (x2 * y2 - x3 * y1)
    assert c.degree() == 55 and not A.d(c)
    H = cohomology(A, 55, 54)
    assert not H.is_coboundary(to_vector(H.basis, c))


def test_cohomology_invariants(fam1):
    A = fam1.algebra
    for d in (18, 20, 22, 36, 40, 55, 56):
        H = cohomology(A, d, min(d - 1, 21))
        assert H.dim == H.cocycle_dim - H.coboundary_dim
        D = differential_matrix(A, d, H.cap)
        for z in H.cocycles:
            assert not A.d(to_element(A, H.basis, z))
        for rep in H.representatives:
            coords = H.classify(rep)
            assert sorted(set(coords)) in ([0, 1], [1])
        assert D.rows == hilbert_count(A, d + 1, H.cap)


def test_induced_map_scales_class(fam1):
    A = fam1.algebra
    alpha = diagonal(A, {"x1": 5, "x2": 2, "x3": 3, "y1": 24}, cap=18)
    H = cohomology(A, 20, 18)
    c = A.gen("x2") ** 2 * A.gen("x3") ** 2
    before = H.classify_element(c)
    after = H.classify_element(alpha.apply(c))
    assert any(before)
    assert after == [Fraction(36) * x for x in before]
    M = induced_map_on_H(alpha, 20, 18)
    assert M.apply(before) == after


def test_induced_map_identity_and_composition(fam1):
    A = fam1.algebra
    I = induced_map_on_H(identity(A, 18), 20, 18)
    assert I == RationalMatrix.identity(I.rows)
    a = diagonal(A, {"x1": 2, "x2": -1, "x3": 3, "y1": -3}, cap=18)
    b = diagonal(A, {"x1": -1, "x2": 5, "x3": Fraction(1, 2), "y1": Fraction(125, 2)}, cap=18)
    for d in (20, 36):
        assert induced_map_on_H(compose(a, b), d, 18) == induced_map_on_H(a, d, 18) @ induced_map_on_H(b, d, 18)


def test_obstruction_columns(fam1, fam2):
    for fam in (fam1, fam2):
        A = fam.algebra
        a, b = A.gen(fam.a), A.gen(fam.b)
        ob = obstruction_b(A, fam.degrees["y2"])
        rep = ob.class_element("y2", A)
        assert same_class(A, fam.degrees["y2"] + 1, fam.degrees["y2"] - 1, rep, a ** 2 * b ** 2)
        w = A.gen("x1") ** 28
        for k in range(2, fam.n + 1):
            w = w * A.gen(f"x{k}") ** 18
        obw = obstruction_b(A, fam.degrees["w"])
        assert same_class(A, fam.degrees["w"] + 1, fam.degrees["w"] - 1, obw.class_element("w", A), w)
    xs = obstruction_b(fam1.algebra, 6)
    assert xs.generators == ["x3"] and not any(xs.column("x3"))


def test_naturality_for_oracle_maps_all_stages(fam1, fam2):
    for fam in (fam1, fam2):
        A = fam.algebra
        stages = sorted({g.degree for g in A.generators})
        for signs in brute_force_diagonal_oracle(A):
            alpha = diagonal(A, signs)
            for s in stages:
                if s >= 3:
                    assert check_naturality(alpha, s - 1), (fam.n, signs, s)


def test_naturality_identity_and_negative_control(fam1):
    A = fam1.algebra
    assert check_naturality(identity(A), 16)
    bad = CochainMorphism(A, A, {g.name: A.free.gen(g.name, 2 if g.name == "y1" else 1) for g in A.generators})
    assert not check_naturality(bad, 16)
