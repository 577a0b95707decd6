"""Algebraic laws checked on seeded random inputs.  Each law asserts on every
case and returns the number of cases it ran."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy

from sullivan.bases import enumerate_basis, hilbert_count
from sullivan.cohomology import check_naturality, cohomology, differential_matrix
from sullivan.linalg import RationalMatrix, image_membership, kernel_basis, rank
from sullivan.morphism import compose, linear_part, validate_morphism
from sullivan.selfequiv import UnitMonomialSystem, solve_unit_system
from randalg import random_algebra, random_free, random_homogeneous, random_morphism

CASES = 1000


class Pool:
    """Random algebras and validated endomorphisms shared by several laws."""

    def __init__(self, seed: int, n_algebras: int = 60, per_algebra: int = 4):
        rng = random.Random(seed + 1)
        self.algebras = [random_algebra(rng, name=f"p{i}") for i in range(n_algebras)]
        rng = random.Random(seed + 2)
        self.morphisms = [random_morphism(rng, A) for A in self.algebras for _ in range(per_algebra)]


def koszul_sign(rng, cases=CASES) -> int:
    for _ in range(cases):
        F = random_free(rng)
        a, b = random_homogeneous(rng, F), random_homogeneous(rng, F)
        sign = -1 if a.degree() * b.degree() % 2 else 1
        assert a * b == (b * a).scale(sign), (a, b)
    return cases


def leibniz(rng, pool: Pool, cases=CASES) -> int:
    for _ in range(cases):
        A = rng.choice(pool.algebras)
        a, b = random_homogeneous(rng, A.free), random_homogeneous(rng, A.free)
        sign = -1 if a.degree() % 2 else 1
        assert A.d(a * b) == A.d(a) * b + (a * A.d(b)).scale(sign), (A, a, b)
        assert not A.d(A.d(a))
    return cases


def _random_matrix(rng) -> RationalMatrix:
    r, c = rng.randint(1, 7), rng.randint(1, 7)
    density = rng.random()
    return RationalMatrix.from_dense([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < density
                                       else 0 for _ in range(c)] for _ in range(r)])


def rank_nullity(rng, cases=CASES) -> int:
    for i in range(cases):
        M = _random_matrix(rng)
        K = kernel_basis(M)
        rk = rank(M)
        assert rk + len(K) == M.cols
        for v in K:
            assert not any(M.apply(v))
        x = [Fraction(rng.randint(-2, 2)) for _ in range(M.cols)]
        b = M.apply(x)
        w = image_membership(M, b)
        assert w is not None and M.apply(w) == b
        if i % 10 == 0:
            assert rk == sympy.Matrix(M.to_dense()).rank()
    return cases


def image_in_kernel(rng, pool: Pool, cases=CASES) -> int:
    for _ in range(cases):
        A = rng.choice(pool.algebras)
        d, m = rng.randint(1, 16), rng.randint(2, 12)
        assert (differential_matrix(A, d, m) @ differential_matrix(A, d - 1, m)).is_zero()
        H = cohomology(A, d, m)
        assert H.dim == H.cocycle_dim - H.coboundary_dim >= 0
    return cases


def basis_equals_hilbert(rng, cases=CASES) -> int:
    for _ in range(cases):
        F = random_free(rng, rng.randint(1, 6))
        d, m = rng.randint(0, 30), rng.randint(0, 8)
        B = enumerate_basis(F, d, m).monomials
        assert len(B) == hilbert_count(F, d, m)
        assert len(set(B)) == len(B) and B == sorted(B, key=F.term_key)
    return cases


def naturality(rng, pool: Pool, cases=CASES) -> int:
    count = 0
    while count < cases:
        alpha = rng.choice(pool.morphisms)
        degs = sorted({g.degree for g in alpha.source.generators if g.degree >= 3})
        if not degs:
            continue
        s = rng.choice(degs)
        assert alpha.validated
        assert check_naturality(alpha, s - 1), (alpha, s)
        count += 1
    return count


def linear_part_functoriality(rng, pool: Pool, cases=CASES) -> int:
    for _ in range(cases):
        A = rng.choice(pool.algebras)
        a, b = random_morphism(rng, A), random_morphism(rng, A)
        c = compose(a, b)
        assert validate_morphism(A, A, c.images).validated
        la, lb, lc = linear_part(a), linear_part(b), linear_part(c)
        for d in lc.blocks:
            assert lc.block(d) == la.block(d) @ lb.block(d)
    return cases


def _random_system(rng, homogeneous: bool) -> UnitMonomialSystem:
    k = rng.randint(1, 6)
    names = [f"u{i}" for i in range(k)]
    S = UnitMonomialSystem(names)
    for _ in range(rng.randint(0, 4)):
        exps = {u: rng.randint(-3, 3) for u in names if rng.random() < 0.6}
        S.add(exps, sign=1 if homogeneous else rng.choice((1, -1)))
    return S


def unit_solver_closure(rng, cases=CASES) -> int:
    for _ in range(cases):
        sol = solve_unit_system(_random_system(rng, True))
        signs = set(sol.signs)
        assert tuple([1] * len(sol.unknowns)) in signs
        for s, t in itertools.product(signs, repeat=2):
            assert tuple(x * y for x, y in zip(s, t)) in signs
    return cases


def _abs_holds(eq, values) -> bool:
    prod = Fraction(1)
    for x, e in zip(values, eq.exponents):
        prod *= x ** e
    return prod == 1


def unit_solver_brute_force(rng, cases=CASES) -> int:
    for _ in range(cases):
        S = _random_system(rng, False)
        sol = solve_unit_system(S)
        k = len(S.unknowns)
        brute = {v for v in itertools.product((1, -1), repeat=k) if all(eq.holds(v) for eq in S.equations)}
        assert set(sol.signs or []) == brute
        rows = [list(eq.exponents) for eq in S.equations]
        for v in sol.lattice:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
            assert all(_abs_holds(eq, [Fraction(2) ** e for e in v]) for eq in S.equations)
        q_rank = rank(RationalMatrix.from_dense(rows)) if rows else 0
        assert sol.free_rank == k - q_rank
        # small integer solutions are integer combinations of the lattice basis
        if sol.lattice:
            L = RationalMatrix.from_dense([list(col) for col in zip(*sol.lattice)])
            for x in itertools.product(range(-1, 2), repeat=k):
                if all(sum(a * b for a, b in zip(r, x)) == 0 for r in rows):
                    c = image_membership(L, list(x))
                    assert c is not None and all(v.denominator == 1 for v in c)
    return cases


ALL_LAWS = {
    "Koszul sign": (koszul_sign, False),
    "Leibniz rule": (leibniz, True),
    "rank-nullity": (rank_nullity, False),
    "im in ker": (image_in_kernel, True),
    "basis count = Hilbert count": (basis_equals_hilbert, False),
    "naturality of obstructions": (naturality, True),
    "linear part functoriality": (linear_part_functoriality, True),
    "unit solver closure": (unit_solver_closure, False),
    "unit solver vs brute force": (unit_solver_brute_force, False),
}


def run_law(name: str, seed: int, pool: Pool | None = None) -> int:
    fn, needs_pool = ALL_LAWS[name]
    rng = random.Random(seed)
    return fn(rng, pool) if needs_pool else fn(rng)
