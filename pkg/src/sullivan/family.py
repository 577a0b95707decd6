"""The infinite family of test algebras indexed by n ≥ 1 and the checks run
against it: absence of low cocycles, vanishing cohomology in the w and z
degrees, and the self-equivalence group."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import cohomology, complex_step, to_element, coboundaries
from .differential import SullivanAlgebra, check_d_squared, check_minimal_1connected
from .graded import AlgebraError

DEFAULT_MAX_N = 3


class FamilyError(ValueError):
    pass


def family_degrees(n: int) -> dict[str, int]:
    degs = {f"x{k}": 2 ** k for k in range(1, n + 2)}
    degs[f"x{n + 2}"] = 2 ** (n + 2) - 2
    degs["y1"] = 5 * 2 ** (n + 1) - 3
    degs["y2"] = 6 * 2 ** (n + 1) - 5
    degs["y3"] = 7 * 2 ** (n + 1) - 7
    degs["w"] = 9 * 2 ** (n + 2) - 17
    degs["z"] = 9 * 2 ** (n + 2) - 1
    return degs


@dataclass
class FamilyInstance:
    n: int
    algebra: SullivanAlgebra
    degrees: dict = field(default_factory=dict)

    @property
    def a(self) -> str:
        return f"x{self.n + 1}"

    @property
    def b(self) -> str:
        return f"x{self.n + 2}"

    def x_names(self) -> list[str]:
        return [f"x{k}" for k in range(1, self.n + 3)]


def build_family(n: int, max_n: int = DEFAULT_MAX_N) -> FamilyInstance:
    if n < 1:
        raise FamilyError(
            "n must be at least 1: for n = 0 the degrees collide (|x1| = |x2| = 2, |y1| = |y2| = |y3| = 7)")
    if n > max_n:
        raise FamilyError(f"n = {n} exceeds the configured bound {max_n}")
    degs = family_degrees(n)
    a, b = f"x{n + 1}", f"x{n + 2}"
    words: dict = {g: [] for g in degs}
    words["y1"] = [(1, {a: 3, b: 1})]
    words["y2"] = [(1, {a: 2, b: 2})]
    words["y3"] = [(1, {a: 1, b: 3})]
    wexp = {"x1": 28}
    for k in range(2, n + 1):
        wexp[f"x{k}"] = 18
    words["w"] = [(1, wexp)]
    e1 = 2 ** n + 7
    z = [
        (1, {"x1": e1, "y1": 1, "y2": 1, b: 3}),
        (-1, {"x1": e1, "y1": 1, "y3": 1, a: 1, b: 2}),
        (1, {"x1": e1, "y2": 1, "y3": 1, a: 2, b: 1}),
    ]
    for k in range(1, n + 2):
        z.append((1, {f"x{k}": 9 * 2 ** (n + 2 - k)}))
    z.append((1, {"x1": 9, b: 9}))
    words["z"] = z
    A = SullivanAlgebra.build(list(degs.items()), words, name=f"family_n{n}")
    for g in degs:
        dg = A.diff[g]
        if dg and dg.degree() != degs[g] + 1:
            raise AlgebraError(f"differential of {g} is not of degree {degs[g] + 1}")
    return FamilyInstance(n, A, degs)


def _as_family(obj) -> FamilyInstance:
    return obj if isinstance(obj, FamilyInstance) else build_family(obj)


@dataclass
class CocycleCheck:
    degree: int
    cap: int
    basis: list
    cocycle_dim: int

    @property
    def ok(self) -> bool:
        return self.cocycle_dim == 0


def check_no_low_cocycles(fam) -> list[CocycleCheck]:
    """Cocycle spaces of (ΛV^{<|y_i|})^{|y_i|} for the three odd y-generators."""
    fam = _as_family(fam)
    A = fam.algebra
    out = []
    for g in ("y1", "y2", "y3"):
        d = fam.degrees[g]
        step = complex_step(A, d, d - 1)
        out.append(CocycleCheck(d, d - 1, [A.free.format_monomial(m) for m in step.source.monomials],
                                len(step.kernel)))
    return out


@dataclass
class BoundingCheck:
    generator: str
    degree: int
    cap: int
    cocycle_dim: int
    coboundary_dim: int
    h_dim: int
    preimages: list  # (cocycle Element, preimage Element, rechecked)

    @property
    def ok(self) -> bool:
        return self.h_dim == 0 and all(r for _, _, r in self.preimages)


def check_cocycles_bound(fam, generator: str) -> BoundingCheck:
    """H^{|g|}(ΛV^{<|g|}) and an explicit ∂-preimage for each cocycle basis vector."""
    fam = _as_family(fam)
    A = fam.algebra
    d = fam.degrees[generator]
    m = d - 1
    H = cohomology(A, d, m)
    B = coboundaries(A, d, m)
    pre = []
    for z in H.cocycles:
        p = B.preimage(z)
        ze = to_element(A, H.basis, z)
        if p is None:
            pre.append((ze, None, False))
            continue
        pe = to_element(A, B.source_basis, p)
        pre.append((ze, pe, A.d(pe) == ze))
    return BoundingCheck(generator, d, m, H.cocycle_dim, H.coboundary_dim, H.dim, pre)


def check_z_degree(fam) -> BoundingCheck:
    return check_cocycles_bound(fam, "z")


def check_w_degree(fam) -> BoundingCheck:
    return check_cocycles_bound(fam, "w")


def check_well_formed(fam) -> tuple:
    fam = _as_family(fam)
    return check_d_squared(fam.algebra), check_minimal_1connected(fam.algebra)
