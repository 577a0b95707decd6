"""Cocycles, coboundaries and cohomology of the filtered pieces ΛV^{≤m}, induced
maps on cohomology, and the obstruction maps b^n : V^n → H^{n+1}(ΛV^{≤n-1})."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bases import DegreeBasis, enumerate_basis
from .differential import SullivanAlgebra
from .graded import Element
from .linalg import RationalMatrix, gauss_jordan


class FiltrationError(ValueError):
    """An element uses generators above the filtration cap."""


class NotACocycle(ValueError):
    pass


def to_vector(basis: DegreeBasis, e: Element) -> dict:
    out = {}
    for m, c in e.terms.items():
        i = basis.index.get(m)
        if i is None:
            free = e.algebra
            if free.mono_degree(m) != basis.degree:
                raise FiltrationError(
                    f"term {free.format_monomial(m)} has degree {free.mono_degree(m)}, expected {basis.degree}")
            raise FiltrationError(f"term {free.format_monomial(m)} uses a generator above degree {basis.cap}")
        out[i] = c
    return out


def to_element(A: SullivanAlgebra, basis: DegreeBasis, vec: dict) -> Element:
    return Element(A.free, {basis.monomials[i]: c for i, c in vec.items() if c})


def _axpy(target: dict, f, row: dict):
    """target -= f * row (in place)."""
    for k, v in row.items():
        nv = target.get(k, 0) - f * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def _d_columns(A: SullivanAlgebra, d: int, m: int) -> tuple[DegreeBasis, DegreeBasis, list]:
    src = enumerate_basis(A, d, m)
    tgt = enumerate_basis(A, d + 1, m)
    cols = []
    for mono in src.monomials:
        col = {}
        for dm, c in A.d_monomial(mono).items():
            col[tgt.index[dm]] = c
        cols.append(col)
    return src, tgt, cols


def differential_matrix(A: SullivanAlgebra, d: int, m: int) -> RationalMatrix:
    """Matrix of ∂ : (ΛV^{≤m})^d → (ΛV^{≤m})^{d+1} in the canonical bases."""
    src, tgt, cols = _d_columns(A, d, m)
    return RationalMatrix.from_columns(len(tgt), [{r: Fraction(v) for r, v in c.items()} for c in cols])


@dataclass
class Coboundaries:
    """Row-reduced image of ∂ landing in ``basis``, with source combinations."""

    basis: DegreeBasis
    source_basis: DegreeBasis | None
    pivots: list
    rows: list
    sources: list
    pivot_index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.pivot_index = {p: i for i, p in enumerate(self.pivots)}

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Split ``vec`` as ∂(pre) + remainder with remainder off the pivots."""
        rem = dict(vec)
        pre: dict = {}
        for k in [k for k in rem if k in self.pivot_index]:
            f = rem.get(k)
            if not f:
                continue
            i = self.pivot_index[k]
            _axpy(rem, f, self.rows[i])
            for s, v in self.sources[i].items():
                nv = pre.get(s, 0) + f * v
                if nv:
                    pre[s] = nv
                else:
                    pre.pop(s, None)
        return rem, pre

    def preimage(self, vec: dict) -> dict | None:
        rem, pre = self.reduce(vec)
        return None if rem else pre


@dataclass
class ComplexStep:
    """∂ : (ΛV^{≤m})^d → (ΛV^{≤m})^{d+1}: kernel (cocycles) and image."""

    degree: int
    cap: int
    source: DegreeBasis
    target: DegreeBasis
    kernel: list
    image: Coboundaries


def complex_step(A: SullivanAlgebra, d: int, m: int) -> ComplexStep:
    cache = A._cache.setdefault("step", {})
    key = (d, m)
    if key in cache:
        return cache[key]
    if d < 0:
        src = DegreeBasis(d, m, [])
        tgt = enumerate_basis(A, 0, m)
        step = ComplexStep(d, m, src, tgt, [], Coboundaries(tgt, src, [], [], []))
        cache[key] = step
        return step
    src, tgt, cols = _d_columns(A, d, m)
    off = len(tgt)
    rows = []
    for j, col in enumerate(cols):
        row = dict(col)
        row[off + j] = 1
        rows.append(row)
    red = gauss_jordan(rows, pivot_limit=off)
    img_rows, img_src = [], []
    for row in red.pivot_rows:
        main, tag = {}, {}
        for k, v in row.items():
            if k < off:
                main[k] = v
            else:
                tag[k - off] = v
        img_rows.append(main)
        img_src.append(tag)
    kernel = [{k - off: v for k, v in row.items()} for row in red.residual_rows]
    kred = gauss_jordan(kernel)
    step = ComplexStep(d, m, src, tgt, kred.pivot_rows, Coboundaries(tgt, src, red.pivots, img_rows, img_src))
    cache[key] = step
    return step


def coboundaries(A: SullivanAlgebra, d: int, m: int) -> Coboundaries:
    """Image of ∂ inside (ΛV^{≤m})^d."""
    return complex_step(A, d - 1, m).image


@dataclass
class CohomologySpace:
    degree: int
    cap: int
    basis: DegreeBasis
    cocycles: list
    coboundaries: Coboundaries
    representatives: list
    rep_pivots: list

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @property
    def cocycle_dim(self) -> int:
        return len(self.cocycles)

    @property
    def coboundary_dim(self) -> int:
        return self.coboundaries.dim

    def classify(self, vec: dict) -> list:
        """Coordinates of the class of a cocycle in the representative basis."""
        rem, _ = self.coboundaries.reduce(vec)
        coords = []
        for p, rep in zip(self.rep_pivots, self.representatives):
            f = rem.get(p, 0)
            coords.append(f)
            if f:
                _axpy(rem, f, rep)
        if rem:
            raise NotACocycle("vector is not a cocycle of this degree")
        return coords

    def classify_element(self, e: Element) -> list:
        return self.classify(to_vector(self.basis, e))

    def is_coboundary(self, vec: dict) -> bool:
        rem, _ = self.coboundaries.reduce(vec)
        return not rem


def cohomology(A: SullivanAlgebra, d: int, m: int) -> CohomologySpace:
    cache = A._cache.setdefault("H", {})
    if (d, m) in cache:
        return cache[(d, m)]
    step = complex_step(A, d, m)
    B = coboundaries(A, d, m)
    remainders = [B.reduce(z)[0] for z in step.kernel]
    red = gauss_jordan([r for r in remainders if r])
    H = CohomologySpace(d, m, step.source, step.kernel, B, red.pivot_rows, red.pivots)
    if H.dim != H.cocycle_dim - H.coboundary_dim:
        raise ArithmeticError(
            f"inconsistent cohomology in degree {d}: dim Z={H.cocycle_dim}, dim B={H.coboundary_dim}, reps={H.dim}")
    cache[(d, m)] = H
    return H


def induced_map_on_H(alpha, d: int, m: int, verify: bool = True) -> RationalMatrix:
    """Matrix of [c] ↦ [α(c)] from H^d(ΛV^{≤m}) to H^d(ΛW^{≤m})."""
    Hs = cohomology(alpha.source, d, m)
    Ht = cohomology(alpha.target, d, m)
    entries = {}
    for j, rep in enumerate(Hs.representatives):
        image = alpha.apply(to_element(alpha.source, Hs.basis, rep))
        for i, c in enumerate(Ht.classify(to_vector(Ht.basis, image))):
            if c:
                entries[(i, j)] = c
    if verify:
        for row in Hs.coboundaries.rows:
            image = alpha.apply(to_element(alpha.source, Hs.basis, row))
            if any(Ht.classify(to_vector(Ht.basis, image))):
                raise ValueError("induced map is not well defined: a coboundary maps to a nonzero class")
    return RationalMatrix(Ht.dim, Hs.dim, entries)


@dataclass
class ObstructionMap:
    degree: int
    generators: list
    cohomology: CohomologySpace
    matrix: RationalMatrix

    def column(self, name: str) -> list:
        j = self.generators.index(name)
        return [self.matrix[(i, j)] for i in range(self.matrix.rows)]

    def class_element(self, name: str, A: SullivanAlgebra) -> Element:
        """A representative of b(name) built from the representative basis."""
        out = A.free.zero()
        H = self.cohomology
        for c, rep in zip(self.column(name), H.representatives):
            if c:
                out = out + to_element(A, H.basis, rep).scale(c)
        return out


def obstruction_b(A: SullivanAlgebra, n: int) -> ObstructionMap:
    """b^n(v) = [∂v] ∈ H^{n+1}(ΛV^{≤n-1}) for the generators v of degree n."""
    gens = A.generators_in_degree(n)
    H = cohomology(A, n + 1, n - 1)
    entries = {}
    for j, g in enumerate(gens):
        for i, c in enumerate(H.classify_element(A.diff[g])):
            if c:
                entries[(i, j)] = c
    return ObstructionMap(n, gens, H, RationalMatrix(H.dim, len(gens), entries))


def same_class(A: SullivanAlgebra, d: int, m: int, a: Element, b: Element) -> bool:
    """Whether two cocycles of (ΛV^{≤m})^d differ by a coboundary."""
    B = coboundaries(A, d, m)
    basis = B.basis
    rem, _ = B.reduce(to_vector(basis, a - b))
    return not rem


def check_naturality(alpha, n: int) -> bool:
    """b'^{n+1} ∘ α̃^{n+1} = H^{n+2}(α_(n)) ∘ b^{n+1} as matrices."""
    from .morphism import linear_part, restrict

    A, W = alpha.source, alpha.target
    try:
        bA = obstruction_b(A, n + 1)
        bW = obstruction_b(W, n + 1)
        lin = linear_part(alpha).block(n + 1)
        low = restrict(alpha, n)
        Hmap = induced_map_on_H(low, n + 2, n)
    except (NotACocycle, FiltrationError, ValueError):
        return False
    return bW.matrix @ lin == Hmap @ bA.matrix
