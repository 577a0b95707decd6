"""Cochain algebra morphisms between Sullivan algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .differential import SullivanAlgebra, extend_derivation
from .graded import Element
from .linalg import RationalMatrix, gauss_jordan


class MorphismError(ValueError):
    """Raised when proposed images do not define a cochain morphism.

    ``failures`` lists ``(generator, problem)`` pairs, where the problem is a
    residual Element ``α(∂v) - ∂α(v)`` or a message string.
    """

    def __init__(self, failures):
        self.failures = failures
        g, problem = failures[0]
        super().__init__(f"{g}: {problem}" if isinstance(problem, str) else f"{g}: residual {problem}")


class HomotopyPreconditionError(ValueError):
    pass


class CochainMorphism:
    """Images of the generators of degree ≤ ``cap`` (all generators if None)."""

    def __init__(self, source: SullivanAlgebra, target: SullivanAlgebra, images: Mapping[str, Element],
                 cap: int | None = None, validated: bool = False):
        self.source = source
        self.target = target
        self.cap = cap
        self.images = {g: images[g] for g in self.domain_generators()}
        self.validated = validated
        self._powers: dict = {}

    def domain_generators(self) -> list[str]:
        return [g.name for g in self.source.generators if self.cap is None or g.degree <= self.cap]

    def image(self, name: str) -> Element:
        return self.images[name]

    def _power(self, i: int, e: int) -> Element:
        key = (i, e)
        p = self._powers.get(key)
        if p is None:
            name = self.source.free.names[i]
            if name not in self.images:
                from .cohomology import FiltrationError
                raise FiltrationError(f"generator {name} is outside the domain of this morphism (cap {self.cap})")
            p = self.images[name] if e == 1 else self._power(i, e - 1) * self.images[name]
            self._powers[key] = p
        return p

    def apply(self, e: Element) -> Element:
        if e.algebra != self.source.free:
            raise ValueError("element is not in the source algebra")
        tfree = self.target.free
        out = tfree.zero()
        for m, c in e.terms.items():
            term = tfree.one(c)
            for i, k in enumerate(m):
                if k:
                    term = term * self._power(i, k)
                    if not term:
                        break
            out = out + term
        return out

    __call__ = apply

    def __eq__(self, other):
        return (isinstance(other, CochainMorphism) and self.source == other.source
                and self.target == other.target and self.cap == other.cap and self.images == other.images)

    def __repr__(self):
        body = ", ".join(f"{g} -> {e}" for g, e in self.images.items())
        return f"CochainMorphism({body})"


def morphism_residuals(alpha: CochainMorphism) -> dict[str, Element]:
    """Nonzero α(∂v) - ∂α(v) per generator (coefficients may be symbolic)."""
    out = {}
    for g in alpha.domain_generators():
        r = alpha.apply(alpha.source.diff[g]) - extend_derivation(alpha.target, alpha.images[g])
        if r:
            out[g] = r
    return out


def _shape_failures(source, target, images, cap) -> list:
    failures = []
    for decl in source.generators:
        if cap is not None and decl.degree > cap:
            continue
        img = images.get(decl.name)
        if img is None:
            failures.append((decl.name, "no image given"))
            continue
        if img.algebra != target.free:
            failures.append((decl.name, "image is not in the target algebra"))
            continue
        ds = img.degrees()
        if ds and ds != {decl.degree}:
            failures.append((decl.name, f"image has degree(s) {sorted(ds)}, expected {decl.degree}"))
    return failures


def validate_morphism(source: SullivanAlgebra, target: SullivanAlgebra, images: Mapping[str, Element],
                      cap: int | None = None) -> CochainMorphism:
    failures = _shape_failures(source, target, images, cap)
    if failures:
        raise MorphismError(failures)
    alpha = CochainMorphism(source, target, images, cap)
    res = morphism_residuals(alpha)
    if res:
        raise MorphismError(list(res.items()))
    alpha.validated = True
    return alpha


def identity(A: SullivanAlgebra, cap: int | None = None) -> CochainMorphism:
    images = {g.name: A.gen(g.name) for g in A.generators if cap is None or g.degree <= cap}
    return CochainMorphism(A, A, images, cap, validated=True)


def diagonal(A: SullivanAlgebra, scalars: Mapping[str, object], cap: int | None = None,
             validate: bool = True) -> CochainMorphism:
    images = {g.name: A.free.gen(g.name, scalars.get(g.name, 1))
              for g in A.generators if cap is None or g.degree <= cap}
    if validate:
        return validate_morphism(A, A, images, cap)
    return CochainMorphism(A, A, images, cap)


def compose(alpha: CochainMorphism, beta: CochainMorphism) -> CochainMorphism:
    """α ∘ β (apply β first)."""
    if beta.target != alpha.source:
        raise ValueError("cannot compose: target of beta is not the source of alpha")
    caps = [c for c in (alpha.cap, beta.cap) if c is not None]
    cap = min(caps) if caps else None
    images = {g: alpha.apply(beta.images[g]) for g in beta.domain_generators()
              if cap is None or beta.source.degree(g) <= cap}
    return CochainMorphism(beta.source, alpha.target, images, cap,
                           validated=alpha.validated and beta.validated)


def restrict(alpha: CochainMorphism, m: int) -> CochainMorphism:
    """α_(m) : ΛV^{≤m} → ΛW^{≤m}."""
    if alpha.cap is not None and m > alpha.cap:
        gap = [g.name for g in alpha.source.generators if alpha.cap < g.degree <= m]
        if gap:
            raise ValueError(f"cannot restrict to {m}: morphism not defined on {', '.join(gap)}")
    images = {g: e for g, e in alpha.images.items() if alpha.source.degree(g) <= m}
    for g, e in images.items():
        if e.max_generator_degree() > m:
            raise ValueError(f"morphism is not filtration-preserving at {g}")
    return CochainMorphism(alpha.source, alpha.target, images, m, alpha.validated)


@dataclass
class LinearPart:
    """Per-degree matrices of the induced map on indecomposables."""

    blocks: dict
    source_gens: dict
    target_gens: dict

    def block(self, d: int) -> RationalMatrix:
        if d in self.blocks:
            return self.blocks[d]
        return RationalMatrix(len(self.target_gens.get(d, [])), len(self.source_gens.get(d, [])))


def linear_part(alpha: CochainMorphism) -> LinearPart:
    src, tgt = alpha.source, alpha.target
    sgens: dict = {}
    for g in alpha.domain_generators():
        sgens.setdefault(src.degree(g), []).append(g)
    tgens: dict = {}
    for g in tgt.generators:
        tgens.setdefault(g.degree, []).append(g.name)
    blocks = {}
    for d, names in sgens.items():
        rows = tgens.get(d, [])
        entries = {}
        for j, g in enumerate(names):
            img = alpha.images[g]
            for i, t in enumerate(rows):
                c = img.coefficient(tgt.free.mono_from_exponents({t: 1}))
                if c:
                    entries[(i, j)] = c
        blocks[d] = RationalMatrix(len(rows), len(names), entries)
    return LinearPart(blocks, sgens, tgens)


def is_equivalence(alpha: CochainMorphism) -> bool:
    """Linear part invertible in every degree (hence a quasi-isomorphism)."""
    lp = linear_part(alpha)
    for d, block in lp.blocks.items():
        if block.rows != block.cols:
            return False
        red = gauss_jordan(block.row_dicts())
        if red.rank != block.rows:
            return False
    return True


@dataclass
class HomotopyResult:
    status: str  # "homotopic" | "not-homotopic" | "undetermined"
    corrections: dict = field(default_factory=dict)
    failing: str | None = None
    reason: str = ""

    @property
    def homotopic(self) -> bool:
        return self.status == "homotopic"


def homotopic_at_stage(alpha0: CochainMorphism, alpha1: CochainMorphism, n: int) -> HomotopyResult:
    """Decide α0 ≃ α1 on ΛV^{≤n+1} by the correction criterion, with equal
    linear parts as the necessary condition."""
    from .cohomology import coboundaries, to_element, to_vector

    if alpha0.source != alpha1.source or alpha0.target != alpha1.target:
        raise HomotopyPreconditionError("morphisms have different source or target")
    A, W = alpha0.source, alpha0.target
    for g in A.generators:
        if g.degree <= n:
            if g.name not in alpha0.images or g.name not in alpha1.images:
                raise HomotopyPreconditionError(f"{g.name} outside the morphism domain")
            if alpha0.images[g.name] != alpha1.images[g.name]:
                raise HomotopyPreconditionError(f"morphisms differ on {g.name} of degree {g.degree} <= {n}")
    top = A.generators_in_degree(n + 1)
    for g in top:
        if g not in alpha0.images or g not in alpha1.images:
            raise HomotopyPreconditionError(f"{g} outside the morphism domain")
    l0 = linear_part(restrict(alpha0, n + 1)).block(n + 1)
    l1 = linear_part(restrict(alpha1, n + 1)).block(n + 1)
    if l0 != l1:
        return HomotopyResult("not-homotopic", reason=f"linear parts differ in degree {n + 1}")
    B = coboundaries(W, n + 1, n + 1)
    corrections = {}
    for g in top:
        diff = alpha0.images[g] - alpha1.images[g]
        pre = B.preimage(to_vector(B.basis, diff))
        if pre is None:
            return HomotopyResult("undetermined", failing=g,
                                  reason=f"{g}: difference of images is not a coboundary")
        corrections[g] = to_element(W, B.source_basis, pre)
    return HomotopyResult("homotopic", corrections)
