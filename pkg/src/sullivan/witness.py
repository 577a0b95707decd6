"""Explicit homotopies ΛV → ΛW ⊗ Λ(t, dt).

An element of ΛW ⊗ Λ(t, dt) is stored as two dicts of t-exponent → Element:
``P`` for the terms a⊗t^k and ``Q`` for the terms a⊗t^k dt.  The total
differential is D(a⊗ω) = ∂a⊗ω + (-1)^{|a|} a⊗dω with d(t) = dt.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .differential import SullivanAlgebra, extend_derivation
from .graded import Element, FreeAlgebra
from .morphism import CochainMorphism


class WitnessError(ValueError):
    pass


def _addto(d: dict, k: int, e: Element):
    if not e:
        return
    cur = d.get(k)
    s = e if cur is None else cur + e
    if s:
        d[k] = s
    else:
        d.pop(k, None)


@dataclass
class TElement:
    free: FreeAlgebra
    P: dict
    Q: dict

    @classmethod
    def const(cls, e: Element) -> "TElement":
        return cls(e.algebra, {0: e} if e else {}, {})

    def __add__(self, other: "TElement") -> "TElement":
        P, Q = dict(self.P), dict(self.Q)
        for k, e in other.P.items():
            _addto(P, k, e)
        for k, e in other.Q.items():
            _addto(Q, k, e)
        return TElement(self.free, P, Q)

    def __mul__(self, other: "TElement") -> "TElement":
        P: dict = {}
        Q: dict = {}
        for k, a in self.P.items():
            for l, b in other.P.items():
                _addto(P, k + l, a * b)
            for l, b in other.Q.items():
                _addto(Q, k + l, a * b)
        for k, a in self.Q.items():
            for l, b in other.P.items():
                # moving dt past b costs (-1)^{|b|}
                _addto(Q, k + l, a * b.parity_twist())
        return TElement(self.free, P, Q)

    def __eq__(self, other):
        return isinstance(other, TElement) and self.P == other.P and self.Q == other.Q

    def is_zero(self) -> bool:
        return not self.P and not self.Q

    def evaluate(self, t) -> Element:
        out = self.free.zero()
        for k, e in self.P.items():
            out = out + e.scale(t ** k) if k else out + e
        return out

    def __str__(self):
        parts = [f"({e})*t^{k}" for k, e in sorted(self.P.items())]
        parts += [f"({e})*t^{k}*dt" for k, e in sorted(self.Q.items())]
        return " + ".join(parts) or "0"


def total_differential(W: SullivanAlgebra, x: TElement) -> TElement:
    P: dict = {}
    Q: dict = {}
    for k, a in x.P.items():
        _addto(P, k, extend_derivation(W, a))
        if k:
            _addto(Q, k - 1, a.parity_twist().scale(k))
    for k, a in x.Q.items():
        _addto(Q, k, extend_derivation(W, a))
    return TElement(W.free, P, Q)


@dataclass
class HomotopyWitness:
    source: SullivanAlgebra
    target: SullivanAlgebra
    cap: int | None
    values: dict  # generator -> TElement
    orientation: dict  # endpoint -> "alpha0" / "alpha1"

    def apply(self, e: Element) -> TElement:
        out = TElement(self.target.free, {}, {})
        for m, c in e.terms.items():
            term = TElement.const(self.target.free.one(c))
            for i, k in enumerate(m):
                name = self.source.free.names[i]
                for _ in range(k):
                    term = term * self.values[name]
            out = out + term
        return out


def homotopy_witness(alpha0: CochainMorphism, alpha1: CochainMorphism,
                     corrections: Mapping[str, Element], *, dt_sign: int = 1) -> HomotopyWitness:
    """Φ(v) = α1(v) + ∂(y_v)t − (−1)^{|∂y_v|} y_v dt on corrected generators,
    Φ = α0 elsewhere.  ``dt_sign=-1`` flips the dt term (negative control only)."""
    A, W = alpha0.source, alpha0.target
    if alpha1.source != A or alpha1.target != W:
        raise WitnessError("morphisms have different source or target")
    if set(alpha0.images) != set(alpha1.images):
        raise WitnessError("morphisms have different domains")
    values = {}
    for g, a0 in alpha0.images.items():
        a1 = alpha1.images[g]
        y = corrections.get(g)
        if y is None or not y:
            if a0 != a1:
                raise WitnessError(f"{g}: images differ but no correction was given")
            values[g] = TElement.const(a0)
            continue
        dy = extend_derivation(W, y)
        if a0 != a1 + dy:
            raise WitnessError(f"{g}: correction does not reconcile the images (α0 - α1 - ∂y = {a0 - a1 - dy})")
        deg = A.degree(g)
        sign = -1 if deg % 2 else 1
        P = {}
        _addto(P, 0, a1)
        _addto(P, 1, dy)
        Q = {}
        _addto(Q, 0, y.scale(-sign * dt_sign))
        values[g] = TElement(W.free, P, Q)
    return HomotopyWitness(A, W, alpha0.cap, values, {0: "alpha1", 1: "alpha0"})


def evaluate_witness(phi: HomotopyWitness, endpoint: int) -> CochainMorphism:
    if endpoint not in (0, 1):
        raise ValueError("endpoint must be 0 or 1")
    images = {g: v.evaluate(endpoint) for g, v in phi.values.items()}
    return CochainMorphism(phi.source, phi.target, images, phi.cap)


def witness_is_cochain(phi: HomotopyWitness) -> bool:
    """D∘Φ = Φ∘∂ on every generator in the domain."""
    for g, v in phi.values.items():
        if total_differential(phi.target, v) != phi.apply(phi.source.diff[g]):
            return False
    return True
