"""Polynomials in named parameters with exact rational coefficients.

These serve as the symbolic coefficient ring for morphisms whose scalars are
still unknown.  Parameters come in two kinds: ``p``-parameters are invertible
(nonzero rationals, negative exponents allowed) and ``q``-parameters are plain.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]
PMono = tuple  # tuple of (name, exponent) pairs sorted by name


def _mono_mul(a: PMono, b: PMono) -> PMono:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        s = exps.get(name, 0) + e
        if s:
            exps[name] = s
        else:
            del exps[name]
    return tuple(sorted(exps.items()))


class ParamPoly:
    """Sparse Laurent-free polynomial (negative exponents only on p's)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PMono, Number] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self.terms = clean

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: Number) -> "ParamPoly":
        return cls({(): c})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Number = 1) -> "ParamPoly":
        return cls({tuple(sorted((k, e) for k, e in exps.items() if e)): coeff})

    @staticmethod
    def lift(x) -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        return ParamPoly.const(x)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        other = ParamPoly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        r = ParamPoly()
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = ParamPoly()
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, other):
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        return self + (-ParamPoly.lift(other))

    def __rsub__(self, other):
        return ParamPoly.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamPoly()
            r = ParamPoly()
            r.terms = {m: c * other for m, c in self.terms.items()}
            return r
        if not isinstance(other, ParamPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        r = ParamPoly()
        r.terms = out
        return r

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, ParamPoly) and other.is_monomial():
            return self * other ** -1
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (m, c), = self.terms.items()
            return ParamPoly({tuple((n, e * k) for n, e in m): Fraction(c) ** k})
        result = ParamPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.terms.get((), Fraction(0)))
        return hash(frozenset(self.terms.items()))

    # -- inspection ---------------------------------------------------------

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[str]:
        return {n for m in self.terms for n, _ in m}

    def subs(self, values: Mapping[str, object]) -> "ParamPoly":
        """Substitute parameters by polynomials or numbers."""
        if not values or not (self.variables() & values.keys()):
            return self
        out = ParamPoly()
        for m, c in self.terms.items():
            term = ParamPoly.const(c)
            rest = []
            for name, e in m:
                if name in values:
                    term = term * ParamPoly.lift(values[name]) ** e
                else:
                    rest.append((name, e))
            if rest:
                term = term * ParamPoly({tuple(rest): 1})
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = Fraction(c)
            for name, e in m:
                v *= Fraction(values[name]) ** e
            total += v
        return total

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: t[0]):
            mono = format_param_monomial(m)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def format_param_monomial(m: Iterable[tuple[str, int]], order=None) -> str:
    items = list(m)
    if order is not None:
        rank = {n: i for i, n in enumerate(order)}
        items.sort(key=lambda t: (rank.get(t[0], len(rank)), t[0]))
    if not items:
        return "1"
    return " * ".join(n if e == 1 else f"{n}^{e}" for n, e in items)
