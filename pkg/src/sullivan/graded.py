"""Free graded-commutative algebras over an exact coefficient ring.

Monomials are stored as dense exponent tuples indexed by generator
declaration order.  Odd generators carry exponent 0 or 1.  Multiplying two
canonical monomials only needs the Koszul sign obtained by counting the
inversions among odd factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .params import ParamPoly

Monomial = tuple  # tuple[int, ...] exponent vector
Coeff = Union[int, Fraction, ParamPoly]


class AlgebraError(ValueError):
    """Raised for malformed generators or operations mixing algebras."""


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    degree: int
    index: int

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class FreeAlgebra:
    """The free graded-commutative algebra on an ordered list of generators."""

    def __init__(self, generators: Sequence[tuple[str, int]], *, allow_low_degree: bool = False):
        decls = []
        seen = set()
        for i, (name, degree) in enumerate(generators):
            if name in seen:
                raise AlgebraError(f"duplicate generator {name!r}")
            if not isinstance(degree, int) or degree < 0:
                raise AlgebraError(f"generator {name!r} has invalid degree {degree!r}")
            if degree < 2 and not allow_low_degree:
                raise AlgebraError(f"generator {name!r} has degree {degree} < 2")
            seen.add(name)
            decls.append(GeneratorDecl(name, degree, i))
        self.generators: tuple[GeneratorDecl, ...] = tuple(decls)
        self.degrees: tuple[int, ...] = tuple(g.degree for g in decls)
        self.names: tuple[str, ...] = tuple(g.name for g in decls)
        self.odd_indices: tuple[int, ...] = tuple(g.index for g in decls if g.odd)
        self._index = {g.name: g.index for g in decls}
        self._key = tuple((g.name, g.degree) for g in decls)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FreeAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        inner = ", ".join(f"{n}:{d}" for n, d in self._key)
        return f"FreeAlgebra({inner})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def decl(self, name: str) -> GeneratorDecl:
        return self.generators[self.index(name)]

    # -- monomials ----------------------------------------------------------

    @property
    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.generators)

    def mono_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees) if e)

    def mono_max_degree(self, m: Monomial) -> int:
        return max((d for e, d in zip(m, self.degrees) if e), default=0)

    def mono_mul(self, a: Monomial, b: Monomial) -> tuple[int, Monomial]:
        """Product of canonical monomials as (sign, monomial); sign 0 means zero."""
        inversions = 0
        seen_b = 0
        for i in self.odd_indices:
            ai, bi = a[i], b[i]
            if ai and bi:
                return 0, a
            if ai:
                inversions += seen_b
            elif bi:
                seen_b += 1
        m = tuple(x + y for x, y in zip(a, b))
        return (-1 if inversions & 1 else 1), m

    def mono_from_exponents(self, exps: Mapping[str, int]) -> Monomial:
        m = [0] * len(self.generators)
        for name, e in exps.items():
            m[self.index(name)] = e
        return tuple(m)

    def format_monomial(self, m: Monomial) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, m) if e]
        return "*".join(parts) if parts else "1"

    def term_key(self, m: Monomial):
        """Canonical term order: by degree, then lexicographic on exponents."""
        return (self.mono_degree(m), tuple(-e for e in m))

    # -- elements -----------------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self, coeff: Coeff = 1) -> "Element":
        return Element(self, {self.unit_monomial: coeff})

    def gen(self, name: str, coeff: Coeff = 1) -> "Element":
        m = [0] * len(self.generators)
        m[self.index(name)] = 1
        return Element(self, {tuple(m): coeff})

    def monomial(self, m: Monomial, coeff: Coeff = 1) -> "Element":
        return Element(self, {tuple(m): coeff})

    def normalize(self, factors: Iterable[Union[str, int]], coeff: Coeff = 1) -> "Element":
        """Canonicalize an unsorted word of generators with its Koszul sign."""
        idx = [self.index(f) if isinstance(f, str) else f for f in factors]
        for i in idx:
            if not 0 <= i < len(self.generators):
                raise AlgebraError(f"unknown generator index {i}")
        odd_seq = [i for i in idx if self.degrees[i] % 2]
        if len(set(odd_seq)) != len(odd_seq):
            return self.zero()
        inversions = sum(
            1 for a in range(len(odd_seq)) for b in range(a + 1, len(odd_seq)) if odd_seq[a] > odd_seq[b]
        )
        m = [0] * len(self.generators)
        for i in idx:
            m[i] += 1
        sign = -1 if inversions & 1 else 1
        return Element(self, {tuple(m): coeff * sign})


def _coeff_str(c) -> str:
    if isinstance(c, ParamPoly):
        if c.is_constant():
            return str(c.constant_value())
        return f"({c})"
    return str(c)


class Element:
    """Finite sum of canonical monomials with nonzero coefficients.

    Treated as immutable.  Coefficients are ints/Fractions or ParamPoly.
    """

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping[Monomial, Coeff] | None = None):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c} if terms else {}
        self._hash = None

    @classmethod
    def _raw(cls, algebra, terms):
        e = cls.__new__(cls)
        e.algebra = algebra
        e.terms = terms
        e._hash = None
        return e

    def _check(self, other: "Element"):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraError("operation mixes elements of different algebras")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            other = self.algebra.one(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = self.algebra.one(other) if other != 0 else self.algebra.zero()
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Coeff) -> "Element":
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        alg = self.algebra
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = alg.mono_mul(m1, m2)
                if not sign:
                    continue
                v = c1 * c2
                s = out.get(m, 0) + (v if sign > 0 else -v)
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Element._raw(alg, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.algebra.one()
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

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra == other.algebra and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- inspection ---------------------------------------------------------

    def degrees(self) -> set[int]:
        return {self.algebra.mono_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for zero."""
        ds = self.degrees()
        if len(ds) > 1:
            raise AlgebraError(f"element is not homogeneous (degrees {sorted(ds)})")
        return next(iter(ds)) if ds else None

    def components(self) -> dict[int, "Element"]:
        comps: dict[int, dict] = {}
        for m, c in self.terms.items():
            comps.setdefault(self.algebra.mono_degree(m), {})[m] = c
        return {d: Element._raw(self.algebra, t) for d, t in comps.items()}

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), 0)

    def sorted_terms(self) -> list[tuple[Monomial, Coeff]]:
        key = self.algebra.term_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def max_generator_degree(self) -> int:
        return max((self.algebra.mono_max_degree(m) for m in self.terms), default=0)

    def map_coefficients(self, f) -> "Element":
        return Element(self.algebra, {m: f(c) for m, c in self.terms.items()})

    def parity_twist(self) -> "Element":
        """Multiply each term by (-1)^degree."""
        alg = self.algebra
        return Element._raw(
            alg, {m: (-c if alg.mono_degree(m) % 2 else c) for m, c in self.terms.items()}
        )

    def __iter__(self) -> Iterator[tuple[Monomial, Coeff]]:
        return iter(self.sorted_terms())

    def __repr__(self):
        return f"Element({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mono = self.algebra.format_monomial(m)
            neg = False
            if isinstance(c, ParamPoly) and not c.is_constant():
                body = _coeff_str(c) + ("" if mono == "1" else "*" + mono)
            else:
                cv = c.constant_value() if isinstance(c, ParamPoly) else Fraction(c)
                neg = cv < 0
                cv = abs(cv)
                if mono == "1":
                    body = str(cv)
                elif cv == 1:
                    body = mono
                else:
                    body = f"{cv}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)
