"""Sullivan algebras: a free graded-commutative algebra plus a degree +1
differential given on generators and extended by the Leibniz rule."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .graded import AlgebraError, Element, FreeAlgebra, Monomial


class SullivanAlgebra:
    """A free algebra ``free`` with ``diff[name]`` for every generator.

    The constructor only checks that the differential is given on every
    generator and lives in the same free algebra.  Use
    :func:`check_d_squared` and :func:`check_minimal_1connected` (or
    :func:`validate_algebra`) for the mathematical invariants.
    """

    def __init__(self, free: FreeAlgebra, diff: Mapping[str, Element], name: str = "A"):
        missing = [g for g in free.names if g not in diff]
        if missing:
            raise AlgebraError(f"no differential given for {', '.join(missing)}")
        extra = [g for g in diff if g not in free.names]
        if extra:
            raise AlgebraError(f"differential given for unknown generator(s) {', '.join(extra)}")
        for g, e in diff.items():
            if e.algebra != free:
                raise AlgebraError(f"differential of {g} lives in another algebra")
        self.free = free
        self.name = name
        self.diff = {g: diff[g] for g in free.names}
        self._diff_by_index = tuple(self.diff[g] for g in free.names)
        self._cache: dict = {}

    @classmethod
    def build(cls, generators: Sequence[tuple[str, int]], diff_words: Mapping[str, list], name="A",
              *, allow_low_degree=False) -> "SullivanAlgebra":
        """Convenience constructor: ``diff_words[g]`` is a list of (coeff, {gen: exp})."""
        free = FreeAlgebra(generators, allow_low_degree=allow_low_degree)
        diff = {}
        for g in free.names:
            terms = {}
            for coeff, exps in diff_words.get(g, []):
                m = free.mono_from_exponents(exps)
                terms[m] = terms.get(m, 0) + coeff
            diff[g] = Element(free, terms)
        return cls(free, diff, name)

    def __eq__(self, other):
        return (
            isinstance(other, SullivanAlgebra)
            and self.name == other.name
            and self.free == other.free
            and self.diff == other.diff
        )

    def __hash__(self):
        return hash((self.name, self.free))

    def __repr__(self):
        return f"SullivanAlgebra({self.name!r}, {len(self.free)} generators)"

    @property
    def generators(self):
        return self.free.generators

    def degree(self, name: str) -> int:
        return self.free.decl(name).degree

    def gen(self, name: str) -> Element:
        return self.free.gen(name)

    def generators_in_degree(self, d: int) -> list[str]:
        return [g.name for g in self.free.generators if g.degree == d]

    def generator_degrees(self) -> list[int]:
        return sorted(set(self.free.degrees))

    # -- derivation ---------------------------------------------------------

    def d_monomial(self, m: Monomial) -> dict:
        """Terms of the differential of a single canonical monomial (cached)."""
        cache = self._cache.setdefault("dmono", {})
        hit = cache.get(m)
        if hit is not None:
            return hit
        free = self.free
        out: dict = {}
        prefix_deg = 0
        n = len(m)
        for i in range(n):
            e = m[i]
            if not e:
                continue
            dg = self._diff_by_index[i]
            if dg.terms:
                left = m[:i] + (e - 1,) + (0,) * (n - i - 1)
                right = (0,) * (i + 1) + m[i + 1:]
                base_sign = -1 if prefix_deg % 2 else 1
                for dm, dc in dg.terms.items():
                    s1, lm = free.mono_mul(left, dm)
                    if not s1:
                        continue
                    s2, full = free.mono_mul(lm, right)
                    if not s2:
                        continue
                    v = dc * e * base_sign * s1 * s2
                    t = out.get(full, 0) + v
                    if t:
                        out[full] = t
                    else:
                        out.pop(full, None)
            prefix_deg += e * free.degrees[i]
        cache[m] = out
        return out

    def d(self, e: Element) -> Element:
        return extend_derivation(self, e)


def extend_derivation(A: SullivanAlgebra, e: Element) -> Element:
    """Apply the differential of ``A`` to an arbitrary element."""
    if e.algebra != A.free:
        raise AlgebraError("element does not belong to this algebra")
    out: dict = {}
    for m, c in e.terms.items():
        for dm, dc in A.d_monomial(m).items():
            s = out.get(dm, 0) + dc * c
            if s:
                out[dm] = s
            else:
                out.pop(dm, None)
    return Element._raw(A.free, out)


@dataclass
class CheckReport:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_d_squared(A: SullivanAlgebra) -> CheckReport:
    """d(d(g)) = 0 on every generator; sufficient for d^2 = 0."""
    failures = []
    for g in A.free.names:
        dd = extend_derivation(A, A.diff[g])
        if dd:
            failures.append((g, dd))
    return CheckReport(not failures, failures)


def check_minimal_1connected(A: SullivanAlgebra) -> CheckReport:
    failures = []
    free = A.free
    for g in free.generators:
        if g.degree < 2:
            failures.append((g.name, f"degree {g.degree} < 2 (not 1-connected)"))
        dg = A.diff[g.name]
        for m in dg.terms:
            if sum(m) < 2:
                failures.append((g.name, f"differential has linear term {free.format_monomial(m)}"))
                break
        ds = dg.degrees()
        if ds and ds != {g.degree + 1}:
            failures.append((g.name, f"differential has degree(s) {sorted(ds)}, expected {g.degree + 1}"))
    return CheckReport(not failures, failures)


def validate_algebra(A: SullivanAlgebra) -> None:
    """Raise AlgebraError unless A is a 1-connected minimal Sullivan algebra."""
    rep = check_minimal_1connected(A)
    if not rep:
        g, msg = rep.failures[0]
        raise AlgebraError(f"{g}: {msg}")
    rep = check_d_squared(A)
    if not rep:
        g, dd = rep.failures[0]
        raise AlgebraError(f"{g}: d(d({g})) = {dd} != 0")


def random_decomposable(A: SullivanAlgebra, rng: random.Random, max_factors: int = 4,
                        max_terms: int = 3) -> Element:
    """Random sum of products of 2..max_factors generators (for spot checks)."""
    free = A.free
    out = free.zero()
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(2, max_factors)
        word = [rng.randrange(len(free)) for _ in range(k)]
        out = out + free.normalize(word, rng.choice([1, -1, 2, -3]))
    return out


def spot_check_d_squared(A: SullivanAlgebra, samples: int = 100, seed: int = 0) -> list[Element]:
    """Return random decomposables whose d(d(.)) fails to vanish."""
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        e = random_decomposable(A, rng)
        if extend_derivation(A, extend_derivation(A, e)):
            bad.append(e)
    return bad
