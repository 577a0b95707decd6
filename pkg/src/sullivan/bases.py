"""Monomial bases of the filtered pieces (ΛV^{≤m})^d."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field
from functools import lru_cache

from .differential import SullivanAlgebra
from .graded import FreeAlgebra, Monomial

DEFAULT_MAX_BASIS = 500_000

_max_basis = contextvars.ContextVar("max_basis", default=DEFAULT_MAX_BASIS)


class BasisTooLarge(RuntimeError):
    pass


@contextlib.contextmanager
def basis_cap(limit: int):
    """Temporarily change the resource cap on basis sizes."""
    token = _max_basis.set(limit)
    try:
        yield
    finally:
        _max_basis.reset(token)


def current_basis_cap() -> int:
    return _max_basis.get()


@dataclass
class DegreeBasis:
    degree: int
    cap: int
    monomials: list
    index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {m: i for i, m in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


def _free(A) -> FreeAlgebra:
    return A.free if isinstance(A, SullivanAlgebra) else A


def _counts(degs: tuple, odd: tuple, d: int) -> list[list[int]]:
    """counts[i][r]: number of monomials of degree r in generators i.. (suffix DP)."""
    k = len(degs)
    table = [[0] * (d + 1) for _ in range(k + 1)]
    table[k][0] = 1
    for i in range(k - 1, -1, -1):
        g, nxt, row = degs[i], table[i + 1], table[i]
        for r in range(d + 1):
            if odd[i]:
                row[r] = nxt[r] + (nxt[r - g] if r >= g else 0)
            else:
                row[r] = nxt[r] + (row[r - g] if r >= g else 0)
    return table


def enumerate_basis(A, d: int, m: int, max_basis: int | None = None) -> DegreeBasis:
    """All canonical monomials of degree ``d`` in generators of degree ≤ ``m``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    free = _free(A)
    cache = None
    if isinstance(A, SullivanAlgebra):
        cache = A._cache.setdefault("basis", {})
        hit = cache.get((d, m))
        if hit is not None:
            return hit
    limit = current_basis_cap() if max_basis is None else max_basis
    active = [g for g in free.generators if g.degree <= m and g.degree > 0]
    # Largest degrees first so the exponent split at the top level is coarse.
    active.sort(key=lambda g: -g.degree)
    degs = tuple(g.degree for g in active)
    odd = tuple(g.odd for g in active)
    counts = _counts(degs, odd, d)
    total = counts[0][d] if active else (1 if d == 0 else 0)
    if total > limit:
        raise BasisTooLarge(f"basis of degree {d} (cap {m}) has {total} monomials > limit {limit}")
    n = len(free)
    out: list[Monomial] = []
    exps = [0] * n
    idx = [g.index for g in active]

    def rec(i: int, r: int):
        if i == len(active):
            if r == 0:
                out.append(tuple(exps))
            return
        g = degs[i]
        top = min(1, r // g) if odd[i] else r // g
        for e in range(top, -1, -1):
            rest = r - e * g
            if counts[i + 1][rest]:
                exps[idx[i]] = e
                rec(i + 1, rest)
        exps[idx[i]] = 0

    if active:
        rec(0, d)
    elif d == 0:
        out.append(free.unit_monomial)
    key = free.term_key
    out.sort(key=key)
    basis = DegreeBasis(d, m, out)
    if cache is not None:
        cache[(d, m)] = basis
    return basis


def hilbert_count(A, d: int, m: int) -> int:
    """Coefficient of t^d in prod (1-t^|g|)^-1 (even g) * (1+t^|g|) (odd g), |g| ≤ m."""
    free = _free(A)
    gens = tuple((g.degree, g.odd) for g in free.generators if 0 < g.degree <= m)
    return _series(gens, d)[d]


@lru_cache(maxsize=256)
def _series(gens: tuple, d: int) -> tuple:
    series = [0] * (d + 1)
    series[0] = 1
    for deg, odd in gens:
        if deg > d:
            continue
        if odd:
            for r in range(d, deg - 1, -1):
                series[r] += series[r - deg]
        else:
            for r in range(deg, d + 1):
                series[r] += series[r - deg]
    return tuple(series)
