"""Exact linear algebra over Q, Z and GF(2).

The workhorse is :func:`gauss_jordan`, a sparse Gauss-Jordan elimination on
rows stored as ``{column: Fraction}`` dicts.  Columns are processed in
increasing order; for each column the pivot is the candidate row with the
fewest nonzeros (ties broken by row index).  Columns at or beyond
``pivot_limit`` never become pivots but receive every row operation, which is
how augmented systems and source tracking are handled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

SparseVec = dict  # {index: value}


@dataclass
class Reduction:
    pivot_rows: list  # reduced rows, one per pivot, ordered by pivot column
    pivots: list  # pivot columns
    residual_rows: list  # rows never chosen as pivot (zero below pivot_limit)
    residual_ids: list = field(default_factory=list)
    pivot_ids: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def gauss_jordan(rows: Sequence[SparseVec], pivot_limit: int | None = None) -> Reduction:
    work = [{c: Fraction(v) for c, v in r.items() if v} for r in rows]
    limit = pivot_limit
    colmap: dict[int, set] = {}
    for i, r in enumerate(work):
        for c in r:
            if limit is None or c < limit:
                colmap.setdefault(c, set()).add(i)
    used: set = set()
    pivots: list = []
    pivot_ids: list = []
    for c in sorted(colmap):
        holders = colmap.get(c)
        if not holders:
            continue
        cands = [i for i in holders if i not in used]
        if not cands:
            continue
        p = min(cands, key=lambda i: (len(work[i]), i))
        prow = work[p]
        inv = 1 / prow[c]
        if inv != 1:
            for k in prow:
                prow[k] *= inv
        for i in list(holders):
            if i == p:
                continue
            row = work[i]
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                tracked = limit is None or k < limit
                if nv:
                    row[k] = nv
                    if tracked:
                        colmap.setdefault(k, set()).add(i)
                else:
                    row.pop(k, None)
                    if tracked:
                        colmap[k].discard(i)
        used.add(p)
        pivots.append(c)
        pivot_ids.append(p)
    pivot_rows = [work[i] for i in pivot_ids]
    residual_ids = [i for i in range(len(work)) if i not in used]
    return Reduction(pivot_rows, pivots, [work[i] for i in residual_ids], residual_ids, pivot_ids)


class RationalMatrix:
    """Sparse exact matrix; entries are Fractions (or other exact ring values)."""

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if v:
                self.entries[(r, c)] = v

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(i, j): Fraction(v) for i, row in enumerate(data)
                                for j, v in enumerate(row) if v})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[SparseVec]) -> "RationalMatrix":
        return cls(rows, len(columns), {(r, j): v for j, col in enumerate(columns) for r, v in col.items()})

    @classmethod
    def from_rows(cls, cols: int, rows: Sequence[SparseVec]) -> "RationalMatrix":
        return cls(len(rows), cols, {(i, c): v for i, row in enumerate(rows) for c, v in row.items()})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, rc):
        return self.entries.get(rc, 0)

    def row_dicts(self) -> list[SparseVec]:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column_dicts(self) -> list[SparseVec]:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.row_dicts()
        out: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in cols[k].items():
                s = out.get((r, c), 0) + v * w
                if s:
                    out[(r, c)] = s
                else:
                    out.pop((r, c), None)
        return RationalMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for matrix with {self.cols} columns")
        out = [0] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def __str__(self):
        return "\n".join("[" + " ".join(str(x) for x in row) + "]" for row in self.to_dense())


def rref(M: RationalMatrix) -> tuple[RationalMatrix, list[int], int]:
    red = gauss_jordan(M.row_dicts())
    rows = red.pivot_rows + [dict() for _ in range(M.rows - red.rank)]
    return RationalMatrix.from_rows(M.cols, rows), list(red.pivots), red.rank


def rank(M: RationalMatrix) -> int:
    return gauss_jordan(M.row_dicts()).rank


def kernel_from_reduction(red: Reduction, ncols: int) -> list[SparseVec]:
    pivset = set(red.pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for pc, row in zip(red.pivots, red.pivot_rows):
            x = row.get(f)
            if x:
                v[pc] = -x
        out.append(v)
    return out


def kernel_basis(M: RationalMatrix) -> list[list[Fraction]]:
    """Basis of {x : Mx = 0}; one vector per non-pivot column."""
    red = gauss_jordan(M.row_dicts())
    out = []
    for v in kernel_from_reduction(red, M.cols):
        dense = [Fraction(0)] * M.cols
        for k, x in v.items():
            dense[k] = x
        out.append(dense)
    return out


def solve_many(M: RationalMatrix, rhs: Sequence[Sequence]) -> list[list[Fraction] | None]:
    """Solve M x = b for every b in ``rhs`` with a single elimination."""
    for b in rhs:
        if len(b) != M.rows:
            raise ValueError(f"right-hand side of length {len(b)} for matrix with {M.rows} rows")
    rows = M.row_dicts()
    n = M.cols
    for j, b in enumerate(rhs):
        for i, v in enumerate(b):
            if v:
                rows[i][n + j] = Fraction(v)
    red = gauss_jordan(rows, pivot_limit=n)
    out = []
    for j in range(len(rhs)):
        col = n + j
        if any(r.get(col) for r in red.residual_rows):
            out.append(None)
            continue
        x = [Fraction(0)] * n
        for pc, row in zip(red.pivots, red.pivot_rows):
            x[pc] = row.get(col, Fraction(0))
        out.append(x)
    return out


def image_membership(M: RationalMatrix, v: Sequence) -> list[Fraction] | None:
    """A preimage x with Mx = v, or None when v is not in the image."""
    return solve_many(M, [v])[0]


# -- integer lattices ---------------------------------------------------------


@dataclass
class IntegerLattice:
    basis: list  # list of integer vectors

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_trivial(self) -> bool:
        return not self.basis


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> IntegerLattice:
    """Basis of {x ∈ Z^k : Mx = 0} by unimodular column reduction."""
    rows = [list(map(int, r)) for r in M]
    k = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    for r in rows:
        if len(r) != k:
            raise ValueError("ragged integer matrix")
    acols = [[r[j] for r in rows] for j in range(k)]
    ucols = [[1 if i == j else 0 for i in range(k)] for j in range(k)]
    p = 0
    for i in range(len(rows)):
        while p < k:
            nz = [j for j in range(p, k) if acols[j][i]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(acols[j][i]), j))
            acols[p], acols[j0] = acols[j0], acols[p]
            ucols[p], ucols[j0] = ucols[j0], ucols[p]
            piv = acols[p][i]
            clean = True
            for j in range(p + 1, k):
                a = acols[j][i]
                if a:
                    q = a // piv
                    if q:
                        acols[j] = [x - q * y for x, y in zip(acols[j], acols[p])]
                        ucols[j] = [x - q * y for x, y in zip(ucols[j], ucols[p])]
                    if acols[j][i]:
                        clean = False
            if clean:
                p += 1
                break
    basis = [ucols[j] for j in range(p, k)]
    basis = [_canonical_sign(v) for v in basis]
    return IntegerLattice(basis)


def _canonical_sign(v: list[int]) -> list[int]:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


# -- GF(2) ---------------------------------------------------------------------


@dataclass
class GF2Solution:
    nvars: int
    particular: list  # 0/1 list
    kernel: list  # list of 0/1 lists

    def count(self) -> int:
        return 2 ** len(self.kernel)

    def solutions(self) -> list[tuple[int, ...]]:
        base = list(self.particular)
        out = []
        for mask in range(2 ** len(self.kernel)):
            v = list(base)
            for b, kv in enumerate(self.kernel):
                if mask >> b & 1:
                    v = [x ^ y for x, y in zip(v, kv)]
            out.append(tuple(v))
        return sorted(out)


def gf2_solve(equations: Iterable[tuple[Sequence[int], int]], nvars: int) -> GF2Solution | None:
    """Solve parity constraints sum(a_i x_i) = b over GF(2); None if inconsistent."""
    rows = []
    for coeffs, rhs in equations:
        if len(coeffs) != nvars:
            raise ValueError("coefficient vector has wrong length")
        mask = 0
        for i, a in enumerate(coeffs):
            if a % 2:
                mask |= 1 << i
        rows.append([mask, rhs % 2])
    pivots = []
    r = 0
    for col in range(nvars):
        bit = 1 << col
        sel = next((i for i in range(r, len(rows)) if rows[i][0] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][0] & bit:
                rows[i][0] ^= rows[r][0]
                rows[i][1] ^= rows[r][1]
        pivots.append(col)
        r += 1
    for mask, rhs in rows[r:]:
        if rhs and not mask:
            return None
    particular = [0] * nvars
    for i, col in enumerate(pivots):
        particular[col] = rows[i][1]
    kernel = []
    pivset = set(pivots)
    for f in range(nvars):
        if f in pivset:
            continue
        v = [0] * nvars
        v[f] = 1
        for i, col in enumerate(pivots):
            if rows[i][0] >> f & 1:
                v[col] = 1
        kernel.append(v)
    return GF2Solution(nvars, particular, kernel)
