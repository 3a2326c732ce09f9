"""Exact dense and sparse linear algebra over a :class:`~relext.field.Field`.

Vectors are rows and matrices act on the right: a map ``V -> W`` is a
``dim V x dim W`` matrix and sends ``v`` to ``v @ A``.

Over Q the row reduction is fraction-free: rows are cleared to integers,
eliminated by cross-multiplication with content removal, and only divided
by their pivots at the very end.  Over F_p plain Gauss-Jordan is used.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .field import Field


def _rref_rational(rows: Iterable[Sequence], ncols: int):
    work: list[list[int]] = []
    for r in rows:
        den = 1
        for x in r:
            if x:
                den = lcm(den, x.denominator)
        ints = [x.numerator * (den // x.denominator) for x in r]
        if any(ints):
            work.append(ints)
    pivots: list[int] = []
    prow = 0
    nrows = len(work)
    for c in range(ncols):
        if prow == nrows:
            break
        sel = None
        for i in range(prow, nrows):
            if work[i][c]:
                if sel is None or abs(work[i][c]) < abs(work[sel][c]):
                    sel = i
        if sel is None:
            continue
        work[prow], work[sel] = work[sel], work[prow]
        prow_vals = work[prow]
        p = prow_vals[c]
        for i in range(nrows):
            if i == prow:
                continue
            f = work[i][c]
            if not f:
                continue
            row = [p * a - f * b for a, b in zip(work[i], prow_vals)]
            g = gcd(*row)
            if g > 1:
                row = [a // g for a in row]
            work[i] = row
        pivots.append(c)
        prow += 1
    out = []
    for r, c in zip(work[:prow], pivots):
        p = r[c]
        out.append([Fraction(a, p) for a in r])
    return out, pivots


def _rref_generic(rows: Iterable[Sequence], ncols: int, field: Field):
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    prow = 0
    nrows = len(work)
    for c in range(ncols):
        if prow == nrows:
            break
        sel = next((i for i in range(prow, nrows) if work[i][c]), None)
        if sel is None:
            continue
        work[prow], work[sel] = work[sel], work[prow]
        inv = field.one / work[prow][c]
        prow_vals = [a * inv for a in work[prow]]
        work[prow] = prow_vals
        for i in range(nrows):
            if i != prow and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], prow_vals)]
        pivots.append(c)
        prow += 1
    return work[:prow], pivots


def rref_rows(rows: Iterable[Sequence], ncols: int, field: Field):
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    if field.characteristic == 0:
        return _rref_rational(rows, ncols)
    return _rref_generic(rows, ncols, field)


class Matrix:
    """An immutable dense matrix with entries in an exact field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            z = field.zero
            rows = [[z] * ncols for _ in range(nrows)]
        else:
            rows = [list(r) for r in rows]
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError(f"rows do not match shape {nrows}x{ncols}")
        self.rows = rows

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        m = cls(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_rows(cls, field: Field, rows, ncols: int | None = None) -> "Matrix":
        rows = [[field(x) for x in r] for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> list:
        return list(self.rows[i])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.field.zero
        out = []
        orows = other.rows
        for r in self.rows:
            acc = [z] * other.ncols
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(other.ncols):
                        b = ok[j]
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(self.field, self.nrows, other.ncols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(self.field, self.nrows, self.ncols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, self.nrows, self.ncols, [[c * a for a in r] for r in self.rows])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows,
                      [list(col) for col in zip(*self.rows)] if self.nrows else
                      [[] for _ in range(self.ncols)])

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def vecmul(self, v: Sequence) -> list:
        """Return ``v @ self`` for a row vector ``v``."""
        z = self.field.zero
        acc = [z] * self.ncols
        for k, a in enumerate(v):
            if a:
                for j, b in enumerate(self.rows[k]):
                    if b:
                        acc[j] = acc[j] + a * b
        return acc

    def rref(self) -> tuple["Matrix", list[int]]:
        rows, piv = rref_rows(self.rows, self.ncols, self.field)
        return Matrix(self.field, len(rows), self.ncols, rows), piv

    def rank(self) -> int:
        return len(rref_rows(self.rows, self.ncols, self.field)[1])

    def row_space(self) -> "Matrix":
        """Basis of the row space, in reduced echelon form."""
        return self.rref()[0]

    def left_kernel(self) -> "Matrix":
        """Basis (reduced echelon) of ``{v : v @ self == 0}``."""
        f = self.field
        rows, piv = rref_rows(self.T.rows, self.nrows, f)
        pivset = set(piv)
        basis = []
        for free in range(self.nrows):
            if free in pivset:
                continue
            v = [f.zero] * self.nrows
            v[free] = f.one
            for r, c in zip(rows, piv):
                v[c] = -r[free]
            basis.append(v)
        rows, _ = rref_rows(basis, self.nrows, f)
        return Matrix(f, len(rows), self.nrows, rows)

    def solve_left(self, b: Sequence):
        """Return some ``v`` with ``v @ self == b``, or ``None`` if none exists."""
        return LeftSolver(self).solve(b)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        aug = [r + e for r, e in zip(self.rows, Matrix.identity(self.field, n).rows)]
        rows, piv = rref_rows(aug, 2 * n, self.field)
        if piv[:n] != list(range(n)) or len(rows) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.field, n, n, [r[n:] for r in rows])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols),
                      [[self.rows[i][j] for j in cols] for i in rows])


class LeftSolver:
    """Solves ``v @ A == b`` for a fixed ``A`` and many right-hand sides.

    One reduction of ``[A | I]`` gives ``E A = R`` with ``R`` in reduced
    echelon form; rows of ``E`` next to zero rows of ``R`` span the left
    kernel.
    """

    def __init__(self, a: Matrix):
        f = a.field
        n, m = a.nrows, a.ncols
        self.field = f
        self.nrows = n
        ident = Matrix.identity(f, n).rows
        rows, piv = rref_rows([list(r) + e for r, e in zip(a.rows, ident)], m + n, f)
        self._image = [(c, r[:m], r[m:]) for r, c in zip(rows, piv) if c < m]
        kern = [r[m:] for r, c in zip(rows, piv) if c >= m]
        self.kernel = Matrix(f, len(kern), n, kern)

    def solve(self, b: Sequence):
        """Some solution of ``v @ A == b``, or ``None``."""
        residual = list(b)
        v = [self.field.zero] * self.nrows
        for c, r, e in self._image:
            y = residual[c]
            if y:
                residual = [x - y * t for x, t in zip(residual, r)]
                v = [x + y * t for x, t in zip(v, e)]
        if any(residual):
            return None
        return v


def hstack(field: Field, nrows: int, blocks: Sequence[Matrix]) -> Matrix:
    ncols = sum(b.ncols for b in blocks)
    rows = [[] for _ in range(nrows)]
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack: row count mismatch")
        for r, br in zip(rows, b.rows):
            r.extend(br)
    return Matrix(field, nrows, ncols, rows)


def vstack(field: Field, ncols: int, blocks: Sequence[Matrix]) -> Matrix:
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack: column count mismatch")
        rows.extend(b.rows)
    return Matrix(field, len(rows), ncols, rows)


def reduce_by_rref(v: Sequence, rref: Matrix, pivots: Sequence[int]) -> list:
    """Reduce ``v`` modulo the row space of a reduced echelon matrix."""
    v = list(v)
    for r, c in zip(rref.rows, pivots):
        a = v[c]
        if a:
            v = [x - a * y for x, y in zip(v, r)]
    return v


class SparseEchelon:
    """Incrementally built echelon basis of sparse vectors ``{index: coef}``.

    Each stored row is monic at its largest index, so reduction eliminates
    large indices first and leaves the smallest ones as normal forms.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: c for k, c in vec.items() if c}
        heap = [-k for k in v]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = -heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c or k not in self.rows:
                continue
            for j, a in self.rows[k].items():
                nv = v.get(j, 0) - c * a
                if nv:
                    if j not in v:
                        heapq.heappush(heap, -j)
                    v[j] = nv
                else:
                    v.pop(j, None)
        return v

    def insert(self, vec: dict) -> dict | None:
        """Add ``vec`` to the span; return its reduced form if it was new."""
        r = self.reduce(vec)
        if not r:
            return None
        piv = max(r)
        inv = self.field.one / r[piv]
        r = {k: c * inv for k, c in r.items()}
        self.rows[piv] = r
        return r

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)
