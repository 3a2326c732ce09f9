"""The bimodule ``Ext^2_A(DA, A)`` and bimodule tops."""

from __future__ import annotations

import random
from typing import Mapping, Sequence

from .algebra import Algebra
from .errors import GlobalDimensionTooHigh, InternalError
from .linalg import Matrix, reduce_by_rref
from .modules import dual_left_multiplication, dual_regular, regular_module
from .resolution import AboveBound, global_dimension, lift_images, minimal_resolution, pullback_matrix


class Bimodule:
    """A finite-dimensional ``A``-``A``-bimodule with a homogeneous basis.

    ``left[i]`` and ``right[i]`` are the matrices of ``m -> b_i m`` and
    ``m -> m b_i`` (acting on row vectors) for every basis element ``b_i``
    of the algebra.  Basis element ``k`` lies in ``e_x M e_y`` for
    ``tags[k] == (x, y)``.
    """

    def __init__(self, algebra: Algebra, labels: Sequence[str], tags: Sequence[tuple[str, str]],
                 left: Mapping[int, Matrix], right: Mapping[int, Matrix]):
        self.algebra = algebra
        self.field = algebra.field
        self.labels = tuple(labels)
        self.tags = tuple(tags)
        self.left = dict(left)
        self.right = dict(right)

    def __repr__(self):
        return f"Bimodule(dim={self.dim}, components={self.pair_components})"

    @classmethod
    def zero(cls, algebra: Algebra) -> "Bimodule":
        z = Matrix.zeros(algebra.field, 0, 0)
        return cls(algebra, (), (), {i: z for i in range(algebra.dim)}, {i: z for i in range(algebra.dim)})

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def pair_components(self) -> dict[tuple[str, str], int]:
        """``dim e_x M e_y`` for the pairs where it is nonzero."""
        out: dict[tuple[str, str], int] = {}
        for t in self.tags:
            out[t] = out.get(t, 0) + 1
        return out

    def left_element(self, elem: Mapping[int, object]) -> Matrix:
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in elem.items():
            if c:
                m = m + self.left[i].scale(c)
        return m

    def right_element(self, elem: Mapping[int, object]) -> Matrix:
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in elem.items():
            if c:
                m = m + self.right[i].scale(c)
        return m

    def axiom_failures(self) -> list[str]:
        """Violated bimodule axioms, checked on all pairs of basis elements."""
        a = self.algebra
        f = self.field
        n = self.dim
        problems = []
        if set(self.left) != set(range(a.dim)) or set(self.right) != set(range(a.dim)):
            return ["actions are not given for every basis element"]
        for i in range(a.dim):
            if self.left[i].shape != (n, n) or self.right[i].shape != (n, n):
                return [f"action of {a.labels[i]} has the wrong shape"]
        ident = Matrix.identity(f, n)
        zero = Matrix.zeros(f, n, n)
        lsum, rsum = zero, zero
        for i in a.idempotents.values():
            lsum = lsum + self.left[i]
            rsum = rsum + self.right[i]
        if lsum != ident or rsum != ident:
            problems.append("idempotents do not act as a partition of unity")
        for k, (x, y) in enumerate(self.tags):
            e_k = ident.row(k)
            if self.left[a.idempotents[x]].vecmul(e_k) != e_k or self.right[a.idempotents[y]].vecmul(e_k) != e_k:
                problems.append(f"basis element {self.labels[k]} is not in e_{x} M e_{y}")
        for i in range(a.dim):
            for j in range(a.dim):
                prod = a.table.get((i, j), {})
                if self.left[j] @ self.left[i] != self.left_element(prod):
                    problems.append(f"left action not multiplicative on ({a.labels[i]}, {a.labels[j]})")
                if self.right[i] @ self.right[j] != self.right_element(prod):
                    problems.append(f"right action not multiplicative on ({a.labels[i]}, {a.labels[j]})")
                if self.left[i] @ self.right[j] != self.right[j] @ self.left[i]:
                    problems.append(f"actions of {a.labels[i]} and {a.labels[j]} do not commute")
        return problems

    def radical(self) -> Matrix:
        """Row basis of ``M rad A + rad A M``."""
        rows = []
        for ar in self.algebra.arrows:
            rows.extend(self.left_element(ar.element).rows)
            rows.extend(self.right_element(ar.element).rows)
        return Matrix(self.field, len(rows), self.dim, rows).row_space()


def bimodule_top(m: Bimodule) -> dict[tuple[str, str], int]:
    """``dim e_x (M / (M rad A + rad A M)) e_y`` for the pairs where it is nonzero."""
    rad = m.radical()
    out = {}
    for pair, count in m.pair_components.items():
        cols = [k for k, t in enumerate(m.tags) if t == pair]
        r = rad.submatrix(range(rad.nrows), cols).rank()
        if count - r:
            out[pair] = count - r
    return out


def ext2_bimodule(a: Algebra, rng: random.Random | None = None) -> Bimodule:
    """``Ext^2_A(DA, A)`` with its natural bimodule structure.

    It is computed as ``Hom(P_2, A) / im Hom(d_2, A)`` from a minimal
    resolution of ``DA``.  The left action postcomposes with left
    multiplication on ``A``; the right action precomposes with lifts of left
    multiplication on ``DA``.  ``rng`` randomizes the lifts; the result must
    not depend on it.
    """
    if isinstance(global_dimension(a, 2), AboveBound):
        raise GlobalDimensionTooHigh("the relation-extension needs global dimension at most two")
    f = a.field
    da = dual_regular(a)
    res = minimal_resolution(da, 3)
    if not res.complete or res.length > 2:
        raise InternalError("DA has projective dimension > 2 although gldim <= 2")
    if res.length < 2:
        return Bimodule.zero(a)
    p1, p2 = res.terms[1], res.terms[2]
    cc = regular_module(a)
    delta = pullback_matrix(res.images[2], p2, p1, cc)
    u, piv = delta.rref()
    width = delta.ncols
    pivset = set(piv)
    free = [c for c in range(width) if c not in pivset]
    n = len(free)

    def induced(mat: Matrix) -> Matrix:
        rows = []
        for c in free:
            v = reduce_by_rref(mat.row(c), u, piv)
            rows.append([v[k] for k in free])
        return Matrix(f, n, n, rows)

    offsets, off = [], 0
    for y in p2.generators:
        offsets.append(off)
        off += cc.dims[y]
    vindex = {x: j for j, x in enumerate(cc.generators)}

    def left_on_hom(i: int) -> Matrix:
        out = Matrix.zeros(f, width, width)
        for k, y in enumerate(p2.generators):
            pos = cc.position[y]
            for r, (_, b) in enumerate(cc.layout[y]):
                for b2, c in a.table.get((i, b), {}).items():
                    col = pos[(vindex[a.tags[b2][0]], b2)]
                    out.rows[offsets[k] + r][offsets[k] + col] = c
        return out

    left = {i: induced(left_on_hom(i)) for i in range(a.dim)}

    def right_generator(elem) -> Matrix:
        lam = dual_left_multiplication(a, da, elem)
        phi2 = lift_images(res, lam, rng)[2]
        return induced(pullback_matrix(phi2, p2, p2, cc))

    idem_right = {x: right_generator({i: f.one}) for x, i in a.idempotents.items()}
    arrow_right = [right_generator(ar.element) for ar in a.arrows]
    right = {}
    for i, ws in enumerate(a.words):
        m = None
        for c, start, word in ws:
            w = idem_right[start]
            for k in word:
                w = w @ arrow_right[k]
            if c != f.one:
                w = w.scale(c)
            m = w if m is None else m + w
        right[i] = m if m is not None else Matrix.zeros(f, n, n)

    # change to a basis adapted to the decomposition into e_x M e_y
    rows, tags = [], []
    for x in a.vertices:
        for y in a.vertices:
            proj = left[a.idempotents[x]] @ right[a.idempotents[y]]
            for r in proj.row_space().rows:
                rows.append(r)
                tags.append((x, y))
    if len(rows) != n:
        raise InternalError("idempotent components do not decompose Ext^2")
    t = Matrix(f, n, n, rows)
    tinv = t.inverse()
    left = {i: t @ m @ tinv for i, m in left.items()}
    right = {i: t @ m @ tinv for i, m in right.items()}
    labels = [f"m{k + 1}" for k in range(n)]
    return Bimodule(a, labels, tags, left, right)
