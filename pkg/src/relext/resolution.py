"""Minimal projective resolutions, Ext dimensions and chain-map lifting."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import Algebra
from .errors import InternalError, NotAModuleMap, ZeroModule
from .linalg import LeftSolver, Matrix
from .modules import (FreeModule, ModuleMap, Representation, dual, map_from_generators,
                      simple, subrepresentation)


@dataclass(frozen=True)
class AboveBound:
    """Marker for a dimension that exceeds the bound it was computed with."""

    bound: int

    def __str__(self):
        return f"> {self.bound}"


@dataclass(eq=False)
class Resolution:
    """A minimal projective resolution ``... -> P_1 -> P_0 -> M -> 0``.

    ``images[0][j]`` is the image in ``M`` of the ``j``-th generator of
    ``P_0``; for ``i >= 1``, ``images[i][j]`` is the image of the ``j``-th
    generator of ``P_i`` in the coordinates of ``P_{i-1}``.  ``complete`` is
    false when the resolution was cut off at the requested degree while the
    next syzygy was still nonzero.
    """

    module: Representation
    terms: list[FreeModule]
    images: list[list[list]]
    complete: bool
    _solvers: dict = dc_field(default_factory=dict, repr=False)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term_vertices(self, i: int) -> tuple[str, ...]:
        return self.terms[i].generators if 0 <= i < len(self.terms) else ()

    def multiplicities(self, i: int) -> Counter:
        return Counter(self.term_vertices(i))

    def augmentation(self) -> ModuleMap:
        return map_from_generators(self.terms[0], self.module, self.images[0])

    def differential(self, i: int) -> ModuleMap:
        """``d_i: P_i -> P_{i-1}`` for ``i >= 1``."""
        return map_from_generators(self.terms[i], self.terms[i - 1], self.images[i])

    def solver(self, i: int, x: str) -> LeftSolver:
        """Cached solver for lifting through vertex ``x`` of ``P_i -> P_{i-1}`` (or of the augmentation)."""
        key = (i, x)
        if key not in self._solvers:
            if i == 0:
                self._solvers[key] = LeftSolver(self.augmentation().blocks[x])
            else:
                self._solvers[key] = LeftSolver(self.differential(i).blocks[x])
        return self._solvers[key]


def _top_generators(m: Representation) -> tuple[list[str], list[list]]:
    rad = m.radical_of(m.full_subspaces())
    gens, images = [], []
    f = m.field
    for x in m.algebra.vertices:
        piv = set(rad[x].rref()[1])
        for c in range(m.dims[x]):
            if c not in piv:
                v = [f.zero] * m.dims[x]
                v[c] = f.one
                gens.append(x)
                images.append(v)
    return gens, images


def projective_cover(m: Representation) -> tuple[ModuleMap, FreeModule]:
    """A surjection ``P -> M`` from a projective whose kernel lies in ``rad P``."""
    if m.is_zero():
        raise ZeroModule("the zero module has no nonzero projective cover")
    gens, images = _top_generators(m)
    p = FreeModule(m.algebra, gens)
    return map_from_generators(p, m, images), p


def minimal_resolution(m: Representation, max_degree: int | None = None) -> Resolution:
    """Iterated projective covers of syzygies, up to ``P_{max_degree}``.

    The default degree bound is the nilpotency index of the radical plus one.
    """
    if max_degree is None:
        max_degree = m.algebra.nilpotency_index + 1
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    terms: list[FreeModule] = []
    images: list[list[list]] = []
    current = m
    inclusion: dict[str, Matrix] | None = None
    for _ in range(max_degree + 1):
        if current.is_zero():
            break
        gens, imgs = _top_generators(current)
        p = FreeModule(m.algebra, gens)
        cover = map_from_generators(p, current, imgs)
        if inclusion is not None:
            imgs = [inclusion[x].vecmul(v) for x, v in zip(gens, imgs)]
        terms.append(p)
        images.append(imgs)
        bases = {x: b.left_kernel() for x, b in cover.blocks.items()}
        current = subrepresentation(p, bases)
        inclusion = bases
    return Resolution(m, terms, images, current.is_zero())


def pullback_matrix(images: Sequence[Sequence], source: FreeModule, target: FreeModule,
                    n: Representation) -> Matrix:
    """Matrix of ``Hom(target, N) -> Hom(source, N)``, ``g -> g o d``.

    ``d: source -> target`` sends generator ``j`` to ``images[j]``.
    ``Hom(P, N)`` is identified with the sum of ``N e_x`` over the generators
    ``x`` of ``P``.
    """
    f = n.field
    row_off, nrows = [], 0
    for y in target.generators:
        row_off.append(nrows)
        nrows += n.dims[y]
    col_off, ncols = [], 0
    for x in source.generators:
        col_off.append(ncols)
        ncols += n.dims[x]
    out = Matrix.zeros(f, nrows, ncols)
    for j, x in enumerate(source.generators):
        v = images[j]
        for pos, (k, b) in enumerate(target.layout[x]):
            c = v[pos]
            if not c:
                continue
            act = n.action(b)
            r0, c0 = row_off[k], col_off[j]
            for r, row in enumerate(act.rows):
                dest = out.rows[r0 + r]
                for s, e in enumerate(row):
                    if e:
                        dest[c0 + s] = dest[c0 + s] + c * e
    return out


def hom_dimension(p: FreeModule, n: Representation) -> int:
    return sum(n.dims[x] for x in p.generators)


def ext_dim(m: Representation, n: Representation, i: int, res: Resolution | None = None) -> int:
    """``dim Ext^i_A(M, N)`` as cohomology of ``Hom(P_., N)``."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if res is None or (not res.complete and res.length < i + 1):
        res = minimal_resolution(m, i + 1)
    if i > res.length:
        return 0
    total = hom_dimension(res.terms[i], n)
    rank_out = 0
    if i + 1 <= res.length:
        rank_out = pullback_matrix(res.images[i + 1], res.terms[i + 1], res.terms[i], n).rank()
    rank_in = 0
    if i >= 1:
        rank_in = pullback_matrix(res.images[i], res.terms[i], res.terms[i - 1], n).rank()
    return total - rank_out - rank_in


def projective_dimension(m: Representation, bound: int) -> int | AboveBound:
    if m.is_zero():
        return -1
    res = minimal_resolution(m, bound)
    return res.length if res.complete else AboveBound(bound)


def injective_dimension(m: Representation, bound: int) -> int | AboveBound:
    """Computed as the projective dimension of ``D M`` over the opposite algebra."""
    return projective_dimension(dual(m), bound)


def global_dimension(a: Algebra, bound: int) -> int | AboveBound:
    """Largest projective dimension of a simple module, if at most ``bound``."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    best = 0
    for x in a.vertices:
        pd = projective_dimension(simple(a, x), bound)
        if isinstance(pd, AboveBound):
            return pd
        best = max(best, pd)
    return best


def _solve(solver: LeftSolver, target: Sequence, rng: random.Random | None) -> list:
    sol = solver.solve(target)
    if sol is None:
        raise InternalError("lifting failed: target not in the image")
    if rng is not None:
        for r in solver.kernel.rows:
            c = solver.field.random_element(rng)
            if c:
                sol = [s + c * k for s, k in zip(sol, r)]
    return sol


def lift_images(res: Resolution, f: ModuleMap, rng: random.Random | None = None) -> list[list[list]]:
    """Generator images of a chain map ``f_i: P_i -> P_i`` lifting ``f``.

    With ``rng`` given, each solution is perturbed by a random element of
    the relevant kernel, producing a different (equally valid) lift.
    """
    if f.source is not res.module or f.target is not res.module:
        raise NotAModuleMap("the map must be an endomorphism of the resolved module")
    if not f.is_natural():
        raise NotAModuleMap("the blocks do not commute with the arrow maps")
    out: list[list[list]] = []
    if not res.terms:
        return out
    imgs = []
    for j, x in enumerate(res.terms[0].generators):
        t = f.blocks[x].vecmul(res.images[0][j])
        imgs.append(_solve(res.solver(0, x), t, rng))
    out.append(imgs)
    for i in range(1, len(res.terms)):
        prev = map_from_generators(res.terms[i - 1], res.terms[i - 1], out[i - 1])
        imgs = []
        for j, x in enumerate(res.terms[i].generators):
            w = prev.blocks[x].vecmul(res.images[i][j])
            imgs.append(_solve(res.solver(i, x), w, rng))
        out.append(imgs)
    return out


def lift_endomorphism(res: Resolution, f: ModuleMap, rng: random.Random | None = None) -> list[ModuleMap]:
    """Chain maps ``f_i: P_i -> P_i`` with ``d_i f_{i-1} = f_i d_i`` and ``aug f = f_0 aug``."""
    return [map_from_generators(p, p, imgs) for p, imgs in zip(res.terms, lift_images(res, f, rng))]
