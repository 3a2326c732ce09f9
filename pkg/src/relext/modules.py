"""Right modules as quiver representations, and module maps between them.

A right module ``M`` has a space ``M e_x`` at every vertex ``x``; an element
``c`` of ``e_x A e_y`` acts as a matrix ``M e_x -> M e_y`` (rows are vectors).
For ``alpha: x -> y`` the arrow map therefore goes from ``M_x`` to ``M_y``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .algebra import Algebra
from .errors import NotAModuleMap, UnknownVertex
from .linalg import Matrix, hstack


class Representation:
    """A finite-dimensional right module over an :class:`Algebra`."""

    def __init__(self, algebra: Algebra, dims: Mapping[str, int],
                 maps: Mapping[str, Matrix] | None = None, coords=None):
        self.algebra = algebra
        self.field = algebra.field
        for x in dims:
            if x not in algebra.idempotents:
                raise UnknownVertex(f"unknown vertex {x}")
        self.dims = {x: int(dims.get(x, 0)) for x in algebra.vertices}
        maps = dict(maps or {})
        self.maps: dict[str, Matrix] = {}
        for a in algebra.arrows:
            shape = (self.dims[a.source], self.dims[a.target])
            m = maps.pop(a.name, None)
            if m is None:
                m = Matrix.zeros(self.field, *shape)
            if m.shape != shape:
                raise ValueError(f"map for {a.name} has shape {m.shape}, expected {shape}")
            self.maps[a.name] = m
        if maps:
            raise ValueError(f"maps given for unknown arrows {sorted(maps)}")
        # optional description of the coordinates at each vertex
        self.coords = coords
        self._actions: dict[int, Matrix] = {}

    def __repr__(self):
        return f"{type(self).__name__}(dims={self.dimension_vector})"

    @property
    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[x] for x in self.algebra.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def same_as(self, other: "Representation") -> bool:
        """Equal dimensions and equal arrow matrices (not just isomorphic)."""
        return self.dims == other.dims and self.maps == other.maps

    def word_action(self, start: str, word: Sequence[int]) -> Matrix:
        m = Matrix.identity(self.field, self.dims[start])
        for k in word:
            m = m @ self.maps[self.algebra.arrows[k].name]
        return m

    def action(self, i: int) -> Matrix:
        """Matrix of the basis element ``b_i`` acting from ``M_x`` to ``M_y``."""
        m = self._actions.get(i)
        if m is None:
            x, y = self.algebra.tags[i]
            m = Matrix.zeros(self.field, self.dims[x], self.dims[y])
            for c, start, word in self.algebra.words[i]:
                m = m + self.word_action(start, word).scale(c)
            self._actions[i] = m
        return m

    def element_action(self, elem: Mapping[int, object], x: str, y: str) -> Matrix:
        m = Matrix.zeros(self.field, self.dims[x], self.dims[y])
        for i, c in elem.items():
            if c:
                if self.algebra.tags[i] != (x, y):
                    raise ValueError("element is not in e_x A e_y")
                m = m + self.action(i).scale(c)
        return m

    def satisfies_relations(self) -> bool:
        """Check that the arrow matrices define a module over the algebra."""
        a = self.algebra
        if a.presentation is not None:
            q = a.quiver
            for r in a.presentation.relations:
                total = Matrix.zeros(self.field, self.dims[r.source], self.dims[r.target])
                for p, c in r.terms.items():
                    total = total + self.word_action(p.source, [q.arrow_index[n] for n in p.arrows]).scale(c)
                if not total.is_zero():
                    return False
            return True
        for (i, j), prod in a.table.items():
            lhs = self.action(i) @ self.action(j)
            if lhs != self.element_action(prod, a.tags[i][0], a.tags[j][1]):
                return False
        for i, x in enumerate(a.tags):
            for j, y in enumerate(a.tags):
                if x[1] == y[0] and (i, j) not in a.table:
                    if not (self.action(i) @ self.action(j)).is_zero():
                        return False
        return True

    # -- radical, socle -------------------------------------------------------

    def radical_of(self, sub: Mapping[str, Matrix]) -> dict[str, Matrix]:
        """``sub * rad A`` for a submodule given by row bases at each vertex."""
        out = {}
        for z in self.algebra.vertices:
            blocks = [sub[a.source] @ self.maps[a.name] for a in self.algebra.arrows if a.target == z]
            rows = [r for b in blocks for r in b.rows]
            out[z] = Matrix(self.field, len(rows), self.dims[z], rows).row_space()
        return out

    def full_subspaces(self) -> dict[str, Matrix]:
        return {x: Matrix.identity(self.field, self.dims[x]) for x in self.algebra.vertices}

    def top_dims(self) -> dict[str, int]:
        rad = self.radical_of(self.full_subspaces())
        return {x: self.dims[x] - rad[x].nrows for x in self.algebra.vertices}

    def socle_dims(self) -> dict[str, int]:
        out = {}
        for x in self.algebra.vertices:
            outs = [self.maps[a.name] for a in self.algebra.arrows if a.source == x]
            if not outs:
                out[x] = self.dims[x]
                continue
            big = hstack(self.field, self.dims[x], outs)
            out[x] = big.left_kernel().nrows
        return out


class FreeModule(Representation):
    """A direct sum ``P_{x_1} + ... + P_{x_r}`` of indecomposable projectives.

    Coordinates at vertex ``z`` are pairs ``(j, b)``: generator ``j`` times
    the basis element ``b`` of ``e_{x_j} A e_z``.
    """

    def __init__(self, algebra: Algebra, generators: Sequence[str]):
        for x in generators:
            if x not in algebra.idempotents:
                raise UnknownVertex(f"unknown vertex {x}")
        self.generators = tuple(generators)
        layout: dict[str, list[tuple[int, int]]] = {z: [] for z in algebra.vertices}
        for j, x in enumerate(self.generators):
            for z in algebra.vertices:
                layout[z].extend((j, b) for b in algebra.basis_between(x, z))
        self.layout = layout
        self.position = {z: {jb: k for k, jb in enumerate(layout[z])} for z in algebra.vertices}
        f = algebra.field
        maps = {}
        for a in algebra.arrows:
            rows = []
            tpos = self.position[a.target]
            for j, b in layout[a.source]:
                row = [f.zero] * len(layout[a.target])
                for k, c in algebra.mul_sparse({b: f.one}, a.element).items():
                    row[tpos[(j, k)]] = c
                rows.append(row)
            maps[a.name] = Matrix(f, len(rows), len(layout[a.target]), rows)
        super().__init__(algebra, {z: len(layout[z]) for z in algebra.vertices}, maps, coords=layout)

    def action(self, i: int) -> Matrix:
        m = self._actions.get(i)
        if m is None:
            a = self.algebra
            f = self.field
            x, y = a.tags[i]
            tpos = self.position[y]
            rows = []
            for j, b in self.layout[x]:
                row = [f.zero] * self.dims[y]
                for k, c in a.table.get((b, i), {}).items():
                    row[tpos[(j, k)]] = c
                rows.append(row)
            m = Matrix(f, self.dims[x], self.dims[y], rows)
            self._actions[i] = m
        return m

    def generator_vector(self, j: int) -> list:
        """Coordinates of the ``j``-th generator ``e_{x_j}`` in ``P e_{x_j}``."""
        x = self.generators[j]
        v = [self.field.zero] * self.dims[x]
        v[self.position[x][(j, self.algebra.idempotents[x])]] = self.field.one
        return v


class ModuleMap:
    """A homomorphism of right modules, one matrix per vertex."""

    def __init__(self, source: Representation, target: Representation,
                 blocks: Mapping[str, Matrix], check: bool = True):
        self.source = source
        self.target = target
        self.field = source.field
        self.blocks: dict[str, Matrix] = {}
        for x in source.algebra.vertices:
            b = blocks.get(x)
            if b is None:
                b = Matrix.zeros(self.field, source.dims[x], target.dims[x])
            if b.shape != (source.dims[x], target.dims[x]):
                raise NotAModuleMap(f"block at {x} has shape {b.shape}")
            self.blocks[x] = b
        if check and not self.is_natural():
            raise NotAModuleMap("the blocks do not commute with the arrow maps")

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"

    @classmethod
    def identity(cls, m: Representation) -> "ModuleMap":
        return cls(m, m, {x: Matrix.identity(m.field, d) for x, d in m.dims.items()}, check=False)

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "ModuleMap":
        return cls(source, target, {}, check=False)

    def is_natural(self) -> bool:
        for a in self.source.algebra.arrows:
            lhs = self.source.maps[a.name] @ self.blocks[a.target]
            rhs = self.blocks[a.source] @ self.target.maps[a.name]
            if lhs != rhs:
                return False
        return True

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """Composite ``other o self``."""
        return ModuleMap(self.source, other.target,
                         {x: self.blocks[x] @ other.blocks[x] for x in self.blocks}, check=False)

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.blocks == other.blocks

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def rank(self) -> int:
        return sum(b.rank() for b in self.blocks.values())

    def is_surjective(self) -> bool:
        return all(b.rank() == self.target.dims[x] for x, b in self.blocks.items())

    def is_injective(self) -> bool:
        return all(b.rank() == self.source.dims[x] for x, b in self.blocks.items())

    def kernel(self) -> tuple[Representation, "ModuleMap"]:
        bases = {x: b.left_kernel() for x, b in self.blocks.items()}
        sub = subrepresentation(self.source, bases)
        return sub, ModuleMap(sub, self.source, bases, check=False)

    def image_subspaces(self) -> dict[str, Matrix]:
        return {x: b.row_space() for x, b in self.blocks.items()}


def subrepresentation(m: Representation, bases: Mapping[str, Matrix]) -> Representation:
    """The submodule spanned by reduced echelon row bases at each vertex."""
    pivots = {}
    for x, b in bases.items():
        piv = []
        for r in b.rows:
            piv.append(next(k for k, c in enumerate(r) if c))
        pivots[x] = piv
    maps = {}
    for a in m.algebra.arrows:
        img = bases[a.source] @ m.maps[a.name]
        piv = pivots[a.target]
        maps[a.name] = Matrix(m.field, img.nrows, len(piv), [[r[c] for c in piv] for r in img.rows])
    return Representation(m.algebra, {x: b.nrows for x, b in bases.items()}, maps)


def map_from_generators(source: FreeModule, target: Representation, images: Sequence[Sequence],
                        check: bool = False) -> ModuleMap:
    """The homomorphism sending generator ``j`` of ``source`` to ``images[j]``."""
    f = source.field
    blocks = {}
    for z in source.algebra.vertices:
        rows = []
        for j, b in source.layout[z]:
            rows.append(target.action(b).vecmul(images[j]))
        blocks[z] = Matrix(f, len(rows), target.dims[z], rows)
    return ModuleMap(source, target, blocks, check=check)


def projective(a: Algebra, x: str) -> FreeModule:
    """``P_x = e_x A``."""
    return FreeModule(a, [x])


def regular_module(a: Algebra) -> FreeModule:
    """``A_A`` as ``P_{x_1} + ... + P_{x_n}`` in vertex order."""
    return FreeModule(a, a.vertices)


def simple(a: Algebra, x: str) -> Representation:
    if x not in a.idempotents:
        raise UnknownVertex(f"unknown vertex {x}")
    return Representation(a, {x: 1})


def _dual_module(a: Algebra, subset: Sequence[int]) -> Representation:
    """``D(L)`` for the left ideal ``L`` spanned by the basis elements ``subset``."""
    f = a.field
    layout = {z: [i for i in subset if a.tags[i][0] == z] for z in a.vertices}
    maps = {}
    for ar in a.arrows:
        src, tgt = layout[ar.source], layout[ar.target]
        prods = [a.mul_sparse(ar.element, {z: f.one}) for z in tgt]
        rows = [[prod.get(b, f.zero) for prod in prods] for b in src]
        maps[ar.name] = Matrix(f, len(src), len(tgt), rows)
    return Representation(a, {z: len(layout[z]) for z in a.vertices}, maps, coords=layout)


def injective(a: Algebra, x: str) -> Representation:
    """``I_x = D(A e_x)``, coordinates the dual basis of paths ending at ``x``."""
    if x not in a.idempotents:
        raise UnknownVertex(f"unknown vertex {x}")
    return _dual_module(a, a.basis_to(x))


def dual_regular(a: Algebra) -> Representation:
    """``DA`` as a right module; it is the direct sum of the ``I_x``."""
    return _dual_module(a, range(a.dim))


def dual_left_multiplication(a: Algebra, da: Representation, c: Mapping[int, object]) -> ModuleMap:
    """Left multiplication by ``c`` on ``DA``: ``(c f)(z) = f(z c)``.

    It commutes with the right action, so it is an endomorphism of ``DA_A``.
    """
    f = a.field
    blocks = {}
    for y, coords in da.coords.items():
        prods = [a.mul_sparse({z: f.one}, c) for z in coords]
        rows = [[prod.get(b, f.zero) for prod in prods] for b in coords]
        blocks[y] = Matrix(f, len(coords), len(coords), rows)
    return ModuleMap(da, da, blocks, check=False)


def direct_sum(modules: Sequence[Representation]) -> Representation:
    if not modules:
        raise ValueError("empty direct sum")
    a = modules[0].algebra
    f = a.field
    dims = {x: sum(m.dims[x] for m in modules) for x in a.vertices}
    maps = {}
    for ar in a.arrows:
        big = Matrix.zeros(f, dims[ar.source], dims[ar.target])
        r0 = c0 = 0
        for m in modules:
            blk = m.maps[ar.name]
            for i, row in enumerate(blk.rows):
                big.rows[r0 + i][c0:c0 + blk.ncols] = row
            r0 += blk.nrows
            c0 += blk.ncols
        maps[ar.name] = big
    return Representation(a, dims, maps)


def dual(m: Representation) -> Representation:
    """``D M = Hom_k(M, k)``, a right module over the opposite algebra."""
    op = m.algebra.opposite()
    return Representation(op, m.dims, {name: mat.T for name, mat in m.maps.items()})


def loewy_series(m: Representation) -> list[dict[str, int]]:
    """Dimension vectors of ``rad^i M / rad^(i+1) M``, top first."""
    layers = []
    current = m.full_subspaces()
    for _ in range(m.total_dim + 1):
        if all(b.nrows == 0 for b in current.values()):
            return layers
        nxt = m.radical_of(current)
        layers.append({x: current[x].nrows - nxt[x].nrows for x in m.algebra.vertices})
        current = nxt
    raise ValueError("radical filtration does not terminate")


def format_loewy(layers: Sequence[Mapping[str, int]], vertices: Sequence[str]) -> str:
    """Display such as ``[3 / 1 2 / 3 / 1]``."""
    parts = []
    for layer in layers:
        parts.append(" ".join(v for v in vertices for _ in range(layer.get(v, 0))))
    return "[" + " / ".join(parts) + "]"


def hom_space(m: Representation, n: Representation) -> list[ModuleMap]:
    """A basis of ``Hom_A(M, N)`` from the naturality equations."""
    f = m.field
    a = m.algebra
    offsets = {}
    nvars = 0
    for x in a.vertices:
        offsets[x] = nvars
        nvars += m.dims[x] * n.dims[x]
    cols = []
    for ar in a.arrows:
        x, y = ar.source, ar.target
        ma, na = m.maps[ar.name], n.maps[ar.name]
        # entries of M_a F_y - F_x N_a, one column per (r, s)
        for r in range(m.dims[x]):
            for s in range(n.dims[y]):
                col = [f.zero] * nvars
                for t in range(m.dims[y]):
                    c = ma[r, t]
                    if c:
                        k = offsets[y] + t * n.dims[y] + s
                        col[k] = col[k] + c
                for t in range(n.dims[x]):
                    c = na[t, s]
                    if c:
                        k = offsets[x] + r * n.dims[x] + t
                        col[k] = col[k] - c
                cols.append(col)
    if cols:
        system = Matrix(f, len(cols), nvars, cols).T
        sols = system.left_kernel().rows
    else:
        sols = Matrix.identity(f, nvars).rows
    out = []
    for v in sols:
        blocks = {}
        for x in a.vertices:
            d, e = m.dims[x], n.dims[x]
            o = offsets[x]
            blocks[x] = Matrix(f, d, e, [v[o + r * e:o + (r + 1) * e] for r in range(d)])
        out.append(ModuleMap(m, n, blocks, check=False))
    return out
