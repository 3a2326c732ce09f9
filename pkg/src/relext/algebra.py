"""Finite-dimensional basic algebras given by structure constants.

:func:`build_algebra` realizes a bound quiver algebra ``kQ/I`` from a
:class:`~relext.quiver.Presentation`: paths are enumerated length by length,
the ideal is computed as the two-sided closure of the relations inside the
truncated path space, and the normal words (paths that are not leading terms
of ideal elements) become the basis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .errors import CyclicQuiver, InfiniteDimensional, RepresentativeChoiceFailed
from .field import Field
from .linalg import Matrix, SparseEchelon
from .quiver import Path, Presentation, Quiver

DEFAULT_LENGTH_BOUND = 64
DEFAULT_PATH_LIMIT = 50_000


@dataclass(frozen=True)
class AlgebraArrow:
    """A generator of the radical: an element of ``e_source A e_target``."""

    name: str
    source: str
    target: str
    element: Mapping[int, object]


class Algebra:
    """A basic algebra with a basis adapted to its primitive idempotents.

    The basis consists of one idempotent ``e_x`` per vertex followed by a
    basis of the radical; every basis element lies in a single ``e_x A e_y``
    and ``tags[i] == (x, y)`` records that pair.  ``table[(i, j)]`` holds the
    nonzero structure constants of ``b_i * b_j`` as ``{k: c}``.
    """

    def __init__(self, field: Field, vertices: Sequence[str], labels: Sequence[str],
                 tags: Sequence[tuple[str, str]], idempotents: Mapping[str, int],
                 table: Mapping[tuple[int, int], Mapping[int, object]],
                 arrows: Sequence[AlgebraArrow], words=None,
                 presentation: Presentation | None = None):
        self.field = field
        self.vertices = tuple(vertices)
        self.labels = tuple(labels)
        self.tags = tuple(tags)
        self.idempotents = dict(idempotents)
        self.table = {k: dict(v) for k, v in table.items() if v}
        self.arrows = tuple(arrows)
        self.presentation = presentation
        self._words = words
        self._opposite: Algebra | None = None

    def __repr__(self):
        return f"Algebra(dim={self.dim}, vertices={list(self.vertices)}, field={self.field.name})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def quiver(self) -> Quiver:
        return Quiver(self.vertices, [(a.name, a.source, a.target) for a in self.arrows])

    @cached_property
    def _blocks(self) -> dict[tuple[str, str], list[int]]:
        out: dict[tuple[str, str], list[int]] = {}
        for i, t in enumerate(self.tags):
            out.setdefault(t, []).append(i)
        return out

    def basis_between(self, x: str, y: str) -> list[int]:
        """Indices of basis elements in ``e_x A e_y``."""
        return self._blocks.get((x, y), [])

    def basis_from(self, x: str) -> list[int]:
        return [i for i, t in enumerate(self.tags) if t[0] == x]

    def basis_to(self, y: str) -> list[int]:
        return [i for i, t in enumerate(self.tags) if t[1] == y]

    @cached_property
    def radical_indices(self) -> list[int]:
        idem = set(self.idempotents.values())
        return [i for i in range(self.dim) if i not in idem]

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def mul_sparse(self, u: Mapping[int, object], v: Mapping[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        table = self.table
        for i, a in u.items():
            if not a:
                continue
            for j, b in v.items():
                if not b:
                    continue
                prod = table.get((i, j))
                if prod:
                    ab = a * b
                    for k, c in prod.items():
                        out[k] = out.get(k, 0) + ab * c
        return {k: c for k, c in out.items() if c}

    def multiply(self, u: Sequence, v: Sequence) -> list:
        """Product of two elements given as coordinate vectors in the basis."""
        prod = self.mul_sparse(_sparse(u), _sparse(v))
        out = [self.field.zero] * self.dim
        for k, c in prod.items():
            out[k] = self.field(0) + c
        return out

    def left_matrix(self, u: Mapping[int, object]) -> Matrix:
        """Matrix of ``m -> u*m`` on the regular bimodule."""
        rows = []
        for j in range(self.dim):
            rows.append(_dense(self.mul_sparse(u, {j: self.field.one}), self.dim, self.field))
        return Matrix(self.field, self.dim, self.dim, rows)

    def right_matrix(self, u: Mapping[int, object]) -> Matrix:
        """Matrix of ``m -> m*u`` on the regular bimodule."""
        rows = []
        for j in range(self.dim):
            rows.append(_dense(self.mul_sparse({j: self.field.one}, u), self.dim, self.field))
        return Matrix(self.field, self.dim, self.dim, rows)

    # -- radical ------------------------------------------------------------

    @cached_property
    def radical_filtration(self) -> list[Matrix]:
        """Row bases of ``rad^0 = A, rad^1, rad^2, ...`` ending with ``0``."""
        f = self.field
        n = self.dim
        layers = [Matrix.identity(f, n)]
        rad = [self.basis_vector(i) for i in self.radical_indices]
        current = Matrix(f, len(rad), n, rad).row_space()
        right = [self.right_matrix({j: f.one}) for j in self.radical_indices]
        while True:
            layers.append(current)
            if current.nrows == 0:
                return layers
            rows = []
            for r in right:
                rows.extend((current @ r).rows)
            nxt = Matrix(f, len(rows), n, rows).row_space() if rows else Matrix(f, 0, n)
            if nxt.nrows == current.nrows:
                raise InfiniteDimensional("radical is not nilpotent")
            current = nxt

    @property
    def nilpotency_index(self) -> int:
        """Least ``L`` with ``rad^L = 0``."""
        return len(self.radical_filtration) - 1

    def quiver_counts(self) -> dict[tuple[str, str], int]:
        """``dim e_x (rad / rad^2) e_y`` read off the multiplication table."""
        ech = SparseEchelon(self.field)
        rad = self.radical_indices
        for i in rad:
            for j in rad:
                prod = self.table.get((i, j))
                if prod:
                    ech.insert(prod)
        counts: dict[tuple[str, str], int] = {}
        for i in rad:
            counts[self.tags[i]] = counts.get(self.tags[i], 0) + 1
        for piv in ech.rows:
            counts[self.tags[piv]] -= 1
        return {k: v for k, v in counts.items() if v}

    # -- sanity checks --------------------------------------------------------

    def respects_tags(self) -> bool:
        """Every product ``b_i b_j`` is zero unless the tags chain, and lies in the chained block."""
        tags = self.tags
        for (i, j), prod in self.table.items():
            if tags[i][1] != tags[j][0]:
                return False
            want = (tags[i][0], tags[j][1])
            if any(tags[k] != want for k in prod):
                return False
        return True

    def is_associative(self) -> bool:
        """Associativity on all basis triples (given :meth:`respects_tags`, only chaining ones can fail)."""
        if not self.respects_tags():
            return False
        table = self.table
        one = self.field.one
        starts: dict[str, list[int]] = {}
        for i, (x, _) in enumerate(self.tags):
            starts.setdefault(x, []).append(i)
        for i in range(self.dim):
            for j in starts.get(self.tags[i][1], []):
                ij = table.get((i, j), {})
                for k in starts.get(self.tags[j][1], []):
                    left = self.mul_sparse(ij, {k: one})
                    right = self.mul_sparse({i: one}, table.get((j, k), {}))
                    if left != right:
                        return False
        return True

    def has_orthogonal_idempotents(self) -> bool:
        one = self.field.one
        for x, i in self.idempotents.items():
            for y, j in self.idempotents.items():
                expected = {i: one} if x == y else {}
                if self.table.get((i, j), {}) != expected:
                    return False
        unit = {i: one for i in self.idempotents.values()}
        return all(self.mul_sparse(unit, {k: one}) == {k: one} == self.mul_sparse({k: one}, unit)
                   for k in range(self.dim))

    # -- words in the arrows --------------------------------------------------

    @property
    def words(self) -> list[list[tuple[object, str, tuple[int, ...]]]]:
        """Each basis element as ``[(coef, start vertex, arrow indices), ...]``."""
        if self._words is None:
            self._words = self._compute_words()
        return self._words

    def word_value(self, start: str, word: Sequence[int]) -> dict[int, object]:
        value = {self.idempotents[start]: self.field.one}
        for ai in word:
            value = self.mul_sparse(value, self.arrows[ai].element)
        return value

    def _compute_words(self):
        f = self.field
        found: list[tuple[str, tuple[int, ...]]] = []
        values: list[dict] = []
        ech = SparseEchelon(f)
        frontier = []
        for x in self.vertices:
            frontier.append((x, x, ()))
        while frontier:
            nxt = []
            for start, end, w in frontier:
                val = self.word_value(start, w)
                if ech.insert(val) is None:
                    continue
                found.append((start, w))
                values.append(val)
                for ai, a in enumerate(self.arrows):
                    if a.source == end:
                        nxt.append((start, a.target, w + (ai,)))
            frontier = nxt
        if len(found) != self.dim:
            raise RepresentativeChoiceFailed(
                f"arrows generate a subspace of dimension {len(found)} < {self.dim}")
        inv = Matrix(f, self.dim, self.dim, [_dense(v, self.dim, f) for v in values]).inverse()
        words = []
        for i in range(self.dim):
            words.append([(c, found[k][0], found[k][1]) for k, c in enumerate(inv.rows[i]) if c])
        return words

    # -- opposite -------------------------------------------------------------

    def opposite(self) -> "Algebra":
        """The opposite algebra: reversed arrows and transposed structure constants."""
        if self._opposite is None:
            table = {(j, i): prod for (i, j), prod in self.table.items()}
            arrows = [AlgebraArrow(a.name, a.target, a.source, a.element) for a in self.arrows]
            words = None
            if self._words is not None:
                words = []
                for i, ws in enumerate(self._words):
                    words.append([(c, _word_end(self, s, w), w[::-1]) for c, s, w in ws])
            labels = []
            for i, lab in enumerate(self.labels):
                ws = words[i] if words is not None else None
                if ws and len(ws) == 1 and ws[0][0] == self.field.one and ws[0][2]:
                    labels.append("*".join(arrows[k].name for k in ws[0][2]))
                else:
                    labels.append(lab)
            pres = self.presentation.opposite() if self.presentation is not None else None
            op = Algebra(self.field, self.vertices, labels, [(y, x) for x, y in self.tags],
                         self.idempotents, table, arrows, words, pres)
            op._opposite = self
            self._opposite = op
        return self._opposite


def _word_end(a: Algebra, start: str, word: Sequence[int]) -> str:
    end = start
    for k in word:
        end = a.arrows[k].target
    return end


def _sparse(v: Sequence) -> dict[int, object]:
    return {i: c for i, c in enumerate(v) if c}


def _dense(v: Mapping[int, object], n: int, field: Field) -> list:
    out = [field.zero] * n
    for k, c in v.items():
        out[k] = out[k] + c
    return out


# -- bound quiver algebras ----------------------------------------------------


class TruncatedIdeal:
    """The ideal ``(I + J^(L+1)) / J^(L+1)`` inside the span of paths of length <= L."""

    def __init__(self, quiver: Quiver, field: Field, max_len: int, generators, path_limit: int):
        self.quiver = quiver
        self.field = field
        self.max_len = max_len
        paths: list[Path] = []
        for n in range(max_len + 1):
            paths.extend(quiver.paths_of_length(n))
            if len(paths) > path_limit:
                raise InfiniteDimensional(
                    f"more than {path_limit} paths of length <= {max_len}; "
                    "the quotient looks infinite-dimensional")
        self.paths = paths
        self.index = {p: i for i, p in enumerate(paths)}
        self.echelon = SparseEchelon(field)
        queue = deque()
        for g in generators:
            r = self.echelon.insert(self.vector(g))
            if r is not None:
                queue.append(r)
        while queue:
            v = queue.popleft()
            for w in self.arrow_multiples(v):
                r = self.echelon.insert(w)
                if r is not None:
                    queue.append(r)

    def vector(self, terms: Mapping[Path, object]) -> dict[int, object]:
        return {self.index[p]: self.field(c) for p, c in terms.items() if p.length <= self.max_len}

    def arrow_multiples(self, v: Mapping[int, object]):
        """``a*v`` and ``v*a`` for every arrow ``a``, truncated."""
        idx = self.index
        paths = self.paths
        for a in self.quiver.arrows:
            left: dict[int, object] = {}
            right: dict[int, object] = {}
            for k, c in v.items():
                p = paths[k]
                if p.length >= self.max_len:
                    continue
                if p.source == a.target:
                    left[idx[Path(a.source, p.target, (a.name,) + p.arrows)]] = c
                if p.target == a.source:
                    right[idx[Path(p.source, a.target, p.arrows + (a.name,))]] = c
            if left:
                yield left
            if right:
                yield right

    def contains_all_of_length(self, n: int) -> bool:
        one = self.field.one
        return all(self.echelon.contains({self.index[p]: one}) for p in self.quiver.paths_of_length(n))

    def normal_form(self, vec: Mapping[int, object]) -> dict[int, object]:
        return self.echelon.reduce(vec)

    def canonical_generators(self) -> list[dict[int, object]]:
        """``p - NF(p)`` for each leading path ``p``, smallest first."""
        one = self.field.one
        out = []
        for piv in sorted(self.echelon.rows):
            nf = self.echelon.reduce({piv: one})
            g = {k: -c for k, c in nf.items()}
            g[piv] = one
            out.append(g)
        return out

    def minimal_generators(self) -> list[dict[int, object]]:
        """Lifts of a basis of ``I / (JI + IJ)``, each homogeneous in its endpoints."""
        span = SparseEchelon(self.field)
        for v in list(self.echelon.rows.values()):
            for w in self.arrow_multiples(v):
                span.insert(w)
        chosen = []
        for g in self.canonical_generators():
            if span.insert(g) is not None:
                chosen.append(g)
        return chosen

    def endpoints(self, vec: Mapping[int, object]) -> tuple[str, str]:
        p = self.paths[next(iter(vec))]
        return (p.source, p.target)

    def to_terms(self, vec: Mapping[int, object]) -> dict[Path, object]:
        return {self.paths[k]: c for k, c in vec.items()}


def truncated_ideal(p: Presentation, length_bound: int = DEFAULT_LENGTH_BOUND,
                    path_limit: int = DEFAULT_PATH_LIMIT) -> TruncatedIdeal:
    """Find ``L`` with every path of length ``L`` in ``I`` and return the ideal mod ``J^(L+1)``."""
    gens = [r.terms for r in p.relations]
    for n in range(1, length_bound + 1):
        t = TruncatedIdeal(p.quiver, p.field, n, gens, path_limit)
        if t.contains_all_of_length(n):
            return t
    raise InfiniteDimensional(
        f"no power J^L with L <= {length_bound} of the arrow ideal lies in the ideal")


def build_algebra(p: Presentation, length_bound: int = DEFAULT_LENGTH_BOUND,
                  path_limit: int = DEFAULT_PATH_LIMIT) -> Algebra:
    """Realize ``kQ/I`` with the smallest surviving paths as basis."""
    t = truncated_ideal(p, length_bound, path_limit)
    f = p.field
    basis_idx = [i for i in range(len(t.paths)) if i not in t.echelon.rows]
    basis_paths = [t.paths[i] for i in basis_idx]
    pos = {i: k for k, i in enumerate(basis_idx)}
    table = {}
    one = f.one
    for i, u in enumerate(basis_paths):
        for j, v in enumerate(basis_paths):
            w = u * v
            if w is None or w.length > t.max_len:
                continue
            nf = t.normal_form({t.index[w]: one})
            if nf:
                table[(i, j)] = {pos[k]: c for k, c in nf.items()}
    q = p.quiver
    idempotents = {x: basis_paths.index(Path(x, x, ())) for x in q.vertices}
    arrows = [AlgebraArrow(a.name, a.source, a.target,
                           {basis_paths.index(Path(a.source, a.target, (a.name,))): one})
              for a in q.arrows]
    words = [[(one, bp.source, tuple(q.arrow_index[n] for n in bp.arrows))] for bp in basis_paths]
    return Algebra(f, q.vertices, [str(bp) for bp in basis_paths],
                   [(bp.source, bp.target) for bp in basis_paths], idempotents, table, arrows,
                   words, p)


def multiply(a: Algebra, u: Sequence, v: Sequence) -> list:
    return a.multiply(u, v)


def opposite(a: Algebra) -> Algebra:
    return a.opposite()


def ideal_top_counts(p: Presentation, length_bound: int = DEFAULT_LENGTH_BOUND) -> dict[tuple[str, str], int]:
    """Number of relations from ``x`` to ``y`` in any minimal system of relations.

    Computed as ``dim e_x (I / (JI + IJ)) e_y`` with ``J`` the arrow ideal.
    """
    if not p.quiver.is_acyclic:
        raise CyclicQuiver("minimal relation counts need a quiver without oriented cycles")
    t = truncated_ideal(p, length_bound)
    counts: dict[tuple[str, str], int] = {}
    for g in t.minimal_generators():
        e = t.endpoints(g)
        counts[e] = counts.get(e, 0) + 1
    return counts
