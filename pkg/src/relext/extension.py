"""Trivial extensions ``A x M`` and the quiver of the relation-extension.

Three independent ways to get the quiver of ``A x Ext^2(DA, A)`` are
provided and are expected to agree on acyclic algebras of global dimension
at most two:

* :func:`relext_quiver` counts minimal relations of the presentation,
* :func:`quiver_from_extension` reads ``rad / rad^2`` of the extension's
  multiplication table,
* base quiver plus :func:`~relext.bimodule.bimodule_top` of the bimodule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .algebra import Algebra, AlgebraArrow, TruncatedIdeal, build_algebra, ideal_top_counts
from .bimodule import Bimodule
from .errors import (ActionMismatch, CyclicQuiver, GlobalDimensionTooHigh,
                     RepresentativeChoiceFailed)
from .linalg import SparseEchelon
from .modules import FreeModule, projective
from .quiver import Arrow, PathVector, Presentation, Quiver
from .resolution import AboveBound, global_dimension


@dataclass(frozen=True)
class ExtendedQuiver:
    """A quiver with some arrows marked as added by an extension."""

    quiver: Quiver
    new_arrows: tuple[str, ...]
    representatives: Mapping[str, Mapping[int, object]] = dc_field(default_factory=dict)

    def base_quiver(self) -> Quiver:
        return self.quiver.remove_arrows(self.new_arrows)

    def arrow_counts(self) -> dict[tuple[str, str], int]:
        return self.quiver.arrow_counts()

    def new_arrow_counts(self) -> dict[tuple[str, str], int]:
        out: dict[tuple[str, str], int] = {}
        for name in self.new_arrows:
            a = self.quiver.arrow(name)
            out[(a.source, a.target)] = out.get((a.source, a.target), 0) + 1
        return out


@dataclass(frozen=True, eq=False)
class ExtensionAlgebra:
    base: Algebra
    bimodule: Bimodule
    total: Algebra
    new_arrows: tuple[str, ...]


def _fresh_names(taken: set[str], count: int, names: Sequence[str] | None) -> list[str]:
    if names is not None:
        names = list(names)
        if len(names) != count:
            raise ValueError(f"{count} new arrows need names, got {len(names)}")
        clash = taken & set(names)
        if clash or len(set(names)) != len(names):
            raise ValueError(f"arrow names are not fresh: {sorted(clash) or names}")
        return names
    out = []
    k = 1
    while len(out) < count:
        cand = f"z{k}"
        if cand not in taken:
            out.append(cand)
        k += 1
    return out


def trivial_extension(a: Algebra, m: Bimodule, names: Sequence[str] | None = None,
                      verify: bool = True) -> ExtensionAlgebra:
    """``A x M`` with ``(c, m)(c', m') = (cc', cm' + mc')``.

    The basis is the basis of ``A`` followed by the basis of ``M``.  Its
    arrows are those of ``A`` plus one new arrow for each basis element of a
    complement of ``rad^2`` inside ``M``; the complement is spanned by
    the basis vectors of ``M`` that are not leading terms of ``rad^2``.
    """
    if m.algebra is not a:
        raise ActionMismatch("the bimodule is defined over a different algebra")
    f = a.field
    n = a.dim
    table = {k: dict(v) for k, v in a.table.items()}
    for i in range(n):
        for k in range(m.dim):
            lrow = {n + l: c for l, c in enumerate(m.left[i].rows[k]) if c}
            if lrow:
                table[(i, n + k)] = lrow
            rrow = {n + l: c for l, c in enumerate(m.right[i].rows[k]) if c}
            if rrow:
                table[(n + k, i)] = rrow
    labels = list(a.labels) + list(m.labels)
    tags = list(a.tags) + list(m.tags)
    provisional = Algebra(f, a.vertices, labels, tags, a.idempotents, table, a.arrows)

    rad2 = SparseEchelon(f)
    rad = provisional.radical_indices
    for i in rad:
        for j in rad:
            prod = table.get((i, j))
            if prod and max(prod) >= n:
                rad2.insert(prod)
    reps = []
    for x in a.vertices:
        for y in a.vertices:
            for k in range(m.dim):
                if m.tags[k] == (x, y) and n + k not in rad2.rows:
                    reps.append((x, y, n + k))
    taken = set(a.vertices) | {ar.name for ar in a.arrows}
    new_names = _fresh_names(taken, len(reps), names)
    arrows = list(a.arrows) + [AlgebraArrow(nm, x, y, {idx: f.one})
                               for nm, (x, y, idx) in zip(new_names, reps)]
    total = Algebra(f, a.vertices, labels, tags, a.idempotents, table, arrows)
    # associativity of A x M on all basis triples is equivalent to the bimodule axioms
    if verify and not (total.is_associative() and total.has_orthogonal_idempotents()
                       and _unital(m)):
        problems = m.axiom_failures() or ["the extension is not associative"]
        raise ActionMismatch(problems[0])
    return ExtensionAlgebra(a, m, total, tuple(new_names))


def _unital(m: Bimodule) -> bool:
    a = m.algebra
    for k, (x, y) in enumerate(m.tags):
        for v, i in a.idempotents.items():
            want = 1 if v == x else 0
            if any(c != (want if l == k else 0) for l, c in enumerate(m.left[i].rows[k])):
                return False
            want = 1 if v == y else 0
            if any(c != (want if l == k else 0) for l, c in enumerate(m.right[i].rows[k])):
                return False
    return True


def quiver_from_extension(e: ExtensionAlgebra) -> ExtendedQuiver:
    """The quiver of ``A x M`` with the new arrows and their representatives."""
    reps = {}
    for ar in e.total.arrows:
        if ar.name in e.new_arrows:
            reps[ar.name] = dict(ar.element)
    return ExtendedQuiver(e.total.quiver, e.new_arrows, reps)


def relext_quiver(p: Presentation, names: Sequence[str] | None = None) -> ExtendedQuiver:
    """Add one arrow ``x -> y`` for every minimal relation from ``y`` to ``x``."""
    q = p.quiver
    if not q.is_acyclic:
        raise CyclicQuiver("relation counting needs a quiver without oriented cycles")
    a = build_algebra(p)
    if isinstance(global_dimension(a, 2), AboveBound):
        raise GlobalDimensionTooHigh("the relation-extension needs global dimension at most two")
    counts = ideal_top_counts(p)
    ends = []
    for x in q.vertices:
        for y in q.vertices:
            ends.extend([(x, y)] * counts.get((y, x), 0))
    taken = set(q.vertices) | {ar.name for ar in q.arrows}
    new_names = _fresh_names(taken, len(ends), names)
    arrows = list(q.arrows) + [Arrow(nm, x, y) for nm, (x, y) in zip(new_names, ends)]
    return ExtendedQuiver(Quiver(q.vertices, arrows), tuple(new_names))


def extension_projectives(e: ExtensionAlgebra) -> dict[str, FreeModule]:
    """The indecomposable projectives ``e_x (A x M)``."""
    return {x: projective(e.total, x) for x in e.total.vertices}


def present_extension(e: ExtensionAlgebra, length_bound: int | None = None) -> Presentation:
    """A presentation of ``A x M`` by its quiver and a minimal set of relations.

    Paths in the extension's quiver are evaluated in its multiplication
    table; the kernel of that evaluation is the ideal of relations, and a
    minimal generating set is read off ``I / (JI + IJ)``.
    """
    total = e.total
    f = total.field
    q = total.quiver
    top = total.nilpotency_index
    if length_bound is not None:
        top = min(top, length_bound)
    paths = [p for k in range(top + 1) for p in q.paths_of_length(k)]
    npaths = len(paths)
    values: dict = {}
    ech = SparseEchelon(f)
    kernel = []
    rank = 0
    for k, p in enumerate(paths):
        if not p.arrows:
            val = {total.idempotents[p.source]: f.one}
        else:
            prefix = values[(p.source, p.arrows[:-1])]
            val = total.mul_sparse(prefix, total.arrows[q.arrow_index[p.arrows[-1]]].element)
        values[(p.source, p.arrows)] = val
        vec = {npaths + j: c for j, c in val.items()}
        vec[k] = f.one
        r = ech.reduce(vec)
        if max(r) >= npaths:
            ech.insert(r)
            rank += 1
        else:
            kernel.append({paths[i]: c for i, c in r.items()})
    if rank != total.dim:
        raise RepresentativeChoiceFailed(
            f"paths span only {rank} of {total.dim} dimensions of the extension")
    ideal = TruncatedIdeal(q, f, top, kernel, path_limit=max(npaths, 1) + 1)
    rels = []
    for g in ideal.minimal_generators():
        src, tgt = ideal.endpoints(g)
        rels.append(PathVector(src, tgt, ideal.to_terms(g)))
    pres = Presentation(q, tuple(rels), f)
    check = build_algebra(pres)
    if check.dim != total.dim or check.quiver != q:
        raise RepresentativeChoiceFailed(
            f"presentation reproduces dimension {check.dim}, expected {total.dim}")
    return pres


def has_two_cycle(q: Quiver) -> bool:
    """True when arrows ``x -> y`` and ``y -> x`` exist for some ``x != y``."""
    pairs = {(a.source, a.target) for a in q.arrows if a.source != a.target}
    return any((y, x) in pairs for x, y in pairs)


def new_arrows_close_cycle(eq: ExtendedQuiver) -> bool:
    """Whether some added arrow lies on an oriented cycle."""
    q = eq.quiver
    for name in eq.new_arrows:
        a = q.arrow(name)
        seen, stack = set(), [a.target]
        while stack:
            v = stack.pop()
            if v == a.source:
                return True
            if v in seen:
                continue
            seen.add(v)
            stack.extend(b.target for b in q.arrows_from(v))
    return False


def quiver_isomorphism(q1: Quiver, q2: Quiver) -> dict[str, str] | None:
    """A vertex bijection matching arrow multiplicities, found by search."""
    if len(q1.vertices) != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return None
    c1, c2 = q1.arrow_counts(), q2.arrow_counts()

    def degrees(q, counts):
        return {v: (sum(c for (s, _), c in counts.items() if s == v),
                    sum(c for (_, t), c in counts.items() if t == v),
                    counts.get((v, v), 0)) for v in q.vertices}

    d1, d2 = degrees(q1, c1), degrees(q2, c2)
    if sorted(d1.values()) != sorted(d2.values()):
        return None
    vs1 = list(q1.vertices)
    candidates = [[w for w in q2.vertices if d2[w] == d1[v]] for v in vs1]
    for choice in itertools.product(*candidates):
        if len(set(choice)) != len(choice):
            continue
        phi = dict(zip(vs1, choice))
        if all(c2.get((phi[s], phi[t]), 0) == c for (s, t), c in c1.items()):
            return phi
    return None
