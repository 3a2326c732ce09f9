"""Quivers, paths, linear combinations of parallel paths and presentations.

Paths compose left to right: for ``alpha: 3 -> 2`` and ``beta: 2 -> 1`` the
path ``alpha*beta`` runs from 3 to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CompositionMismatch, DuplicateName, NonAdmissibleIdeal, UnknownArrow, UnknownVertex
from .field import Field


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def is_trivial(self) -> bool:
        return not self.arrows

    def __mul__(self, other: "Path") -> "Path | None":
        """Concatenation, or ``None`` when the paths do not chain."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


class Quiver:
    """A finite directed multigraph with named vertices and arrows."""

    def __init__(self, vertices: Iterable[str], arrows: Iterable[Arrow | tuple]):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*(str(x) for x in a))
            arrs.append(a)
        self.arrows: tuple[Arrow, ...] = tuple(arrs)
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateName("duplicate vertex name")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise DuplicateName("duplicate arrow name")
        clash = set(names) & set(self.vertices)
        if clash:
            raise DuplicateName(f"name used for both a vertex and an arrow: {sorted(clash)[0]}")
        vs = set(self.vertices)
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in vs:
                    raise UnknownVertex(f"arrow {a.name} uses undeclared vertex {end}")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self._by_name = {a.name: a for a in self.arrows}

    def __repr__(self):
        arrs = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver(vertices={list(self.vertices)}, arrows=[{arrs}])"

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownArrow(f"unknown arrow {name}") from None

    def arrows_from(self, x: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == x]

    def arrows_to(self, y: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == y]

    def arrow_counts(self) -> dict[tuple[str, str], int]:
        counts: dict[tuple[str, str], int] = {}
        for a in self.arrows:
            counts[(a.source, a.target)] = counts.get((a.source, a.target), 0) + 1
        return counts

    @cached_property
    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    stack.append(a.target)
        return seen == len(self.vertices)

    def trivial(self, x: str) -> Path:
        if x not in self.vertex_index:
            raise UnknownVertex(f"unknown vertex {x}")
        return Path(x, x, ())

    def path(self, names: Sequence[str]) -> Path:
        """The path through the named arrows, checked for composability."""
        if not names:
            raise ValueError("use trivial() for paths of length zero")
        arrs = [self.arrow(n) for n in names]
        for a, b in zip(arrs, arrs[1:]):
            if a.target != b.source:
                raise CompositionMismatch(
                    f"{a.name}*{b.name} does not compose: target of {a.name} is {a.target}, "
                    f"source of {b.name} is {b.source}")
        return Path(arrs[0].source, arrs[-1].target, tuple(names))

    def path_key(self, p: Path) -> tuple:
        """Total order on paths: shorter first, then by arrow declaration order."""
        if not p.arrows:
            return (0, (self.vertex_index[p.source],))
        return (len(p.arrows), tuple(self.arrow_index[n] for n in p.arrows))

    def paths_of_length(self, n: int) -> list[Path]:
        """All paths of length ``n``, in :meth:`path_key` order."""
        if n == 0:
            return [Path(v, v, ()) for v in self.vertices]
        layer = [Path(a.source, a.target, (a.name,)) for a in self.arrows]
        for _ in range(n - 1):
            layer = [Path(p.source, a.target, p.arrows + (a.name,))
                     for p in layer for a in self.arrows_from(p.target)]
        return layer

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def remove_arrows(self, names: Iterable[str]) -> "Quiver":
        drop = set(names)
        return Quiver(self.vertices, [a for a in self.arrows if a.name not in drop])


@dataclass(frozen=True, eq=False)
class PathVector:
    """A linear combination of parallel paths; zero coefficients are dropped."""

    source: str
    target: str
    terms: Mapping[Path, object] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p, c in self.terms.items():
            if p.source != self.source or p.target != self.target:
                raise CompositionMismatch(
                    f"path {p} runs {p.source}->{p.target}, expected {self.source}->{self.target}")
            if c:
                clean[p] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_terms(cls, terms: Sequence[tuple[object, Path]]) -> "PathVector":
        if not terms:
            raise ValueError("cannot infer endpoints of an empty combination")
        src, tgt = terms[0][1].source, terms[0][1].target
        acc: dict[Path, object] = {}
        for c, p in terms:
            if p.source != src or p.target != tgt:
                raise CompositionMismatch(
                    f"terms are not parallel: {terms[0][1]} runs {src}->{tgt} but {p} runs "
                    f"{p.source}->{p.target}")
            acc[p] = acc.get(p, 0) + c
        return cls(src, tgt, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def min_length(self) -> int:
        return min(p.length for p in self.terms)

    def __eq__(self, other):
        if not isinstance(other, PathVector):
            return NotImplemented
        return (self.source, self.target, dict(self.terms)) == (other.source, other.target, dict(other.terms))

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def format(self, quiver: Quiver | None = None) -> str:
        items = list(self.terms.items())
        if quiver is not None:
            items.sort(key=lambda pc: quiver.path_key(pc[0]))
        out = []
        for c, (p, coef) in enumerate(items):
            s = str(coef)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            body = str(p) if s == "1" else f"{s}*{p}"
            if c == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out) if out else "0"

    def __str__(self):
        return self.format()


@dataclass(frozen=True, eq=False)
class Presentation:
    """A bound quiver ``kQ/I`` with ``I`` generated by ``relations``."""

    quiver: Quiver
    relations: tuple[PathVector, ...]
    field: Field = Field.rationals()

    def __post_init__(self):
        rels = []
        q = self.quiver
        for r in self.relations:
            if r.is_zero():
                raise NonAdmissibleIdeal("zero relation")
            terms = {}
            for p, c in r.terms.items():
                for n in p.arrows:
                    q.arrow(n)
                if p.arrows:
                    q.path(p.arrows)
                elif p.source not in q.vertex_index:
                    raise UnknownVertex(f"unknown vertex {p.source}")
                terms[p] = self.field(c)
            r = PathVector(r.source, r.target, terms)
            if r.is_zero():
                raise NonAdmissibleIdeal("relation vanishes over " + self.field.name)
            if r.min_length() < 2:
                raise NonAdmissibleIdeal(f"relation {r} has a term of length < 2")
            rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))

    def opposite(self) -> "Presentation":
        rels = []
        for r in self.relations:
            rels.append(PathVector(r.target, r.source,
                                   {Path(p.target, p.source, p.arrows[::-1]): c for p, c in r.terms.items()}))
        return Presentation(self.quiver.opposite(), tuple(rels), self.field)

    def with_field(self, field: Field) -> "Presentation":
        rels = tuple(PathVector(r.source, r.target,
                                {p: field(_as_fraction(c)) for p, c in r.terms.items()})
                     for r in self.relations)
        return Presentation(self.quiver, rels, field)


def _as_fraction(c):
    from fractions import Fraction
    if isinstance(c, Fraction):
        return c
    return Fraction(int(c))
