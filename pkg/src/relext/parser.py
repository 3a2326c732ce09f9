"""Reader and writer for the line-based quiver file format.

::

    field Q                      # or: field F 5
    vertex 1 2 3
    arrow alpha : 3 -> 2
    relation alpha*beta          # "= 0" is implied
    relation 2*alpha*beta - 1/3*gamma*delta
    relation alpha*beta = gamma*delta
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (CompositionMismatch, DuplicateName, NonAdmissibleIdeal, ParseError,
                     UnknownArrow, UnknownVertex, ZeroRelation)
from .field import Field
from .quiver import Arrow, Path, PathVector, Presentation, Quiver

_TOKEN = re.compile(r"\s*(?:(?P<arrow>->)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[*+\-/:=]))")


@dataclass
class _Token:
    kind: str
    text: str
    col: int


def _tokenize(text: str, lineno: int) -> list[_Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        out.append(_Token(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


class _LineParser:
    def __init__(self, tokens: list[_Token], lineno: int, eol_col: int):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.eol_col = eol_col

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, msg: str, tok: _Token | None = None, cls=ParseError):
        tok = tok or self.peek()
        return cls(msg, self.lineno, tok.col if tok else self.eol_col)

    def take(self, kind: str | None = None, text: str | None = None) -> _Token:
        tok = self.peek()
        want = text or kind
        if tok is None:
            raise self.error(f"expected {want}, found end of line")
        if (kind and tok.kind != kind) or (text and tok.text != text):
            raise self.error(f"expected {want}, found {tok.text!r}")
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.kind in ("sym", "arrow") and tok.text == text:
            self.i += 1
            return True
        return False

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise self.error(f"unexpected {tok.text!r}")

    def vertex_name(self) -> _Token:
        tok = self.peek()
        if tok is None or tok.kind not in ("name", "num"):
            raise self.error("expected a vertex name")
        self.i += 1
        return tok


class _FileParser:
    def __init__(self):
        self.field: Field | None = None
        self.vertices: list[str] = []
        self.arrows: dict[str, Arrow] = {}
        self.relations: list[tuple[int, dict]] = []

    def parse(self, text: str) -> Presentation:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0]
            tokens = _tokenize(line, lineno)
            if not tokens:
                continue
            lp = _LineParser(tokens, lineno, len(line.rstrip()) + 1)
            head = tokens[0]
            if head.kind != "name" or head.text not in ("field", "vertex", "vertices", "arrow", "relation"):
                raise ParseError(f"unknown declaration {head.text!r}", lineno, head.col)
            lp.i = 1
            getattr(self, "_" + ("vertex" if head.text == "vertices" else head.text))(lp)
        field = self.field or Field.rationals()
        quiver = Quiver(self.vertices, list(self.arrows.values()))
        rels = []
        for lineno, terms in self.relations:
            try:
                conv = {p: field(c) for p, c in terms.items()}
            except ZeroDivisionError as exc:
                raise ParseError(str(exc), lineno) from None
            pv = PathVector(next(iter(terms)).source, next(iter(terms)).target, conv)
            if pv.is_zero():
                raise ZeroRelation(f"relation is zero over {field.name}", lineno)
            if pv.min_length() < 2:
                raise NonAdmissibleIdeal(f"line {lineno}: relation {pv} has a term of length < 2")
            rels.append(pv)
        return Presentation(quiver, tuple(rels), field)

    def _field(self, lp: _LineParser):
        if self.field is not None:
            raise lp.error("field declared twice", lp.tokens[0])
        parts = []
        while lp.peek() is not None:
            parts.append(lp.take().text)
        try:
            self.field = Field.parse(" ".join(parts))
        except ValueError as exc:
            raise lp.error(str(exc), lp.tokens[1] if len(lp.tokens) > 1 else None) from None

    def _vertex(self, lp: _LineParser):
        if lp.peek() is None:
            raise lp.error("expected at least one vertex name")
        while lp.peek() is not None:
            tok = lp.vertex_name()
            if tok.text in self.vertices or tok.text in self.arrows:
                raise lp.error(f"duplicate name {tok.text!r}", tok, DuplicateName)
            self.vertices.append(tok.text)

    def _arrow(self, lp: _LineParser):
        name = lp.take("name")
        if name.text in self.arrows or name.text in self.vertices:
            raise lp.error(f"duplicate name {name.text!r}", name, DuplicateName)
        lp.take("sym", ":")
        src = lp.vertex_name()
        lp.take("arrow", "->")
        tgt = lp.vertex_name()
        lp.done()
        for tok in (src, tgt):
            if tok.text not in self.vertices:
                raise lp.error(f"undeclared vertex {tok.text!r}", tok, UnknownVertex)
        self.arrows[name.text] = Arrow(name.text, src.text, tgt.text)

    def _relation(self, lp: _LineParser):
        terms: dict[Path, Fraction] = {}
        self._expr(lp, terms, Fraction(1))
        if lp.accept("="):
            self._expr(lp, terms, Fraction(-1))
        lp.done()
        nonzero = {p: c for p, c in terms.items() if c}
        if not nonzero:
            raise ZeroRelation("relation is zero", lp.lineno, lp.tokens[0].col)
        self.relations.append((lp.lineno, nonzero))

    def _expr(self, lp: _LineParser, terms: dict, sign: Fraction):
        s = -sign if lp.accept("-") else sign
        if s == sign:
            lp.accept("+")
        while True:
            start = lp.peek()
            coef, path = self._term(lp)
            if path is None:
                if coef != 0:
                    raise lp.error("a relation term needs a path", start)
            else:
                if terms:
                    ref = next(iter(terms))
                    if (path.source, path.target) != (ref.source, ref.target):
                        raise lp.error(
                            f"terms are not parallel: {path} runs {path.source}->{path.target}, "
                            f"expected {ref.source}->{ref.target}", start, CompositionMismatch)
                terms[path] = terms.get(path, Fraction(0)) + s * coef
            if lp.accept("+"):
                s = sign
            elif lp.accept("-"):
                s = -sign
            else:
                return

    def _term(self, lp: _LineParser) -> tuple[Fraction, Path | None]:
        coef = Fraction(1)
        names: list[_Token] = []
        while True:
            tok = lp.peek()
            if tok is None:
                raise lp.error("expected a coefficient or an arrow")
            if tok.kind == "num":
                if names:
                    raise lp.error("coefficients must precede the path", tok)
                lp.i += 1
                num = int(tok.text)
                if lp.accept("/"):
                    den = lp.take("num")
                    if int(den.text) == 0:
                        raise lp.error("division by zero", den)
                    coef *= Fraction(num, int(den.text))
                else:
                    coef *= num
            elif tok.kind == "name":
                lp.i += 1
                if tok.text not in self.arrows:
                    raise lp.error(f"unknown arrow {tok.text!r}", tok, UnknownArrow)
                names.append(tok)
            else:
                raise lp.error(f"unexpected {tok.text!r}")
            if not lp.accept("*"):
                break
        if not names:
            return coef, None
        arrs = [self.arrows[t.text] for t in names]
        for (ta, a), b in zip(zip(names, arrs), arrs[1:]):
            if a.target != b.source:
                raise lp.error(
                    f"{a.name}*{b.name} does not compose: target of {a.name} is {a.target}, "
                    f"source of {b.name} is {b.source}", ta, CompositionMismatch)
        return coef, Path(arrs[0].source, arrs[-1].target, tuple(a.name for a in arrs))


def parse_file(text: str) -> Presentation:
    """Parse a quiver file into a :class:`~relext.quiver.Presentation`."""
    return _FileParser().parse(text)


def format_presentation(p: Presentation, header: str | None = None) -> str:
    """Serialize a presentation so that :func:`parse_file` reads it back."""
    lines = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    f = p.field
    lines.append("field Q" if f.characteristic == 0 else f"field F {f.characteristic}")
    lines.append("vertex " + " ".join(p.quiver.vertices))
    width = max((len(a.name) for a in p.quiver.arrows), default=0)
    for a in p.quiver.arrows:
        lines.append(f"arrow {a.name:<{width}} : {a.source} -> {a.target}")
    for r in p.relations:
        lines.append("relation " + r.format(p.quiver))
    return "\n".join(lines) + "\n"
