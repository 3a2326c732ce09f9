"""Command-line front end: ``relext <command> FILE [options]``.

Exit codes: 0 success, 1 bad input, 2 violated mathematical precondition,
3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import Algebra, build_algebra
from .bimodule import Bimodule, bimodule_top, ext2_bimodule
from .errors import InputError, InternalError, RelextError
from .extension import (ExtendedQuiver, ExtensionAlgebra, extension_projectives, has_two_cycle,
                        present_extension, quiver_from_extension, relext_quiver, trivial_extension)
from .field import Field
from .modules import format_loewy, injective, loewy_series, projective, simple
from .parser import format_presentation, parse_file
from .quiver import Presentation
from .resolution import AboveBound, ext_dim, global_dimension, minimal_resolution

SUBCOMMANDS = ("check", "info", "projectives", "injectives", "ext", "extend", "present", "quiver")
FORMATTED = ("extend", "quiver")


@dataclass
class Command:
    subcommand: str
    input_path: str
    output_format: str = "text"
    field_override: str | None = None
    flags: dict = dc_field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relext", description="Relation-extensions of bound quiver algebras.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    helps = {
        "check": "acyclicity, admissibility, dimension, global dimension, 2-cycles",
        "info": "basis and multiplication data of the algebra",
        "projectives": "indecomposable projectives with Loewy series",
        "injectives": "indecomposable injectives with Loewy series",
        "ext": "Ext dimensions between simples and between injectives and projectives",
        "extend": "the relation-extension and its projectives",
        "present": "a quiver file presenting the relation-extension",
        "quiver": "the quiver of the relation-extension",
    }
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("input_path", metavar="FILE")
        sp.add_argument("--field", dest="field_override", metavar="FIELD",
                        help="override the field declared in the file, e.g. Q or f5")
        if name == "check":
            sp.add_argument("--bound", type=int, default=3, help="global dimension search bound")
        if name == "ext":
            sp.add_argument("--degree", type=int, default=2)
        if name in FORMATTED:
            fmt = sp.add_mutually_exclusive_group()
            fmt.add_argument("--format", choices=("text", "dot", "json"), default=None)
            fmt.add_argument("--dot", action="store_const", const="dot", dest="format")
            fmt.add_argument("--json", action="store_const", const="json", dest="format")
        if name in ("extend", "present", "quiver"):
            sp.add_argument("--names", help="comma separated names for the new arrows")
    return parser


def parse_command(argv: Sequence[str]) -> Command:
    ns = build_parser().parse_args(list(argv))
    flags = {k: v for k, v in vars(ns).items()
             if k not in ("subcommand", "input_path", "field_override", "format")}
    return Command(ns.subcommand, ns.input_path, getattr(ns, "format", None) or "text",
                   ns.field_override, flags)


def _load(cmd: Command) -> Presentation:
    try:
        with open(cmd.input_path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {cmd.input_path}: {exc}") from None
    p = parse_file(text)
    if cmd.field_override:
        try:
            fld = Field.parse(cmd.field_override)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        p = p.with_field(fld)
    return p


def _names(cmd: Command):
    raw = cmd.flags.get("names")
    return None if raw is None else [s.strip() for s in raw.split(",") if s.strip()]


@dataclass
class _Extension:
    algebra: Algebra
    bimodule: Bimodule
    ext: ExtensionAlgebra
    quiver: ExtendedQuiver


def _extend(p: Presentation, names) -> _Extension:
    a = build_algebra(p)
    m = ext2_bimodule(a)
    try:
        e = trivial_extension(a, m, names)
    except ValueError as exc:
        if isinstance(exc, RelextError):
            raise
        raise InputError(str(exc)) from None
    eq = quiver_from_extension(e)
    if p.quiver.is_acyclic:
        expected = relext_quiver(p, names)
        if expected.arrow_counts() != eq.arrow_counts():
            raise InternalError("relation counting and the extension's rad/rad^2 disagree")
        top = bimodule_top(m)
        if top != eq.new_arrow_counts():
            raise InternalError("the bimodule top disagrees with the new arrows")
    return _Extension(a, m, e, eq)


def _fmt_dims(vec: Sequence[int]) -> str:
    return "(" + ",".join(str(d) for d in vec) + ")"


def _check(cmd: Command) -> str:
    p = _load(cmd)
    bound = cmd.flags["bound"]
    if bound < 0:
        raise InputError("--bound must be >= 0")
    acyclic = p.quiver.is_acyclic
    a = build_algebra(p)
    g = global_dimension(a, bound)
    lines = [f"acyclic: {'yes' if acyclic else 'no'}",
             "admissible: yes",
             f"dim C = {a.dim}",
             f"gldim C = {g}" if not isinstance(g, AboveBound) else f"gldim C {g}"]
    small = not isinstance(g, AboveBound) and g <= 2
    if acyclic and small:
        q = _extend(p, None).quiver.quiver
        which = "extension quiver"
    else:
        q = p.quiver
        which = "input quiver"
    if has_two_cycle(q):
        lines.append(f"2-cycle present: NOT cluster-tilted-shaped ({which})")
    else:
        lines.append(f"2-cycle absent ({which})")
    return "\n".join(lines)


def _info(cmd: Command) -> str:
    p = _load(cmd)
    a = build_algebra(p)
    q = p.quiver
    lines = [f"field {p.field.name}",
             f"vertices {' '.join(q.vertices)}",
             f"arrows {len(q.arrows)}; relations {len(p.relations)}; acyclic {'yes' if q.is_acyclic else 'no'}",
             f"dim C = {a.dim}; Loewy length {a.nilpotency_index}",
             "basis:"]
    for label, (x, y) in zip(a.labels, a.tags):
        lines.append(f"  {label}: {x} -> {y}")
    return "\n".join(lines)


def _modules(cmd: Command, kind: str) -> str:
    p = _load(cmd)
    a = build_algebra(p)
    make = projective if kind == "P" else injective
    lines = []
    for x in a.vertices:
        mod = make(a, x)
        lines.append(f"{kind}_{x}: {format_loewy(loewy_series(mod), a.vertices)} "
                     f"dim vector {_fmt_dims(mod.dimension_vector)}")
    return "\n".join(lines)


def _ext(cmd: Command) -> str:
    p = _load(cmd)
    a = build_algebra(p)
    i = cmd.flags["degree"]
    if i < 0:
        raise InputError("--degree must be >= 0")
    vs = a.vertices
    lines = [f"dim Ext^{i}(S_x, S_y):"]
    for x in vs:
        res = minimal_resolution(simple(a, x), i + 1)
        row = [ext_dim(simple(a, x), simple(a, y), i, res) for y in vs]
        lines.append(f"  S_{x}: " + " ".join(str(d) for d in row))
    lines.append(f"dim Ext^{i}(I_x, P_y):")
    for x in vs:
        inj = injective(a, x)
        res = minimal_resolution(inj, i + 1)
        row = [ext_dim(inj, projective(a, y), i, res) for y in vs]
        lines.append(f"  I_{x}: " + " ".join(str(d) for d in row))
    return "\n".join(lines)


def _arrow_list(eq: ExtendedQuiver) -> str:
    q = eq.quiver
    return ", ".join(f"{n}: {q.arrow(n).source} -> {q.arrow(n).target}" for n in eq.new_arrows)


def _json_document(x: _Extension) -> str:
    q = x.quiver.quiver
    new = set(x.quiver.new_arrows)
    doc = {
        "vertices": list(q.vertices),
        "arrows": [{"name": ar.name, "src": ar.source, "tgt": ar.target, "new": ar.name in new}
                   for ar in q.arrows],
        "dims": {"algebra": x.algebra.dim, "ext2": x.bimodule.dim, "extension": x.ext.total.dim},
        # dim e_x M e_y = dim Ext^2(I_y, P_x)
        "ext_table": [{"injective": y, "projective": px, "dim": d}
                      for (px, y), d in sorted(x.bimodule.pair_components.items(),
                                               key=lambda kv: (q.vertex_index[kv[0][1]],
                                                               q.vertex_index[kv[0][0]]))],
    }
    return json.dumps(doc, indent=2)


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(eq: ExtendedQuiver, name: str = "Q") -> str:
    """DOT digraph of ``eq``; added arrows are dashed."""
    q = eq.quiver
    new = set(eq.new_arrows)
    lines = [f"digraph {_dot_id(name)} {{"]
    for v in q.vertices:
        lines.append(f"  {_dot_id(v)};")
    for ar in q.arrows:
        style = ", style=dashed" if ar.name in new else ""
        lines.append(f"  {_dot_id(ar.source)} -> {_dot_id(ar.target)} [label={_dot_id(ar.name)}{style}];")
    lines.append("}")
    return "\n".join(lines)


def _extend_text(x: _Extension) -> str:
    k = len(x.quiver.new_arrows)
    if k == 0:
        head = "0 new arrows; extension = input algebra"
    else:
        word = "new arrow" if k == 1 else "new arrows"
        head = (f"{word} {_arrow_list(x.quiver)}; dim Ext2(DC,C) = {x.bimodule.dim}; "
                f"dim extension = {x.ext.total.dim}")
    vs = x.algebra.vertices
    lines = [head]
    comps = x.bimodule.pair_components
    if comps:
        lines.append("components dim e_x Ext2(DC,C) e_y:")
        for px in vs:
            for y in vs:
                if (px, y) in comps:
                    lines.append(f"  ({px}, {y}): {comps[(px, y)]}")
    lines.append("extension projectives:")
    for v, mod in extension_projectives(x.ext).items():
        lines.append(f"  P~_{v}: {format_loewy(loewy_series(mod), vs)} "
                     f"dim vector {_fmt_dims(mod.dimension_vector)}")
    return "\n".join(lines)


def _quiver_text(eq: ExtendedQuiver) -> str:
    q = eq.quiver
    new = set(eq.new_arrows)
    lines = [f"vertices {' '.join(q.vertices)}"]
    for ar in q.arrows:
        lines.append(f"{ar.name}: {ar.source} -> {ar.target}" + (" (new)" if ar.name in new else ""))
    return "\n".join(lines)


def _extension_command(cmd: Command) -> str:
    p = _load(cmd)
    x = _extend(p, _names(cmd))
    if cmd.subcommand == "present":
        pres = present_extension(x.ext)
        return format_presentation(pres, header="relation-extension of " + cmd.input_path).rstrip("\n")
    if cmd.output_format == "json":
        return _json_document(x)
    if cmd.output_format == "dot":
        return to_dot(x.quiver)
    if cmd.subcommand == "extend":
        return _extend_text(x)
    return _quiver_text(x.quiver)


_DISPATCH = {
    "check": _check,
    "info": _info,
    "projectives": lambda c: _modules(c, "P"),
    "injectives": lambda c: _modules(c, "I"),
    "ext": _ext,
    "extend": _extension_command,
    "present": _extension_command,
    "quiver": _extension_command,
}


def run(cmd: Command) -> tuple[int, str]:
    """Execute ``cmd``; returns the exit status and the emitted document."""
    if cmd.subcommand not in _DISPATCH:
        return 1, f"error: unknown command {cmd.subcommand!r}"
    if cmd.output_format not in ("text", "dot", "json"):
        return 1, f"error: unknown output format {cmd.output_format!r}"
    if cmd.output_format != "text" and cmd.subcommand not in FORMATTED:
        return 1, f"error: {cmd.subcommand} only produces text"
    try:
        return 0, _DISPATCH[cmd.subcommand](cmd)
    except RelextError as exc:
        return exc.exit_code, f"error: {type(exc).__name__}: {exc}"


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cmd = parse_command(sys.argv[1:] if argv is None else argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    code, doc = run(cmd)
    print(doc, file=sys.stdout if code == 0 else sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
