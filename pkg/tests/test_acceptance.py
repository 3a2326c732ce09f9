"""Acceptance criteria 1-9.

Every test prints one ``PASS``/``FAIL`` line; all comparisons are exact
integer or exact field equality (tolerance: none).  Run directly with
``python tests/test_acceptance.py`` to print the lines without pytest.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path as FsPath

sys.path.insert(0, str(FsPath(__file__).parent))

from corpus import FIXTURE_FILES, corpus, fixture, ideal_elements  # noqa: E402
from relext import (ModuleMap, Presentation, build_algebra, dual_regular, ext2_bimodule,  # noqa: E402
                    ext_dim, extension_projectives, format_loewy, global_dimension, has_two_cycle,
                    ideal_top_counts, injective, injective_dimension, loewy_series,
                    minimal_resolution, new_arrows_close_cycle, present_extension, projective,
                    projective_dimension, quiver_isomorphism, simple)
from relext.resolution import lift_images  # noqa: E402

RESULTS: list[str] = []


def report(number: int, title: str, failures: list[str], detail: str) -> None:
    ok = not failures
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{detail}]"
    if failures:
        line += " first failure: " + failures[0]
    print(line)
    RESULTS.append(line)
    assert ok, line


def expect(failures: list[str], what: str, got, want) -> None:
    if got != want:
        failures.append(f"{what}: got {got!r}, expected {want!r}")


def loewy(m) -> str:
    return format_loewy(loewy_series(m), m.algebra.vertices)


def test_criterion_1_triangle():
    case = fixture("triangle.q")
    a, m = case.algebra, case.bimodule
    bad: list[str] = []
    expect(bad, "dim C", a.dim, 6)
    expect(bad, "gldim C", global_dimension(a, 4), 2)
    ext2 = {(f"I{y}", f"P{x}"): ext_dim(injective(a, y), projective(a, x), 2)
            for x in a.vertices for y in a.vertices}
    expect(bad, "Ext2(I,P)", {k: v for k, v in ext2.items() if v},
           {("I3", "P1"): 1, ("I3", "P3"): 1, ("I1", "P1"): 1, ("I1", "P3"): 1})
    expect(bad, "pd I2", projective_dimension(injective(a, "2"), 4), 1)
    expect(bad, "id P2", injective_dimension(projective(a, "2"), 4), 1)
    expect(bad, "dim Ext2(DC,C)", m.dim, 4)
    eq = case.extension_quiver
    expect(bad, "base quiver", eq.base_quiver(), case.presentation.quiver)
    expect(bad, "new arrows", eq.new_arrow_counts(), {("1", "3"): 1})
    proj = extension_projectives(case.extension)
    expect(bad, "Loewy", {x: loewy(p) for x, p in proj.items()},
           {"1": "[1 / 3 / 1]", "2": "[2 / 1]", "3": "[3 / 1 2 / 3 / 1]"})
    expect(bad, "dim vectors", [p.dimension_vector for p in proj.values()],
           [(2, 0, 1), (1, 1, 0), (2, 1, 2)])
    expect(bad, "dim extension", case.extension.total.dim, 10)
    quotient = build_algebra(present_extension(case.extension))
    expect(bad, "presented quotient dim", quotient.dim, 10)
    expect(bad, "presented quotient quiver", quotient.quiver, eq.quiver)
    expect(bad, "2-cycle", has_two_cycle(eq.quiver), True)
    report(1, "three-vertex zero-relation algebra end-to-end", bad, "15 exact checks")


def test_criterion_2_double_zero():
    case = fixture("double_zero.q")
    a = case.algebra
    bad: list[str] = []
    expect(bad, "dim Ext2(I4,P1)", ext_dim(injective(a, "4"), projective(a, "1"), 2), 2)
    eq = case.extension_quiver
    expect(bad, "base quiver", eq.base_quiver(), case.presentation.quiver)
    expect(bad, "new arrows", eq.new_arrow_counts(), {("1", "4"): 2})
    expect(bad, "2-cycle", has_two_cycle(eq.quiver), False)
    proj = extension_projectives(case.extension)
    expect(bad, "dim vectors", [p.dimension_vector for p in proj.values()],
           [(1, 1, 1, 2), (1, 2, 0, 1), (1, 0, 2, 1), (0, 1, 1, 1)])
    expect(bad, "presented quotient dim", build_algebra(present_extension(case.extension)).dim, 16)
    report(2, "two zero relations 4->1 give a doubled arrow 1->4", bad, "6 exact checks")


def test_criterion_3_two_algebras_one_extension():
    c1, c2 = fixture("commutative_square.q"), fixture("claw.q")
    q1, q2 = c1.counted_quiver, c2.counted_quiver
    bad: list[str] = []

    def degrees(q):
        return sorted((len(q.arrows_from(v)), len(q.arrows_to(v))) for v in q.vertices)

    expect(bad, "degree sequences", degrees(q1.quiver), degrees(q2.quiver))
    phi = quiver_isomorphism(q1.quiver, q2.quiver)
    if phi is None:
        bad.append("no vertex bijection found")
    else:
        for (s, t), c in q1.quiver.arrow_counts().items():
            expect(bad, f"arrows {s}->{t} under bijection", q2.quiver.arrow_counts().get((phi[s], phi[t]), 0), c)
    for name, q in (("C1", q1), ("C2", q2)):
        expect(bad, f"{name} vertices", len(q.quiver.vertices), 4)
        expect(bad, f"{name} new arrows close cycles", new_arrows_close_cycle(q), True)
    expect(bad, "C1 added arrows", len(q1.new_arrows), 1)
    d1 = build_algebra(present_extension(c1.extension)).dim
    d2 = build_algebra(present_extension(c2.extension)).dim
    expect(bad, "presented quotient dims", d1, d2)
    detail = (f"bijection {phi}; C1 gains {len(q1.new_arrows)} arrow, C2 gains {len(q2.new_arrows)}; "
              f"{len(q1.quiver.arrows)} arrows each; quotient dims {d1} = {d2}")
    report(3, "commutative square and claw share the extension quiver", bad, detail)


def test_criterion_4_three_routes():
    cases = corpus()
    bad = []
    for k, case in enumerate(cases):
        r1 = case.counted_quiver.arrow_counts()
        r2 = case.extension_quiver.arrow_counts()
        r3 = case.top_counts
        if not r1 == r2 == r3:
            bad.append(f"instance {k}: {r1} / {r2} / {r3}")
    report(4, "three routes to the extension quiver agree", bad,
           f"{len(cases)} instances, {len(bad)} disagreements")


def test_criterion_5_relation_counts_are_ext2():
    cases = corpus()
    rng = random.Random(5)
    bad = []
    pairs = 0
    for k, case in enumerate(cases):
        p, a = case.presentation, case.algebra
        counts = ideal_top_counts(p)
        for x in a.vertices:
            sx = simple(a, x)
            res = minimal_resolution(sx, 3)
            for y in a.vertices:
                pairs += 1
                e = ext_dim(sx, simple(a, y), 2, res)
                if e != counts.get((x, y), 0):
                    bad.append(f"instance {k} pair ({x},{y}): count {counts.get((x, y), 0)}, Ext2 {e}")
        if p.relations:
            bigger = Presentation(p.quiver, p.relations + tuple(ideal_elements(p, rng, 3)))
            if ideal_top_counts(bigger) != counts:
                bad.append(f"instance {k}: counts change with redundant relations")
    report(5, "minimal relation counts equal dim Ext2(S_x,S_y)", bad,
           f"{len(cases)} instances, {pairs} pairs, {len(bad)} disagreements")


def test_criterion_6_projective_dimensions():
    cases = list(corpus()) + [fixture(n) for n in FIXTURE_FILES]
    bad = []
    checked = 0
    for k, case in enumerate(cases):
        comps = case.bimodule.pair_components
        for x, pt in extension_projectives(case.extension).items():
            checked += 1
            em = sum(c for (s, _), c in comps.items() if s == x)
            want = projective(case.algebra, x).total_dim + em
            if pt.total_dim != want:
                bad.append(f"case {k} vertex {x}: {pt.total_dim} != {want}")
    report(6, "dim P~_x = dim P_x + dim e_x Ext2(DC,C)", bad,
           f"{len(cases)} algebras, {checked} projectives, {len(bad)} mismatches")


def test_criterion_7_hereditary():
    cases = [c for c in corpus() if c.hereditary]
    bad = []
    for k, case in enumerate(cases):
        e = case.extension
        if case.bimodule.dim != 0:
            bad.append(f"hereditary instance {k}: dim Ext2 = {case.bimodule.dim}")
        elif e.total.table != case.algebra.table or e.total.labels != case.algebra.labels or e.new_arrows:
            bad.append(f"hereditary instance {k}: extension differs from the input")
    if not cases:
        bad.append("corpus has no relation-free instance")
    report(7, "hereditary inputs extend to themselves", bad, f"{len(cases)} relation-free instances")


def test_criterion_8_nonvanishing():
    cases = [c for c in corpus() if not c.hereditary]
    bad = []
    for k, case in enumerate(cases):
        g = global_dimension(case.algebra, 2)
        if g != 2:
            bad.append(f"instance {k}: gldim {g}")
        if case.bimodule.dim == 0:
            bad.append(f"instance {k}: Ext2(DC,C) = 0")
        if case.extension_quiver.quiver.is_acyclic:
            bad.append(f"instance {k}: extension quiver is acyclic")
    if not cases:
        bad.append("corpus has no instance with relations")
    report(8, "Ext2(DC,C) != 0 and cyclic extension quiver when gldim = 2", bad,
           f"{len(cases)} instances with relations")


def test_criterion_9_lift_independence():
    bad = []
    differing = 0
    for name in FIXTURE_FILES:
        a = fixture(name).algebra
        m1 = ext2_bimodule(a, random.Random(1))
        m2 = ext2_bimodule(a, random.Random(2))
        if (m1.tags, m1.left, m1.right) != (m2.tags, m2.left, m2.right):
            bad.append(f"{name}: action matrices depend on the lift")
        da = dual_regular(a)
        res = minimal_resolution(da, 3)
        ident = ModuleMap.identity(da)
        if lift_images(res, ident, random.Random(1)) != lift_images(res, ident, random.Random(2)):
            differing += 1
    if differing == 0:
        bad.append("the random lifts never differed at chain level")
    report(9, "bimodule actions do not depend on chain lifts", bad,
           f"{len(FIXTURE_FILES)} fixtures, chain-level lifts differed on {differing}")


if __name__ == "__main__":
    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
