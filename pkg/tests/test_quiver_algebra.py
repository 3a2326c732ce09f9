import random

import pytest

from corpus import all_paths, corpus, ideal_elements, load
from relext import (CompositionMismatch, CyclicQuiver, DuplicateName, Field, InfiniteDimensional,
                    NonAdmissibleIdeal, Path, PathVector, Presentation, Quiver, UnknownArrow,
                    UnknownVertex, build_algebra, ideal_top_counts, multiply, opposite,
                    truncated_ideal)

Q = Field.rationals()


@pytest.fixture(scope="module")
def tri():
    return build_algebra(load("triangle.q"))


def element(a, label):
    return a.basis_vector(a.labels.index(label))


class TestQuiver:
    def test_validation(self):
        with pytest.raises(DuplicateName):
            Quiver(["1", "1"], [])
        with pytest.raises(DuplicateName):
            Quiver(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])
        with pytest.raises(DuplicateName):
            Quiver(["1", "a"], [("a", "1", "1")])
        with pytest.raises(UnknownVertex):
            Quiver(["1"], [("a", "1", "2")])

    def test_acyclicity_is_computed(self):
        assert Quiver(["1", "2"], [("a", "1", "2")]).is_acyclic
        assert not Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")]).is_acyclic
        assert not Quiver(["1"], [("a", "1", "1")]).is_acyclic

    def test_left_to_right_composition(self):
        q = load("triangle.q").quiver
        p = q.path(["alpha", "beta"])
        assert (p.source, p.target) == ("3", "1")
        with pytest.raises(CompositionMismatch):
            q.path(["alpha", "gamma"])
        with pytest.raises(UnknownArrow):
            q.path(["alpha", "omega"])
        assert q.path(["alpha"]) * q.path(["beta"]) == p
        assert q.path(["beta"]) * q.path(["alpha"]) is None

    def test_paths_in_key_order(self):
        q = load("double_zero.q").quiver
        two = q.paths_of_length(2)
        assert [str(p) for p in two] == ["alpha*beta", "gamma*delta"]
        assert q.paths_of_length(3) == []
        keys = [q.path_key(p) for p in all_paths(q)]
        assert keys == sorted(keys)

    def test_path_vector_parallel(self):
        q = load("commutative_square.q").quiver
        ab, gd = q.path(["alpha", "beta"]), q.path(["gamma", "delta"])
        v = PathVector.from_terms([(1, ab), (-1, gd)])
        assert v.format(q) == "alpha*beta - gamma*delta"
        assert PathVector.from_terms([(1, ab), (-1, ab)]).is_zero()
        with pytest.raises(CompositionMismatch):
            PathVector.from_terms([(1, ab), (1, q.path(["alpha"]))])

    def test_presentation_admissibility(self):
        q = Quiver(["1", "2"], [("a", "1", "2")])
        with pytest.raises(NonAdmissibleIdeal):
            Presentation(q, (PathVector.from_terms([(1, q.path(["a"]))]),))

    def test_relation_vanishing_mod_p(self):
        p = load("commutative_square.q")
        q = p.quiver
        rel = PathVector.from_terms([(5, q.path(["alpha", "beta"]))])
        with pytest.raises(NonAdmissibleIdeal):
            Presentation(q, (rel,), Field.prime(5))


class TestBuildAlgebra:
    def test_triangle_basis(self, tri):
        assert tri.dim == 6
        assert tri.labels == ("e_1", "e_2", "e_3", "alpha", "beta", "gamma")

    def test_semisimple(self):
        a = build_algebra(Presentation(Quiver(["1", "2", "3"], []), ()))
        assert a.dim == 3
        assert a.table == {(i, i): {i: 1} for i in range(3)}

    def test_double_zero_dimension(self):
        assert build_algebra(load("double_zero.q")).dim == 8

    def test_commutativity_relation(self):
        a = build_algebra(load("commutative_square.q"))
        assert a.dim == 9                       # 4 + 4 + 2 - 1
        assert "alpha*beta" in a.labels and "gamma*delta" not in a.labels
        gd = multiply(a, element(a, "gamma"), element(a, "delta"))
        assert gd == element(a, "alpha*beta")

    def test_multiplication_examples(self, tri):
        e3 = element(tri, "e_3")
        assert multiply(tri, e3, e3) == e3
        assert not any(multiply(tri, element(tri, "alpha"), element(tri, "beta")))
        gamma = element(tri, "gamma")
        assert multiply(tri, e3, gamma) == gamma
        assert not any(multiply(tri, gamma, e3))

    def test_algebra_axioms(self, tri):
        assert tri.is_associative()
        assert tri.has_orthogonal_idempotents()

    def test_radical_filtration(self, tri):
        dims = [m.nrows for m in tri.radical_filtration]
        assert dims == [6, 3, 0]
        assert tri.nilpotency_index == 2
        assert tri.quiver_counts() == {("3", "2"): 1, ("2", "1"): 1, ("3", "1"): 1}

    def test_dimension_plus_ideal_is_paths(self):
        for case in corpus()[:40]:
            p = case.presentation
            t = truncated_ideal(p)
            assert case.algebra.dim + len(t.echelon) == len(t.paths)

    def test_cyclic_quotient(self):
        q = Quiver(["1"], [("a", "1", "1")])
        p = Presentation(q, (PathVector.from_terms([(1, q.path(["a", "a", "a"]))]),))
        a = build_algebra(p)
        assert a.dim == 3
        assert a.is_associative()

    def test_two_cycle_quotient(self):
        q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
        rels = (PathVector.from_terms([(1, q.path(["a", "b"]))]),
                PathVector.from_terms([(1, q.path(["b", "a"]))]))
        assert build_algebra(Presentation(q, rels)).dim == 4

    def test_infinite_dimensional(self):
        q = Quiver(["1"], [("a", "1", "1")])
        with pytest.raises(InfiniteDimensional):
            build_algebra(Presentation(q, ()), length_bound=10)
        q2 = Quiver(["1"], [("a", "1", "1"), ("b", "1", "1")])
        rel = PathVector.from_terms([(1, q2.path(["a", "b"])), (-1, q2.path(["b", "a"]))])
        with pytest.raises(InfiniteDimensional):
            build_algebra(Presentation(q2, (rel,)))

    def test_prime_field(self):
        p = load("commutative_square.q").with_field(Field.prime(3))
        a = build_algebra(p)
        assert a.dim == 9
        assert a.is_associative()


class TestIdealTopCounts:
    def test_examples(self):
        assert ideal_top_counts(load("triangle.q")) == {("3", "1"): 1}
        assert ideal_top_counts(load("double_zero.q")) == {("4", "1"): 2}
        assert ideal_top_counts(load("hereditary.q")) == {}

    def test_cyclic_rejected(self):
        q = Quiver(["1"], [("a", "1", "1")])
        p = Presentation(q, (PathVector.from_terms([(1, q.path(["a", "a"]))]),))
        with pytest.raises(CyclicQuiver):
            ideal_top_counts(p)

    def test_redundant_relation_not_counted(self):
        q = Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")])
        rels = (PathVector.from_terms([(1, q.path(["a", "b"]))]),
                PathVector.from_terms([(1, q.path(["a", "b", "c"]))]))
        assert ideal_top_counts(Presentation(q, rels)) == {("1", "3"): 1}

    def test_sum_is_dim_i_minus_dim_ji_plus_ij(self):
        for case in corpus()[:60]:
            t = truncated_ideal(case.presentation)
            gens = t.minimal_generators()
            assert sum(ideal_top_counts(case.presentation).values()) == len(gens)

    def test_invariant_under_augmented_relations(self):
        rng = random.Random(7)
        for case in corpus():
            p = case.presentation
            if not p.relations:
                continue
            extra = ideal_elements(p, rng, 2)
            bigger = Presentation(p.quiver, p.relations + tuple(extra))
            assert ideal_top_counts(bigger) == ideal_top_counts(p)
            assert build_algebra(bigger).dim == case.algebra.dim


class TestOpposite:
    def test_triangle(self, tri):
        op = opposite(tri)
        assert op.dim == 6
        q = op.quiver
        assert (q.arrow("alpha").source, q.arrow("alpha").target) == ("2", "3")
        assert (q.arrow("beta").source, q.arrow("beta").target) == ("1", "2")
        beta_alpha = multiply(op, element(op, "beta"), element(op, "alpha"))
        assert not any(beta_alpha)

    def test_involution(self):
        a = build_algebra(load("double_zero.q"))
        assert opposite(opposite(a)).table == a.table

    def test_opposite_presentation_agrees(self):
        p = load("commutative_square.q")
        a = build_algebra(p).opposite()
        b = build_algebra(p.opposite())
        assert a.dim == b.dim
        assert a.quiver_counts() == b.quiver_counts()

    def test_commutative_product(self):
        a = build_algebra(Presentation(Quiver(["1", "2"], []), ()))
        assert opposite(a).table == a.table
