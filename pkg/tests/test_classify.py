import pytest
from hypothesis import given, settings, strategies as st

from lpak.classify import (
    CORANK,
    RANK,
    HypothesisError,
    InconsistentInput,
    Verdict,
    morita_equivalent,
    number_field_family,
    predicted_f_value,
    recover_singular_count,
    singular_count_exact_size,
    singular_count_number_field,
    singular_count_size,
    valid_number_field_indices,
)
from lpak.graph import INFINITY, Graph, partition_vertices
from lpak.groups import AlgClosed, FiniteField, GroupExpr, NumberField, rank_of
from lpak.intlinalg import FgAbGroup
from lpak.ktheory import k0, k_group

from strategies import simple_infinite_graphs

Q = NumberField(1, 0)
TWO_VERTEX = Graph.from_edges(["v", "w"], [("v", "v", 2), ("v", "w", 1), ("w", "v", INFINITY)])
# the same cycle fed by two infinite emitters: K_0 = Z^2, two singular vertices
THREE_VERTEX = Graph.from_edges(["v", "w", "x"], [
    ("v", "v", 2), ("v", "w", 1), ("v", "x", 1), ("w", "v", INFINITY), ("x", "v", INFINITY)])
# K_0 = Z^2 as well, but with a single singular vertex
ONE_EMITTER_RANK_TWO = Graph.from_edges(["a", "b", "w"], [
    ("a", "a", 1), ("a", "b", 1), ("b", "b", 2), ("a", "w", 1), ("b", "w", 1), ("w", "a", INFINITY)])


class TestSizeFunctions:
    @given(st.integers(0, 5), st.lists(st.integers(2, 40), max_size=4),
           st.integers(0, 5), st.lists(st.integers(2, 40), max_size=4))
    def test_axioms_on_fg(self, r1, t1, r2, t2):
        g = GroupExpr.from_fg(FgAbGroup.from_cyclic(t1, r1))
        h = GroupExpr.from_fg(FgAbGroup.from_cyclic(t2, r2))
        for f in (RANK, CORANK):
            assert f(GroupExpr.from_fg(FgAbGroup.from_cyclic(t1))) == 0
            assert f(g + h) == f(g) + f(h)
        assert CORANK(g) <= RANK(g)

    def test_exactness_on_extension(self):
        # 0 -> Z --x2--> Z -> Z/2 -> 0 and 0 -> Z -> Z + Z/3 -> Z/3 -> 0
        z, z2, z3 = GroupExpr.free(1), GroupExpr.from_fg(FgAbGroup.from_cyclic([2])), \
            GroupExpr.from_fg(FgAbGroup.from_cyclic([3]))
        assert RANK(z) == RANK(z) + RANK(z2)
        assert RANK(z + z3) == RANK(z) + RANK(z3)
        assert RANK.exact and not CORANK.exact


class TestFormulas:
    def test_predicted(self):
        assert predicted_f_value(TWO_VERTEX, Q, 6, RANK) == 0
        assert predicted_f_value(TWO_VERTEX, Q, 5, RANK) == 1
        assert predicted_f_value(TWO_VERTEX, FiniteField(5), 2, RANK) == 0

    def test_predicted_rejects(self):
        with pytest.raises(HypothesisError):
            predicted_f_value(TWO_VERTEX, Q, 2, RANK)  # rank K_1(Q) is infinite
        with pytest.raises(HypothesisError):
            predicted_f_value(TWO_VERTEX, Q, 5, CORANK)  # size-only needs corank K_5(Q) = 0
        with pytest.raises(HypothesisError):
            predicted_f_value(TWO_VERTEX, AlgClosed(0), 2, RANK)  # rank of D_2 unknown

    def test_exact_size(self):
        assert singular_count_exact_size(Q, 6, RANK, 1, 0) == 1
        assert singular_count_exact_size(NumberField(1, 1), 6, RANK, 2, 2) == 1
        with pytest.raises(InconsistentInput):
            singular_count_exact_size(Q, 6, RANK, 1, 5)
        with pytest.raises(HypothesisError):
            singular_count_exact_size(Q, 6, CORANK, 1, 0)
        with pytest.raises(HypothesisError):
            singular_count_exact_size(Q, 5, RANK, 1, 0)  # rank K_4(Q) = 0

    def test_size(self):
        assert singular_count_size(Q, 6, RANK, 1, 0) == 1
        assert singular_count_size(FiniteField(7), 1, CORANK, 3, 1) == 2
        with pytest.raises(InconsistentInput):
            singular_count_size(NumberField(2, 0), 6, RANK, 3, 1)
        with pytest.raises(HypothesisError):
            singular_count_size(Q, 5, RANK, 1, 0)

    def test_number_field(self):
        assert singular_count_number_field(1, 0, 0, 1, 0) == 1
        assert singular_count_number_field(0, 1, 0, 3, 1, family="4+4k") == 2
        assert singular_count_number_field(2, 1, 1, 4, 12) == 0
        with pytest.raises(HypothesisError):
            singular_count_number_field(1, 0, 0, 1, 0, family="4+4k")
        with pytest.raises(InconsistentInput):
            singular_count_number_field(2, 0, 0, 1, 3)

    def test_indices(self):
        assert valid_number_field_indices(NumberField(1, 0), 14) == [6, 10, 14]
        assert valid_number_field_indices(NumberField(0, 1), 10) == [4, 6, 8, 10]
        assert number_field_family(10) == ("6+4k", 1)
        assert number_field_family(8) == ("4+4k", 1)
        with pytest.raises(HypothesisError):
            number_field_family(5)

    @settings(max_examples=60)
    @given(simple_infinite_graphs, st.sampled_from([(1, 0), (0, 1), (2, 1), (3, 2)]))
    def test_round_trip(self, g, places):
        f = NumberField(*places)
        s = len(partition_vertices(g).singular)
        rank0 = k0(g).free_rank
        for n in valid_number_field_indices(f, 14):
            family, k = number_field_family(n)
            predicted = predicted_f_value(g, f, n, RANK)
            assert predicted == rank_of(k_group(g, f, n).group)
            assert singular_count_number_field(f.r1, f.r2, k, rank0, predicted, family) == s
            if family == "6+4k":
                assert singular_count_exact_size(f, n, RANK, rank0, predicted) == s
                assert singular_count_size(f, n, RANK, rank0, predicted) == s
        for field in (FiniteField(3), AlgClosed(0), AlgClosed(5), f):
            assert recover_singular_count(g, field) == s


class TestMorita:
    def test_reflexive(self):
        d = morita_equivalent(TWO_VERTEX, TWO_VERTEX, Q)
        assert d.verdict is Verdict.EQUIVALENT

    def test_singular_count_distinguishes(self):
        assert k0(ONE_EMITTER_RANK_TWO) == k0(THREE_VERTEX) == FgAbGroup(2)
        for field in (Q, FiniteField(3), AlgClosed(0)):
            d = morita_equivalent(ONE_EMITTER_RANK_TWO, THREE_VERTEX, field)
            assert d.verdict is Verdict.NOT_EQUIVALENT
            assert [x["singular"] for x in d.certificate["graphs"]] == [1, 2]

    def test_k0_rank_bounds_singular_count(self):
        # rank K_0 = m + s, so K_0 = Z leaves room for at most one singular vertex
        assert k0(TWO_VERTEX) == FgAbGroup(1)
        assert k0(THREE_VERTEX).free_rank >= 2

    def test_preconditions(self):
        not_l = Graph.from_edges(["v", "w"], [("v", "v", 1), ("w", "v", INFINITY)])
        d = morita_equivalent(not_l, TWO_VERTEX, Q)
        assert d.verdict is Verdict.PRECONDITION_FAILED
        assert "not simple" in d.certificate["failed_precondition"]
        finite = Graph.from_edges(["v"], [("v", "v", 2)])
        d = morita_equivalent(TWO_VERTEX, finite, Q)
        assert "finitely many edges" in d.certificate["failed_precondition"]

    @settings(max_examples=40)
    @given(simple_infinite_graphs, simple_infinite_graphs,
           st.sampled_from([Q, NumberField(0, 1), FiniteField(4), AlgClosed(0)]), st.data())
    def test_symmetry_and_relabel(self, e, f, field, data):
        ab = morita_equivalent(e, f, field).verdict
        assert ab == morita_equivalent(f, e, field).verdict
        perm = data.draw(st.permutations(e.vertices))
        renamed = e.relabel({v: f"r{i}" for i, v in enumerate(e.vertices)}).reorder(
            [f"r{e.vertices.index(v)}" for v in perm])
        assert morita_equivalent(e, renamed, field).verdict is Verdict.EQUIVALENT
        assert morita_equivalent(renamed, f, field).verdict == ab
