import itertools
import json

import pytest
from hypothesis import given, strategies as st

from lpak.graph import (
    INFINITY,
    Graph,
    GraphError,
    blocks,
    cuntz_splice,
    dump_graph,
    has_infinitely_many_edges,
    is_cofinal,
    is_simple,
    parse_graph,
    partition_vertices,
    presentation_matrix,
    satisfies_condition_l,
)

from strategies import graphs


def loops(n, name="v"):
    return Graph.from_edges([name], [(name, name, n)] if n else [])


TWO_VERTEX = Graph.from_edges(["v", "w"], [("v", "v", 2), ("v", "w", 1), ("w", "v", INFINITY)])


def doc(vertices, edges):
    return json.dumps({"vertices": vertices,
                       "edges": [{"src": s, "dst": r, "mult": m} for s, r, m in edges]})


class TestParse:
    def test_loops(self):
        g = parse_graph(doc(["v"], [("v", "v", 2)]))
        assert g.mult("v", "v") == 2

    def test_infinite(self):
        g = parse_graph(doc(["v", "w"], [("v", "w", "inf")]))
        assert g.mult("v", "w") == INFINITY

    def test_accumulates(self):
        g = parse_graph(doc(["v"], [("v", "v", 2), ("v", "v", 3)]))
        assert g.mult("v", "v") == 5

    def test_default_mult(self):
        g = parse_graph(json.dumps({"vertices": ["a", "b"], "edges": [{"src": "a", "dst": "b"}]}))
        assert g.mult("a", "b") == 1

    @pytest.mark.parametrize("text,msg", [
        (doc(["v"], [("v", "u", 1)]), "unknown vertex"),
        (doc(["v"], [("v", "v", 0)]), "multiplicity"),
        (doc(["v", "v"], []), "duplicate vertex"),
        ("{not json", "malformed"),
        (json.dumps({"edges": []}), "vertices"),
        (doc(["v"], [("v", "v", -1)]), "multiplicity"),
        (doc(["v"], [("v", "v", 1.5)]), "multiplicity"),
    ])
    def test_errors(self, text, msg):
        with pytest.raises(GraphError, match=msg):
            parse_graph(text)

    @given(graphs())
    def test_round_trip(self, g):
        assert parse_graph(dump_graph(g)) == g


class TestPartitionAndBlocks:
    def test_sink(self):
        p = partition_vertices(loops(0))
        assert p.regular == () and p.singular == ("v",)

    def test_loops(self):
        assert partition_vertices(loops(3)).regular == ("v",)

    def test_two_vertex(self):
        p = partition_vertices(TWO_VERTEX)
        assert p.regular == ("v",) and p.singular == ("w",)
        bl = blocks(TWO_VERTEX)
        assert bl.b.to_rows() == [[2]] and bl.c.to_rows() == [[1]]

    def test_blocks_empty(self):
        bl = blocks(loops(4))
        assert bl.b.to_rows() == [[4]] and bl.c.shape == (1, 0)
        bl = blocks(Graph(("a", "b"), {}))
        assert bl.b.shape == (0, 0) and bl.c.shape == (0, 2)

    def test_presentation(self):
        assert presentation_matrix(loops(5)).to_rows() == [[4]]
        assert presentation_matrix(TWO_VERTEX).to_rows() == [[1], [1]]
        assert presentation_matrix(Graph(("a", "b"), {})).shape == (2, 0)

    @given(graphs())
    def test_partition_covers(self, g):
        p = partition_vertices(g)
        assert set(p.regular).isdisjoint(p.singular)
        assert set(p.regular) | set(p.singular) == set(g.vertices)

    @given(graphs())
    def test_presentation_entries(self, g):
        p = partition_vertices(g)
        a = presentation_matrix(g)
        assert a.shape == (len(g.vertices), len(p.regular))
        rows = p.regular + p.singular
        for i, w in enumerate(rows):
            for j, v in enumerate(p.regular):
                assert a[i, j] == g.mult(v, w) - (1 if w == v else 0)


def brute_cycles(g):
    """Simple cycles as vertex sequences, by enumerating paths up to |V|."""
    out = []
    for length in range(1, len(g.vertices) + 1):
        for path in itertools.product(g.vertices, repeat=length):
            if len(set(path)) == length and all(
                    g.mult(path[i], path[(i + 1) % length]) for i in range(length)):
                out.append(path)
    return out


def brute_reach(g, v):
    seen = {v}
    for _ in range(len(g.vertices)):
        seen |= {w for u in seen for w in g.vertices if g.mult(u, w)}
    return seen


class TestPredicates:
    def test_condition_l(self):
        assert not satisfies_condition_l(loops(1))
        assert satisfies_condition_l(loops(2))
        g = Graph.from_edges(["v", "w"], [("v", "w", 1), ("w", "v", 1), ("v", "v", 1)])
        assert satisfies_condition_l(g)

    def test_cofinal(self):
        assert is_cofinal(loops(1))
        assert not is_cofinal(Graph.from_edges(["a", "b"], [("a", "a", 1), ("b", "b", 1)]))
        assert is_cofinal(Graph.from_edges(["v", "w"], [("v", "w", 1), ("w", "w", 1)]))

    def test_simple(self):
        assert is_simple(loops(2))
        assert is_simple(loops(0))
        g = Graph.from_edges(["s", "a", "b"], [("a", "a", 1), ("a", "b", 1), ("b", "a", 1)])
        assert not is_simple(g)
        assert is_simple(TWO_VERTEX)

    def test_infinite_edges(self):
        assert has_infinitely_many_edges(TWO_VERTEX)
        assert not has_infinitely_many_edges(loops(3))
        assert not has_infinitely_many_edges(Graph((), {}))

    @given(graphs(max_vertices=5, max_mult=2))
    def test_against_enumeration(self, g):
        cycles = brute_cycles(g)
        no_exit = any(all(g.out_degree(v) == 1 for v in c) for c in cycles)
        assert satisfies_condition_l(g) == (not no_exit)
        on_cycle = {v for c in cycles for v in c}
        assert is_cofinal(g) == all(on_cycle <= brute_reach(g, v) for v in g.vertices)

    @given(graphs(), st.randoms(use_true_random=False))
    def test_simple_ignores_order(self, g, rng):
        order = list(g.vertices)
        rng.shuffle(order)
        assert is_simple(g.reorder(order)) == is_simple(g)


class TestCuntzSplice:
    def test_figure(self):
        # loop at a, 2-cycle a <-> b, spliced at b
        g = Graph.from_edges(["a", "b"], [("a", "a", 1), ("a", "b", 1), ("b", "a", 1)])
        h = cuntz_splice(g, "b")
        assert h.vertices == ("a", "b", "b#s1", "b#s2")
        assert h.vertex_matrix() == [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 1], [0, 0, 1, 1]]

    @given(graphs(), st.data())
    def test_counts_and_locality(self, g, data):
        v = data.draw(st.sampled_from(g.vertices))
        h = cuntz_splice(g, v)
        assert len(h.vertices) == len(g.vertices) + 2
        fin = lambda x: sum(m for m in x.adjacency.values() if m != INFINITY)
        assert fin(h) == fin(g) + 6
        for s in g.vertices:
            for r in g.vertices:
                assert h.mult(s, r) == g.mult(s, r)
        v1, v2 = f"{v}#s1", f"{v}#s2"
        assert h.out_degree(v1) == 3 and h.out_degree(v2) == 2
        hp = partition_vertices(h)
        assert v1 in hp.regular and v2 in hp.regular

    def test_errors(self):
        with pytest.raises(GraphError, match="unknown vertex"):
            cuntz_splice(loops(2), "u")
        g = Graph(("v", "v#s1"), {})
        with pytest.raises(GraphError, match="in use"):
            cuntz_splice(g, "v")

    def test_sink_becomes_regular(self):
        h = cuntz_splice(loops(0), "v")
        assert "v" in partition_vertices(h).regular
