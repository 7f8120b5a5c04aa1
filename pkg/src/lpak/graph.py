"""Finite-vertex directed multigraphs and their combinatorial invariants.

Edges are stored only at the level of multiplicities: ``adjacency[(v, w)]``
is the number of edges v -> w, a positive int or ``INFINITY``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .intlinalg import IntMatrix, determinant

INFINITY = math.inf


class GraphError(ValueError):
    """Malformed graph input or an invalid graph operation."""


def _check_mult(x) -> int | float:
    if x == INFINITY:
        return INFINITY
    if isinstance(x, bool) or not isinstance(x, int):
        raise GraphError(f"multiplicity must be a positive integer or 'inf', got {x!r}")
    if x < 1:
        raise GraphError(f"multiplicity must be >= 1, got {x}")
    return x


@dataclass(frozen=True, eq=False)
class Graph:
    vertices: tuple[str, ...]
    adjacency: Mapping[tuple[str, str], int | float] = field(default_factory=dict)

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(set(vs)) != len(vs):
            dup = next(v for v in vs if vs.count(v) > 1)
            raise GraphError(f"duplicate vertex {dup!r}")
        known = set(vs)
        adj = {}
        for (s, r), mult in self.adjacency.items():
            for x in (s, r):
                if x not in known:
                    raise GraphError(f"unknown vertex {x!r}")
            adj[(s, r)] = _check_mult(mult)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, vertices: Iterable[str],
                   edges: Iterable[tuple[str, str, int | float]]) -> Graph:
        """Accumulate (src, dst, mult) triples; repeated pairs add up."""
        vertices = tuple(vertices)
        known = set(vertices)
        adj: dict[tuple[str, str], int | float] = {}
        for s, r, mult in edges:
            for x in (s, r):
                if x not in known:
                    raise GraphError(f"unknown vertex {x!r}")
            adj[(s, r)] = adj.get((s, r), 0) + _check_mult(mult)
        return cls(vertices, adj)

    @classmethod
    def from_matrix(cls, matrix, names: Iterable[str] | None = None) -> Graph:
        """Graph with vertex matrix `matrix` (rows = sources); entries may be INFINITY."""
        n = len(matrix)
        names = tuple(names) if names is not None else tuple(f"v{i}" for i in range(n))
        adj = {(names[i], names[j]): x
               for i in range(n) for j in range(n) if matrix[i][j]}
        return cls(names, adj)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.vertices, frozenset(self.adjacency.items())))

    def mult(self, v: str, w: str) -> int | float:
        return self.adjacency.get((v, w), 0)

    def out_degree(self, v: str) -> int | float:
        return sum(m for (s, _), m in self.adjacency.items() if s == v)

    def successors(self, v: str) -> list[str]:
        return [w for w in self.vertices if (v, w) in self.adjacency]

    def vertex_matrix(self) -> list[list[int | float]]:
        return [[self.mult(v, w) for w in self.vertices] for v in self.vertices]

    def reorder(self, order: Iterable[str]) -> Graph:
        order = tuple(order)
        if sorted(order) != sorted(self.vertices):
            raise GraphError("reorder must be a permutation of the vertices")
        return Graph(order, dict(self.adjacency))

    def relabel(self, mapping: Mapping[str, str]) -> Graph:
        return Graph(tuple(mapping[v] for v in self.vertices),
                     {(mapping[s], mapping[r]): m for (s, r), m in self.adjacency.items()})

    def to_json(self) -> dict:
        edges = [{"src": s, "dst": r, "mult": "inf" if m == INFINITY else m}
                 for (s, r), m in self.adjacency.items()]
        return {"vertices": list(self.vertices), "edges": edges}

    def __repr__(self):
        return f"Graph({list(self.vertices)!r}, {self.adjacency!r})"


def parse_graph(text: str) -> Graph:
    """Parse the JSON graph format::

        {"vertices": ["v", "w"], "edges": [{"src": "v", "dst": "w", "mult": 2}]}

    ``mult`` may be the string "inf"; repeated (src, dst) records accumulate.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("vertices"), list):
        raise GraphError("graph document needs a 'vertices' list")
    vertices = doc["vertices"]
    if not all(isinstance(v, str) for v in vertices):
        raise GraphError("vertex identifiers must be strings")
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise GraphError(f"duplicate vertex {dup!r}")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list")
    triples = []
    for e in edges:
        if not isinstance(e, dict) or not {"src", "dst"} <= e.keys():
            raise GraphError(f"malformed edge record {e!r}")
        mult = e.get("mult", 1)
        if mult == "inf":
            mult = INFINITY
        elif isinstance(mult, float) or mult == 0:
            raise GraphError(f"bad multiplicity {mult!r} on edge {e['src']}->{e['dst']}")
        triples.append((e["src"], e["dst"], mult))
    return Graph.from_edges(vertices, triples)


def dump_graph(g: Graph) -> str:
    return json.dumps(g.to_json(), indent=2)


@dataclass(frozen=True)
class VertexPartition:
    regular: tuple[str, ...]
    singular: tuple[str, ...]


def partition_vertices(g: Graph) -> VertexPartition:
    reg, sing = [], []
    for v in g.vertices:
        d = g.out_degree(v)
        (reg if 0 < d < INFINITY else sing).append(v)
    return VertexPartition(tuple(reg), tuple(sing))


@dataclass(frozen=True)
class BlockDecomposition:
    b: IntMatrix
    c: IntMatrix


def blocks(g: Graph) -> BlockDecomposition:
    part = partition_vertices(g)
    b = IntMatrix.from_rows([[g.mult(v, w) for w in part.regular] for v in part.regular],
                            len(part.regular))
    c = IntMatrix.from_rows([[g.mult(v, w) for w in part.singular] for v in part.regular],
                            len(part.singular))
    return BlockDecomposition(b, c)


def presentation_matrix(g: Graph) -> IntMatrix:
    """The |E0| x |E0_reg| matrix (B^t - I) stacked over C^t.

    Rows follow (regular, then singular) vertex order, columns the regular vertices.
    """
    bl = blocks(g)
    nreg = bl.b.rows
    top = bl.b.transpose() - IntMatrix.identity(nreg)
    return top.vstack(bl.c.transpose())


def _reachable(g: Graph, start: str) -> set[str]:
    """Vertices reachable from `start` by a path of length >= 0."""
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.successors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def reachability(g: Graph) -> dict[str, set[str]]:
    return {v: _reachable(g, v) for v in g.vertices}


def cycle_vertices(g: Graph) -> set[str]:
    """Vertices lying on some directed cycle."""
    out = set()
    for v in g.vertices:
        if any(v in _reachable(g, w) for w in g.successors(v)):
            out.add(v)
    return out


def satisfies_condition_l(g: Graph) -> bool:
    # A cycle lacks an exit iff each of its vertices emits exactly one edge,
    # so look for a cycle among the out-degree-one vertices.
    ones = {v for v in g.vertices if g.out_degree(v) == 1}
    sub = Graph(tuple(v for v in g.vertices if v in ones),
                {k: m for k, m in g.adjacency.items() if k[0] in ones and k[1] in ones})
    return not cycle_vertices(sub)


def is_cofinal(g: Graph) -> bool:
    """Every vertex reaches every vertex on a cycle.

    With finitely many vertices every infinite path eventually runs around
    a cycle, so this matches the infinite-path definition.
    """
    cyc = cycle_vertices(g)
    reach = reachability(g)
    return all(cyc <= reach[v] for v in g.vertices)


def reaches_all_singular(g: Graph) -> bool:
    sing = set(partition_vertices(g).singular)
    return all(sing <= r for r in reachability(g).values())


def is_simple(g: Graph) -> bool:
    return is_cofinal(g) and satisfies_condition_l(g) and reaches_all_singular(g)


def has_infinitely_many_edges(g: Graph) -> bool:
    return any(m == INFINITY for m in g.adjacency.values())


def has_sinks(g: Graph) -> bool:
    return any(g.out_degree(v) == 0 for v in g.vertices)


def det_at_minus_i(g: Graph) -> int:
    """det(A^t - I) for a graph with only finite multiplicities."""
    if has_infinitely_many_edges(g):
        raise GraphError("vertex matrix has infinite entries")
    a = IntMatrix.from_rows(g.vertex_matrix(), len(g.vertices))
    return determinant(a.transpose() - IntMatrix.identity(len(g.vertices)))


def cuntz_splice(g: Graph, v: str) -> Graph:
    """Attach the two-vertex Cuntz splice gadget at `v`.

    New vertices are named ``<v>#s1`` and ``<v>#s2`` and appended to the order.
    """
    if v not in g.vertices:
        raise GraphError(f"unknown vertex {v!r}")
    v1, v2 = f"{v}#s1", f"{v}#s2"
    for name in (v1, v2):
        if name in g.vertices:
            raise GraphError(f"splice vertex name {name!r} already in use")
    adj = dict(g.adjacency)
    for pair in [(v, v1), (v1, v), (v1, v2), (v2, v1), (v1, v1), (v2, v2)]:
        adj[pair] = adj.get(pair, 0) + 1
    return Graph(g.vertices + (v1, v2), adj)
