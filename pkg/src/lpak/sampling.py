"""Seeded random generators for matrices and graphs, shared by tests and scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import INFINITY, Graph, det_at_minus_i, has_sinks, is_simple
from .intlinalg import IntMatrix


@dataclass(frozen=True)
class GraphSampler:
    """Knobs for `random_graph`."""

    max_vertices: int = 4
    max_mult: int = 3
    edge_prob: float = 0.5
    inf_prob: float = 0.0  # chance that a present edge has infinite multiplicity


def random_matrix(rng: random.Random, max_rows: int = 8, max_cols: int = 8,
                  lo: int = -20, hi: int = 20, min_dim: int = 0) -> IntMatrix:
    r, c = rng.randint(min_dim, max_rows), rng.randint(min_dim, max_cols)
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)], c)


def _names(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def random_graph(rng: random.Random, cfg: GraphSampler = GraphSampler(),
                 min_vertices: int = 1) -> Graph:
    n = rng.randint(min_vertices, cfg.max_vertices)
    vs = _names(n)
    adj = {}
    for s in vs:
        for r in vs:
            if rng.random() < cfg.edge_prob:
                adj[(s, r)] = INFINITY if rng.random() < cfg.inf_prob else rng.randint(1, cfg.max_mult)
    return Graph(tuple(vs), adj)


def random_sinkless_finite_graph(rng: random.Random, max_vertices: int = 4,
                                 max_mult: int = 3) -> Graph:
    """Finite multiplicities and every vertex emits at least one edge."""
    n = rng.randint(1, max_vertices)
    vs = _names(n)
    adj = {}
    for s in vs:
        targets = [r for r in vs if rng.random() < 0.5] or [rng.choice(vs)]
        for r in targets:
            adj[(s, r)] = rng.randint(1, max_mult)
    return Graph(tuple(vs), adj)


def random_det_nonzero_graph(rng: random.Random, max_vertices: int = 4,
                             max_mult: int = 3) -> Graph:
    while True:
        g = random_sinkless_finite_graph(rng, max_vertices, max_mult)
        if det_at_minus_i(g) != 0:
            return g


def random_simple_infinite_graph(rng: random.Random, max_core: int = 4,
                                 max_emitters: int = 3, max_mult: int = 3) -> Graph:
    """A simple graph with at least one infinite emitter.

    A strongly connected core in which every vertex emits at least two edges
    (so Condition (L) holds), plus infinite emitters that the core feeds and
    that feed back into it.  The vertex order is shuffled.
    """
    k = rng.randint(1, max_core)
    e = rng.randint(1, max_emitters)
    core = [f"c{i}" for i in range(k)]
    emitters = [f"x{i}" for i in range(e)]
    adj: dict[tuple[str, str], int | float] = {}

    def bump(s, r, m):
        adj[(s, r)] = adj.get((s, r), 0) + m

    for i, v in enumerate(core):  # Hamiltonian cycle keeps the core strongly connected
        bump(v, core[(i + 1) % k], rng.randint(1, max_mult))
    for v in core:
        for w in core:
            if rng.random() < 0.3:
                bump(v, w, rng.randint(1, max_mult))
    for x in emitters:
        bump(rng.choice(core), x, rng.randint(1, max_mult))
        adj[(x, rng.choice(core))] = INFINITY
        for w in core + emitters:
            if (x, w) not in adj and rng.random() < 0.3:
                adj[(x, w)] = INFINITY if rng.random() < 0.5 else rng.randint(1, max_mult)
    for v in core:
        deg = sum(m for (s, _), m in adj.items() if s == v)
        if deg < 2:
            bump(v, rng.choice(core), 1)
    order = core + emitters
    rng.shuffle(order)
    g = Graph(tuple(order), adj)
    assert is_simple(g) and not has_sinks(g)
    return g
