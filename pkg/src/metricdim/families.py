"""Constructors for the named graphs used in examples, tests and campaigns."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .graph import Graph


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def daisy(petals: Sequence[int]) -> Graph:
    """Cycles of the given lengths sharing vertex 0 (the center)."""
    edges = []
    nxt = 1
    for g in petals:
        if g < 3:
            raise ValueError("petals are cycles of length >= 3")
        ring = [0, *range(nxt, nxt + g - 1)]
        nxt += g - 1
        edges += [(ring[i], ring[(i + 1) % g]) for i in range(g)]
    return Graph.from_edges(nxt, edges)


def glue(a: Graph, b: Graph, at_a: int, at_b: int, bridge: int = 0) -> Graph:
    """Disjoint union of ``a`` and ``b`` with ``at_a`` identified with ``at_b``.

    With ``bridge > 0`` the two vertices are joined by a path of that many edges instead.
    """
    if bridge == 0:
        mapping = {}
        nxt = a.n
        for v in range(b.n):
            if v == at_b:
                mapping[v] = at_a
            else:
                mapping[v] = nxt
                nxt += 1
        edges = list(a.edges) + [(mapping[u], mapping[v]) for u, v in b.edges]
        return Graph.from_edges(nxt, edges)
    inner = list(range(a.n + b.n, a.n + b.n + bridge - 1))
    chain = [at_a, *inner, a.n + at_b]
    edges = list(a.edges) + [(a.n + u, a.n + v) for u, v in b.edges]
    edges += list(zip(chain, chain[1:]))
    return Graph.from_edges(a.n + b.n + bridge - 1, edges)


def with_pendant_path(g: Graph, at: int, length: int) -> Graph:
    """Attach a path of ``length`` new vertices hanging at ``at``."""
    new = list(range(g.n, g.n + length))
    chain = [at, *new]
    return Graph.from_edges(g.n + length, list(g.edges) + list(zip(chain, chain[1:])))


def theta(*lengths: int) -> Graph:
    """Two vertices joined by internally disjoint paths with the given edge counts."""
    edges = []
    nxt = 2
    for ell in lengths:
        inner = list(range(nxt, nxt + ell - 1))
        nxt += ell - 1
        chain = [0, *inner, 1]
        edges += list(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, edges)
