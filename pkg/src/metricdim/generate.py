"""Corpus generation: isomorph-free enumeration and seeded random graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .canon import canonical_form
from .graph import Graph, GraphError, block_decomposition, is_cycle_graph

MAX_BUILTIN_N = 10
MAX_BUILTIN_CACTUS_N = 12


@dataclass(frozen=True)
class GraphFilter:
    connected: bool = True
    min_degree: int = 0
    cactus_only: bool = False
    exclude_cycles: bool = False
    min_cycles: int = 0

    def accepts(self, g: Graph) -> bool:
        if self.connected and not g.is_connected():
            return False
        if self.min_degree and (g.n < 2 or min(g.degrees) < self.min_degree):
            return False
        if self.exclude_cycles and is_cycle_graph(g):
            return False
        if self.min_cycles and g.m - g.n + 1 < self.min_cycles:
            return False
        if self.cactus_only:
            from .cactus import is_cactus
            if not g.is_connected() or not is_cactus(g):
                return False
        return True


# ---------------------------------------------------------------------------
# connected graphs by vertex augmentation
# ---------------------------------------------------------------------------

def _non_cut_min_degree(n: int, nbr: list[int]) -> int:
    """Minimum degree over non-cut vertices of the connected graph given by bitmask rows."""
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if nbr[u] >> v & 1])
    cut = block_decomposition(g).cut_vertices if n > 2 else frozenset()
    return min(nbr[v].bit_count() for v in range(n) if v not in cut)


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple[str, ...]:
    """Canonical graph6 strings of all connected graphs on ``n`` vertices, sorted."""
    from .graph import parse_graph6

    if n == 1:
        return (canonical_form(Graph(1, ())).graph6,)
    seen: set[str] = set()
    for g6 in _connected(n - 1):
        parent = parse_graph6(g6)
        k = n - 1
        nbr = [0] * n
        for u, v in parent.edges:
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        reps = _subset_candidates(parent)
        for S in reps:
            s_mask = sum(1 << v for v in S)
            child = list(nbr)
            for v in S:
                child[v] |= 1 << k
            child[k] = s_mask
            # the new vertex is never a cut vertex; keep it only when it could be
            # the deletion choice "a non-cut vertex of minimum degree"
            if len(S) > _non_cut_min_degree(n, child):
                continue
            g = Graph.from_edges(n, [*parent.edges, *((v, k) for v in S)])
            seen.add(canonical_form(g).graph6)
    return tuple(sorted(seen))


def _subset_candidates(parent: Graph) -> Iterator[tuple[int, ...]]:
    for size in range(1, parent.n + 1):
        yield from combinations(range(parent.n), size)


@lru_cache(maxsize=None)
def _cacti(n: int) -> tuple[str, ...]:
    """Canonical graph6 strings of all connected cacti on ``n`` vertices, sorted.

    Every cactus with at least two vertices has an end-block; removing it (a leaf,
    or the non-cut vertices of an end-cycle) leaves a smaller cactus, so gluing a
    pendant edge or a cycle onto every smaller cactus reaches all of them.
    """
    from .graph import parse_graph6

    if n == 1:
        return (canonical_form(Graph(1, ())).graph6,)
    seen: set[str] = set()
    # pendant vertex
    for g6 in _cacti(n - 1):
        parent = parse_graph6(g6)
        for v in _orbit_reps(parent):
            g = Graph.from_edges(n, [*parent.edges, (v, n - 1)])
            seen.add(canonical_form(g).graph6)
    # cycle of length k sharing one vertex with a cactus on n - k + 1 vertices
    for k in range(3, n + 1):
        for g6 in _cacti(n - k + 1):
            parent = parse_graph6(g6)
            base = parent.n
            for v in _orbit_reps(parent):
                ring = [v, *range(base, base + k - 1)]
                edges = [*parent.edges, *((ring[i], ring[(i + 1) % k]) for i in range(k))]
                seen.add(canonical_form(Graph.from_edges(n, edges)).graph6)
    return tuple(sorted(seen))


def _orbit_reps(g: Graph) -> list[int]:
    orbits = canonical_form(g).orbits
    return sorted(set(orbits))


def enumerate_graphs(n: int, filt: GraphFilter | None = None) -> Iterator[Graph]:
    """One representative per isomorphism class of graphs on ``n`` vertices passing ``filt``.

    Connected graphs only. Representatives are canonical forms, yielded in
    graph6 order. Cactus-only filters use a dedicated block-gluing generator.
    """
    from .graph import parse_graph6

    filt = filt or GraphFilter()
    if not filt.connected:
        raise GraphError("the builtin enumerator produces connected graphs only")
    if filt.cactus_only:
        if n > MAX_BUILTIN_CACTUS_N:
            raise GraphError(f"builtin cactus enumeration stops at n={MAX_BUILTIN_CACTUS_N}")
        pool = _cacti(n)
    else:
        if n > MAX_BUILTIN_N:
            raise GraphError(
                f"builtin enumeration stops at n={MAX_BUILTIN_N}; supply a graph6 file instead"
            )
        pool = _connected(n)
    for g6 in pool:
        g = parse_graph6(g6)
        if filt.accepts(g):
            yield g


# ---------------------------------------------------------------------------
# random graphs
# ---------------------------------------------------------------------------

class RejectionCapExceeded(RuntimeError):
    pass


def random_min_degree_graph(n: int, m: int, seed: int, max_tries: int = 100_000) -> Graph:
    """Seeded connected graph with ``n`` vertices, ``m`` edges and minimum degree >= 2.

    Sparse targets draw from a configuration model with every degree at least
    two; dense targets draw uniform ``m``-edge graphs. Either way proposals are
    rejected until simple, connected and of minimum degree two, so the result is
    not exactly uniform over the conditioned class.
    """
    if n < 3 or m < n:
        raise GraphError("a connected graph with minimum degree 2 needs n >= 3 and m >= n")
    if m > n * (n - 1) // 2:
        raise GraphError("too many edges for a simple graph")
    rng = random.Random(seed)
    all_pairs = list(combinations(range(n), 2))
    for _ in range(max_tries):
        if m >= 2 * n:
            edges = rng.sample(all_pairs, m)
        else:
            stubs = [v for v in range(n) for _ in range(2)]
            stubs += [rng.randrange(n) for _ in range(2 * (m - n))]
            rng.shuffle(stubs)
            edges = list(zip(stubs[::2], stubs[1::2]))
            if any(u == v for u, v in edges) or len({tuple(sorted(e)) for e in edges}) < m:
                continue
        g = Graph.from_edges(n, edges)
        if min(g.degrees) >= 2 and g.is_connected():
            return g
    raise RejectionCapExceeded(f"no sample after {max_tries} proposals for n={n}, m={m}")


def random_two_connected(rng: random.Random, n: int) -> Graph:
    """Random 2-connected graph on ``n >= 3`` vertices: a cycle plus random ears/chords."""
    if n < 3:
        raise GraphError("2-connected blocks need at least three vertices")
    base = rng.randint(3, n)
    edges = {(i, (i + 1) % base) if i < (i + 1) % base else ((i + 1) % base, i) for i in range(base)}
    nxt = base
    while nxt < n:
        length = rng.randint(1, n - nxt)  # new inner vertices on this ear
        a, b = rng.sample(range(nxt), 2)
        chain = [a, *range(nxt, nxt + length), b]
        edges |= {tuple(sorted(e)) for e in zip(chain, chain[1:])}
        nxt += length
    for _ in range(rng.randint(0, 2)):
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(n, edges)


def random_block_glued(seed: int, max_n: int = 14) -> Graph:
    """Seeded graph with minimum degree 2 and a cut vertex, built from 2-4 blocks.

    Blocks are cycles or random 2-connected graphs; each new block is glued at
    an existing vertex or hung from it by a short bridge path.
    """
    from .families import cycle, glue

    rng = random.Random(seed)
    while True:
        q = rng.randint(2, 4)
        g = None
        for _ in range(q):
            room = max_n - (g.n if g else 0)
            if room < 3:
                break
            size = rng.randint(3, min(6, room))
            blk = cycle(size) if rng.random() < 0.5 else random_two_connected(rng, size)
            if g is None:
                g = blk
                continue
            bridge = 0 if rng.random() < 0.7 else rng.randint(1, 2)
            if g.n + blk.n - 1 + max(0, bridge - 1) + (1 if bridge else 0) > max_n:
                bridge = 0
            if g.n + blk.n - (0 if bridge else 1) + max(0, bridge - 1) > max_n:
                break
            g = glue(g, blk, rng.randrange(g.n), rng.randrange(blk.n), bridge)
        if g is None or g.n > max_n or min(g.degrees) < 2:
            continue
        if not block_decomposition(g).cut_vertices:
            continue
        return g
