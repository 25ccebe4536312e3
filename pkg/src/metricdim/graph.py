"""Graph substrate: representation, graph6, distances, blocks and threads."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised on malformed graphs or inputs violating an operation's precondition."""


class DisconnectedGraphError(GraphError):
    pass


class Graph6Error(GraphError):
    pass


class NoThreadAnchorsError(GraphError):
    """The graph is a path (or a single vertex), so no thread can hang anywhere."""


Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``edges`` is kept as a sorted tuple of ``(u, v)`` pairs with ``u < v``.
    Build instances through :meth:`from_edges`, which normalizes and validates.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise GraphError(f"invalid edge {e} for n={self.n}")
            if prev is not None and e <= prev:
                raise GraphError("edges must be sorted and free of duplicates")
            prev = e

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at {u}")
            seen.add(_norm_edge(u, v))
        return cls(n, tuple(sorted(seen)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edge_set

    def subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabeled to ``0..k-1``; also returns the local-to-global map."""
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        sub = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        return Graph.from_edges(len(verts), sub), verts

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def is_connected(self) -> bool:
        return len(_bfs_order(self, 0)) == self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def _bfs_order(g: Graph, root: int) -> list[int]:
    seen = [False] * g.n
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                queue.append(w)
    return order


def require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("operation requires a connected graph")


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error(f"graph6 cannot encode n={n}")


def encode_graph6(g: Graph) -> str:
    """graph6 encoding of ``g`` under its current labeling (no canonicalization)."""
    n = g.n
    out = [_encode_n(n)]
    es = g.edge_set
    word = 0
    nbits = 0
    for j in range(1, n):
        for i in range(j):
            word = (word << 1) | ((i, j) in es)
            nbits += 1
            if nbits == 6:
                out.append(chr(word + 63))
                word = 0
                nbits = 0
    if nbits:
        out.append(chr((word << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line. An optional ``>>graph6<<`` header is accepted."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range 63..126")
    data = [ord(ch) - 63 for ch in s]
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] != 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    elif len(data) >= 8 and data[1] == 63:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8
    else:
        raise Graph6Error("truncated graph6 size header")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, found {len(body)}"
        )
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("nonzero padding bits")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if n == 0:
        raise Graph6Error("graph6 string encodes the empty graph")
    return Graph(n, tuple(sorted(edges)))


def read_graph6_lines(lines: Iterable[str]) -> Iterable[tuple[int, str]]:
    """Yield ``(line_number, text)`` for data lines, skipping blanks and ``#`` comments."""
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

UNREACHABLE = None
"""Sentinel stored for pairs in different components."""


@dataclass(frozen=True)
class DistanceOracle:
    dist: tuple[tuple[int | None, ...], ...]

    @property
    def n(self) -> int:
        return len(self.dist)

    def __call__(self, u: int, v: int) -> int | None:
        return self.dist[u][v]

    def vertex_edge(self, u: int, e: Edge) -> int:
        return vertex_edge_distance(self, u, e)


def all_pairs_distances(g: Graph) -> DistanceOracle:
    rows = []
    adj = g.adjacency
    for s in range(g.n):
        d: list[int | None] = [UNREACHABLE] * g.n
        d[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = d[u] + 1  # type: ignore[operator]
            for w in adj[u]:
                if d[w] is UNREACHABLE:
                    d[w] = du
                    queue.append(w)
        rows.append(tuple(d))
    return DistanceOracle(tuple(rows))


def vertex_edge_distance(o: DistanceOracle, u: int, e: Edge) -> int:
    """``d(u, vw) = min(d(u, v), d(u, w))``; ``e`` must be an edge of the graph."""
    v, w = e
    if o.dist[v][w] != 1:
        raise GraphError(f"{e} is not an edge")
    a, b = o.dist[u][v], o.dist[u][w]
    if a is UNREACHABLE:
        return b
    if b is UNREACHABLE:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# simple invariants
# ---------------------------------------------------------------------------

def cyclomatic_number(g: Graph) -> int:
    require_connected(g)
    return g.m - g.n + 1


def degree_stats(g: Graph) -> tuple[int, int, frozenset[int]]:
    """``(min degree, max degree, leaves)``."""
    degs = g.degrees
    return min(degs), max(degs), frozenset(v for v, d in enumerate(degs) if d == 1)


def is_cycle_graph(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and all(d == 2 for d in g.degrees) and g.is_connected()


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    edges: tuple[Edge, ...]
    vertices: tuple[int, ...]
    is_cycle: bool
    is_end_block: bool

    @property
    def non_trivial(self) -> bool:
        return len(self.vertices) >= 3

    def cyclic_order(self) -> tuple[int, ...]:
        """Vertices in cyclic order starting at the smallest, turning toward its smaller neighbor."""
        if not self.is_cycle:
            raise GraphError("block is not a cycle")
        nbrs: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        start = self.vertices[0]
        order = [start]
        prev, cur = start, min(nbrs[start])
        while cur != start:
            order.append(cur)
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        return tuple(order)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b.vertices]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components (Hopcroft-Tarjan, iterative) as an edge partition."""
    require_connected(g)
    n, adj = g.n, g.adjacency
    disc = [-1] * n
    low = [0] * n
    cut = set()
    raw_blocks: list[list[Edge]] = []
    edge_stack: list[Edge] = []
    time = 0
    root = 0
    disc[root] = low[root] = time
    time += 1
    root_children = 0
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                edge_stack.append(_norm_edge(u, w))
                disc[w] = low[w] = time
                time += 1
                if u == root:
                    root_children += 1
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
            if w != parent and disc[w] < disc[u]:
                edge_stack.append(_norm_edge(u, w))
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent != -1:
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cut.add(parent)
                comp = []
                target = _norm_edge(parent, u)
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == target:
                        break
                raw_blocks.append(comp)
    if root_children > 1:
        cut.add(root)

    blocks = []
    for comp in raw_blocks:
        es = tuple(sorted(comp))
        vs = tuple(sorted({x for e in es for x in e}))
        is_cycle = len(vs) >= 3 and len(es) == len(vs) and all(
            sum(x in e for e in es) == 2 for x in vs
        )
        ncut = sum(v in cut for v in vs)
        blocks.append(Block(es, vs, is_cycle, ncut == 1))
    blocks.sort(key=lambda b: b.edges[0])
    return BlockDecomposition(tuple(blocks), frozenset(cut))


# ---------------------------------------------------------------------------
# threads
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Thread:
    vertices: tuple[int, ...]  # u_1 (the leaf) ... u_k (next to the anchor)
    anchor: int

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ThreadProfile:
    threads: tuple[Thread, ...]
    ell: dict[int, int] = field(hash=False)
    L: int

    def threads_at(self, v: int) -> list[int]:
        return [i for i, t in enumerate(self.threads) if t.anchor == v]


def thread_profile(g: Graph) -> ThreadProfile:
    """All threads (pendant paths ending next to a vertex of degree >= 3) and ``L(G)``."""
    require_connected(g)
    degs = g.degrees
    if max(degs) <= 2 and g.m == g.n - 1:
        raise NoThreadAnchorsError("a path has no vertex of degree >= 3")
    threads = []
    ell: dict[int, int] = {}
    for leaf in range(g.n):
        if degs[leaf] != 1:
            continue
        path = [leaf]
        prev, cur = leaf, g.adjacency[leaf][0]
        while degs[cur] == 2:
            path.append(cur)
            a, b = g.adjacency[cur]
            prev, cur = cur, (b if a == prev else a)
        # cur has degree >= 3 here: the graph is not a path, so walks never end in a leaf
        threads.append(Thread(tuple(path), cur))
        ell[cur] = ell.get(cur, 0) + 1
    L = sum(k - 1 for k in ell.values() if k > 1)
    return ThreadProfile(tuple(threads), ell, L)
