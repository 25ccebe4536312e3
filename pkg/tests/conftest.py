"""Independent oracles shared by the test modules.

Everything here is written against networkx and plain itertools so that it
shares no code with the package under test.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from metricdim.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


def naive_dimension(g: Graph, mode: str) -> tuple[int, tuple[int, ...]]:
    """Smallest generator by trying every subset in size-then-lexicographic order."""
    h = to_nx(g)
    d = dict(nx.all_pairs_shortest_path_length(h))
    items = []
    if mode in ("vertex", "mixed"):
        items += [("v", v) for v in range(g.n)]
    if mode in ("edge", "mixed"):
        items += [("e", tuple(sorted(e))) for e in h.edges()]

    def dist(s, item):
        kind, x = item
        return d[s][x] if kind == "v" else min(d[s][x[0]], d[s][x[1]])

    for size in range(0, g.n + 1):
        for S in combinations(range(g.n), size):
            vecs = {tuple(dist(s, it) for s in S) for it in items}
            if len(vecs) == len(items):
                return size, S
    raise AssertionError("V(G) always generates")


def naive_cactus_cycles(g: Graph) -> list[set[int]]:
    h = to_nx(g)
    return [set(c) for c in nx.biconnected_components(h) if len(c) >= 3]


def naive_threads(g: Graph) -> list[tuple[list[int], int]]:
    """(thread vertices leaf first, anchor) for every leaf."""
    h = to_nx(g)
    out = []
    for leaf in sorted(v for v in h if h.degree(v) == 1):
        path = [leaf]
        prev, cur = leaf, next(iter(h[leaf]))
        while h.degree(cur) == 2:
            path.append(cur)
            prev, cur = cur, next(w for w in h[cur] if w != prev)
        out.append((path, cur))
    return out


def naive_is_bbr(g: Graph, S) -> bool:
    """Biactive and branch-resolving, straight from the definitions."""
    h = to_nx(g)
    S = set(S)
    for cyc in naive_cactus_cycles(g):
        rest = h.copy()
        cyc_edges = [(u, v) for u, v in h.edges() if u in cyc and v in cyc]
        rest.remove_edges_from(cyc_edges)
        active = [v for v in cyc if nx.node_connected_component(rest, v) & S]
        if len(active) < 2:
            return False
    free_at: dict[int, int] = {}
    for path, anchor in naive_threads(g):
        if not set(path) & S:
            free_at[anchor] = free_at.get(anchor, 0) + 1
    return all(k <= 1 for k in free_at.values())


@pytest.fixture(scope="session")
def atlas_connected():
    """Connected graphs from the networkx atlas (all graphs with at most 7 vertices), by order."""
    out: dict[int, list[nx.Graph]] = {}
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() and nx.is_connected(h):
            out.setdefault(h.number_of_nodes(), []).append(h)
    return out


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """``acceptance(number, ok, message)`` records one criterion's outcome for the summary."""

    def record(number: int, ok: bool, message: str) -> None:
        _ACCEPTANCE[number] = (ok, message)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, message = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {message}")
