"""Exact vertex, edge and mixed metric dimension.

Distinguishing is decided from distance tables. The minimum generator is found
as a hitting-set problem: every pair of items must be hit by a vertex that
distinguishes it. The search is branch-and-bound with a greedy upper bound and
a disjoint-sets lower bound, followed by a lexicographic pass at the optimum
size so the witness does not depend on search order.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .graph import (
    DistanceOracle,
    Edge,
    Graph,
    GraphError,
    all_pairs_distances,
    require_connected,
    vertex_edge_distance,
)

DEFAULT_PAIR_CAP = 2_000_000

Item = Union[int, Edge]


class Mode(str, enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    MIXED = "mixed"


class SizeCapExceeded(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorWitness:
    size: int
    set: tuple[int, ...]
    mode: Mode


def universe(g: Graph, mode: Mode) -> list[Item]:
    mode = Mode(mode)
    if mode is Mode.VERTEX:
        return list(range(g.n))
    if mode is Mode.EDGE:
        return list(g.edges)
    return [*range(g.n), *g.edges]


def _item_distance(o: DistanceOracle, s: int, x: Item) -> int:
    if isinstance(x, tuple):
        return vertex_edge_distance(o, s, x)
    return o.dist[s][x]


def _check_item(x: Item, mode: Mode, o: DistanceOracle) -> None:
    if isinstance(x, tuple):
        if mode is Mode.VERTEX:
            raise GraphError(f"edge {x} outside the vertex universe")
        if o.dist[x[0]][x[1]] != 1:
            raise GraphError(f"{x} is not an edge")
    else:
        if mode is Mode.EDGE:
            raise GraphError(f"vertex {x} outside the edge universe")
        if not 0 <= x < o.n:
            raise GraphError(f"vertex {x} out of range")


def distinguishes(o: DistanceOracle, s: int, x: Item, x2: Item, mode: Mode) -> bool:
    mode = Mode(mode)
    _check_item(x, mode, o)
    _check_item(x2, mode, o)
    return _item_distance(o, s, x) != _item_distance(o, s, x2)


def distance_table(g: Graph, mode: Mode, o: DistanceOracle | None = None) -> np.ndarray:
    """``table[i, s]`` is the distance from vertex ``s`` to the ``i``-th universe item."""
    o = o or all_pairs_distances(g)
    d = np.array(o.dist, dtype=np.int64)
    parts = []
    mode = Mode(mode)
    if mode in (Mode.VERTEX, Mode.MIXED):
        parts.append(d)
    if mode in (Mode.EDGE, Mode.MIXED) and g.m:
        es = np.array(g.edges)
        parts.append(np.minimum(d[es[:, 0]], d[es[:, 1]]))
    if not parts:
        return np.zeros((0, g.n), dtype=np.int64)
    return np.vstack(parts)


def undistinguished_pairs(g: Graph, S: Iterable[int], mode: Mode) -> list[tuple[Item, Item]]:
    """Pairs of universe items with identical distance vectors to ``S``, in universe order."""
    items = universe(g, mode)
    table = distance_table(g, mode)
    cols = sorted(set(S))
    groups: dict[tuple[int, ...], list[int]] = {}
    for i in range(len(items)):
        groups.setdefault(tuple(table[i, cols].tolist()), []).append(i)
    out = []
    for members in groups.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                out.append((members[a], members[b]))
    out.sort()
    return [(items[i], items[j]) for i, j in out]


def is_generator(g: Graph, S: Iterable[int], mode: Mode) -> bool:
    table = distance_table(g, mode)
    cols = sorted(set(S))
    if table.shape[0] <= 1:
        return True
    if not cols:
        return False
    return len({tuple(r) for r in table[:, cols].tolist()}) == table.shape[0]


# ---------------------------------------------------------------------------
# hitting-set formulation
# ---------------------------------------------------------------------------

def pair_hitting_sets(g: Graph, mode: Mode, pair_cap: int = DEFAULT_PAIR_CAP) -> list[int]:
    """Minimal distinct vertex bitmasks that a generator must hit (one per class of pairs)."""
    table = distance_table(g, mode)
    k = table.shape[0]
    npairs = k * (k - 1) // 2
    if npairs > pair_cap:
        raise SizeCapExceeded(f"{npairs} pairs exceed the cap of {pair_cap}")
    if npairs == 0:
        return []
    iu, ju = np.triu_indices(k, 1)
    diff = table[iu] != table[ju]  # (pairs, n) bool
    weights = np.left_shift(np.ones(g.n, dtype=object), np.arange(g.n, dtype=object))
    masks = {int(x) for x in diff.astype(object) @ weights} if g.n > 62 else {
        int(x) for x in diff.astype(np.uint64) @ (np.uint64(1) << np.arange(g.n, dtype=np.uint64))
    }
    return _minimal_masks(masks)


def _minimal_masks(masks: Iterable[int]) -> list[int]:
    ordered = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    kept: list[int] = []
    for m in ordered:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _disjoint_lower_bound(sets: Sequence[int]) -> int:
    used = 0
    count = 0
    for s in sorted(sets, key=_popcount):
        if not s & used:
            used |= s
            count += 1
    return count


def _greedy(sets: list[int], n: int) -> int:
    chosen = 0
    remaining = list(sets)
    while remaining:
        best_v, best_hits = -1, -1
        for v in range(n):
            bit = 1 << v
            hits = sum(1 for s in remaining if s & bit)
            if hits > best_hits:
                best_v, best_hits = v, hits
        chosen |= 1 << best_v
        remaining = [s for s in remaining if not s & chosen]
    return chosen


def twin_classes(g: Graph, o: DistanceOracle | None = None) -> list[list[int]]:
    """Classes of vertices with equal distances to every other vertex (size >= 2 only)."""
    o = o or all_pairs_distances(g)
    parent = list(range(g.n))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if all(o.dist[u][w] == o.dist[v][w] for w in range(g.n) if w not in (u, v)):
                ru, rv = parent[u], parent[v]
                while parent[ru] != ru:
                    ru = parent[ru]
                while parent[rv] != rv:
                    rv = parent[rv]
                if ru != rv:
                    parent[max(ru, rv)] = min(ru, rv)
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        r = v
        while parent[r] != r:
            r = parent[r]
        classes.setdefault(r, []).append(v)
    return [c for c in classes.values() if len(c) > 1]


def minimum_hitting_size(sets: list[int], n: int, lower: int = 0, deadline: float | None = None) -> int:
    """Branch-and-bound minimum hitting set size over vertex bitmasks."""
    if not sets:
        return 0
    best = _popcount(_greedy(sets, n))
    lb0 = max(lower, _disjoint_lower_bound(sets))
    if best <= lb0:
        return best
    nodes = 0

    def bb(unhit: list[int], size: int, banned: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if deadline is not None and nodes % 256 == 1 and time.monotonic() > deadline:
            raise BudgetExceeded("per-graph time budget exhausted")
        if not unhit:
            best = min(best, size)
            return
        live = [s & ~banned for s in unhit]
        if any(s == 0 for s in live):
            return
        if size + _disjoint_lower_bound(live) >= best:
            return
        pivot = min(live, key=lambda s: (_popcount(s), s))
        ban = banned
        m = pivot
        while m:
            low = m & -m
            m ^= low
            bb([s for s in unhit if not s & low], size + 1, ban)
            ban |= low
            if best <= lb0:
                return

    bb(list(sets), 0, 0)
    return best


def lex_least_hitting_set(sets: list[int], n: int, size: int, deadline: float | None = None) -> tuple[int, ...] | None:
    """Lexicographically least sorted vertex tuple of exactly ``size`` vertices hitting every set."""
    found: list[int] = []
    nodes = 0

    def dfs(start: int, unhit: list[int], picked: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 256 == 1 and time.monotonic() > deadline:
            raise BudgetExceeded("per-graph time budget exhausted")
        left = size - len(picked)
        if not unhit:
            # callers pass the optimum size, so a smaller hitting set cannot exist
            if left:
                return False
            found.extend(picked)
            return True
        if left == 0:
            return False
        future = ((1 << n) - 1) >> start << start
        live = [s & future for s in unhit]
        if any(s == 0 for s in live) or _disjoint_lower_bound(live) > left:
            return False
        for v in range(start, n - left + 1):
            bit = 1 << v
            if dfs(v + 1, [s for s in unhit if not s & bit], picked + [v]):
                return True
        return False

    return tuple(found) if dfs(0, list(sets), []) else None


def exact_dimension(
    g: Graph,
    mode: Mode = Mode.VERTEX,
    pair_cap: int = DEFAULT_PAIR_CAP,
    time_budget: float | None = None,
) -> GeneratorWitness:
    """Minimum metric generator with the lexicographically least witness."""
    mode = Mode(mode)
    require_connected(g)
    if g.n < 2:
        raise GraphError("metric dimension needs at least two vertices")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    sets = pair_hitting_sets(g, mode, pair_cap)
    lower = 0
    if mode is Mode.VERTEX:
        # each twin class of size t forces t - 1 of its members
        lower = sum(len(c) - 1 for c in twin_classes(g))
    k = minimum_hitting_size(sets, g.n, lower, deadline)
    witness = lex_least_hitting_set(sets, g.n, k, deadline)
    assert witness is not None
    return GeneratorWitness(k, witness, mode)


def metric_dimension(g: Graph, mode: Mode = Mode.VERTEX, **kwargs) -> int:
    return exact_dimension(g, mode, **kwargs).size
