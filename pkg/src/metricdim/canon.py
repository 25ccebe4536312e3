"""Canonical labeling by partition refinement and individualization.

Small graphs only (the enumerators stay below ~14 vertices). The search
explores the individualization tree, keeps the leaf with the largest
adjacency certificate, and prunes with automorphisms discovered along the way.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, encode_graph6


@dataclass(frozen=True)
class CanonicalForm:
    graph: Graph
    labeling: tuple[int, ...]  # labeling[v] = canonical label of v
    orbits: tuple[int, ...]  # orbits[v] = smallest vertex in v's automorphism orbit

    @property
    def graph6(self) -> str:
        return encode_graph6(self.graph)


def _refine(cells: list[list[int]], nbr: list[int]) -> list[list[int]]:
    """Equitable refinement; the resulting cell order depends only on the input cell order."""
    cells = [list(c) for c in cells]
    while True:
        cell_of = {}
        for ci, c in enumerate(cells):
            for v in c:
                cell_of[v] = ci
        cell_masks = []
        for c in cells:
            mask = 0
            for v in c:
                mask |= 1 << v
            cell_masks.append(mask)
        new_cells = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                sig = tuple(bin(nbr[v] & m).count("1") for m in cell_masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        cells = new_cells
        if not changed:
            return cells


def _certificate(order: list[int], nbr: list[int], n: int) -> tuple[int, ...]:
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        row = 0
        m = nbr[v]
        while m:
            low = m & -m
            row |= 1 << (n - 1 - pos[low.bit_length() - 1])
            m ^= low
        rows.append(row)
    return tuple(rows)


class _Found(Exception):
    def __init__(self, depth: int) -> None:
        self.depth = depth


def canonical_form(g: Graph) -> CanonicalForm:
    n = g.n
    nbr = [0] * n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    best_cert: tuple[int, ...] | None = None
    best_order: list[int] = []
    first_order: list[int] = []
    first_path: list[int] = []
    generators: list[list[int]] = []
    orbit_parent = list(range(n))

    def find(x: int) -> int:
        while orbit_parent[x] != x:
            orbit_parent[x] = orbit_parent[orbit_parent[x]]
            x = orbit_parent[x]
        return x

    def record_automorphism(a: list[int], b: list[int]) -> None:
        gamma = [0] * n
        for x, y in zip(a, b):
            gamma[x] = y
        generators.append(gamma)
        for x in range(n):
            rx, ry = find(x), find(gamma[x])
            if rx != ry:
                orbit_parent[max(rx, ry)] = min(rx, ry)

    def search(cells: list[list[int]], path: list[int]) -> None:
        nonlocal best_cert, best_order, first_order, first_path
        cells = _refine(cells, nbr)
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert = _certificate(order, nbr, n)
            if not first_order:
                first_order, first_path = order, list(path)
                best_cert, best_order = cert, order
                return
            if cert == _certificate(first_order, nbr, n):
                record_automorphism(first_order, order)
                common = 0
                while common < len(path) and path[common] == first_path[common]:
                    common += 1
                raise _Found(common)
            if cert == best_cert:
                record_automorphism(best_order, order)
                return
            if best_cert is None or cert > best_cert:
                best_cert, best_order = cert, order
            return
        target = min(range(len(cells)), key=lambda i: (len(cells[i]) == 1, len(cells[i]), i))
        cell = cells[target]
        explored: list[int] = []
        depth = len(path)
        for v in sorted(cell):
            if explored and _same_orbit_fixing(v, explored, path, generators):
                continue
            explored.append(v)
            rest = [x for x in cell if x != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            try:
                search(child, path + [v])
            except _Found as found:
                if found.depth < depth:
                    raise
                # found.depth == depth: the child we just explored mirrors the first path

    search([list(range(n))], [])
    order = best_order
    labeling = [0] * n
    for i, v in enumerate(order):
        labeling[v] = i
    canon = g.relabel(labeling)
    return CanonicalForm(canon, tuple(labeling), tuple(find(v) for v in range(n)))


def _same_orbit_fixing(v: int, explored: list[int], path: list[int], generators: list[list[int]]) -> bool:
    """Is ``v`` equivalent to an explored vertex under generators fixing ``path`` pointwise?"""
    gens = [gm for gm in generators if all(gm[p] == p for p in path)]
    if not gens:
        return False
    reach = {v}
    frontier = [v]
    targets = set(explored)
    while frontier:
        x = frontier.pop()
        for gm in gens:
            y = gm[x]
            if y in targets:
                return True
            if y not in reach:
                reach.add(y)
                frontier.append(y)
    return False


def canonical_graph6(g: Graph) -> str:
    return canonical_form(g).graph6


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_graph6(g) == canonical_graph6(h)
