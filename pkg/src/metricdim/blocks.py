"""Reduction of metric dimension bounds to non-trivial blocks.

A generator of a graph with minimum degree two is assembled from generators
of its non-trivial blocks. Cycle blocks contribute a single vertex. Pairs the
union leaves undistinguished sit in two blocks sharing a cut vertex, and one
extra vertex per selected block-vertex incidence repairs them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exact import Mode, exact_dimension, is_generator, undistinguished_pairs
from .graph import (
    Graph,
    GraphError,
    all_pairs_distances,
    block_decomposition,
    cyclomatic_number,
    is_cycle_graph,
    require_connected,
)


class CompositionError(RuntimeError):
    """The composed set failed verification; this would contradict the construction."""


def cyclomatic_additivity_check(g: Graph) -> bool:
    """Global cyclomatic number equals the sum over blocks, each computed on its own."""
    total = cyclomatic_number(g)
    per_block = 0
    for b in block_decomposition(g).blocks:
        sub, _ = g.subgraph(b.vertices)
        per_block += cyclomatic_number(sub)
    return total == per_block


def connectivity_class(g: Graph) -> str:
    """Vertex connectivity bucketed as ``"1"``, ``"2"`` or ``">=3"`` (``"0"`` for K_1, K_2)."""
    require_connected(g)
    if g.n <= 2:
        return "0" if g.n == 1 else "1"
    if block_decomposition(g).cut_vertices:
        return "1"
    if g.m == g.n * (g.n - 1) // 2:
        return ">=3" if g.n >= 4 else "2"
    for a, b in combinations(range(g.n), 2):
        keep = [v for v in range(g.n) if v not in (a, b)]
        sub, _ = g.subgraph(keep)
        if not sub.is_connected():
            return "2"
    return ">=3"


def _require_leafless(g: Graph, what: str) -> None:
    require_connected(g)
    if g.n < 3 or min(g.degrees) < 2:
        raise GraphError(f"{what} needs minimum degree at least 2")


# ---------------------------------------------------------------------------
# minimum degree three
# ---------------------------------------------------------------------------

def delta3_bound_check(g: Graph, dims: tuple[int, int] | None = None) -> dict:
    """Degree-sum chain for minimum degree three, plus the strict bound on dim and edim.

    ``2m >= 3n`` gives ``n - 1 <= 2m - 2n - 1 = 2c - 3``, and any ``n - 1``
    vertices generate both universes, so ``dim, edim <= n - 1 < 2c - 1``.
    """
    require_connected(g)
    if min(g.degrees) < 3:
        raise GraphError("delta3_bound_check needs minimum degree at least 3")
    c = cyclomatic_number(g)
    if dims is None:
        dims = (exact_dimension(g, Mode.VERTEX).size, exact_dimension(g, Mode.EDGE).size)
    dim, edim = dims
    degree_sum = sum(g.degrees)
    links = {
        "degree_sum==2m": degree_sum == 2 * g.m,
        "2m>=3n": degree_sum >= 3 * g.n,
        "n-1<=2c-3": g.n - 1 <= 2 * c - 3,
        "n-1<=2c-2": g.n - 1 <= 2 * c - 2,
        "dims<=n-1": dim <= g.n - 1 and edim <= g.n - 1,
    }
    return {
        "n_minus_1": g.n - 1,
        "two_c_minus_1": 2 * c - 1,
        "degree_sum": degree_sum,
        "three_n": 3 * g.n,
        "links": links,
        "chain_holds": all(links.values()),
        "dim": dim,
        "edim": edim,
        "strict": dim < 2 * c - 1 and edim < 2 * c - 1,
    }


# ---------------------------------------------------------------------------
# block composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockChoice:
    index: int  # position in the block decomposition
    vertices: tuple[int, ...]
    is_cycle: bool
    is_end_block: bool
    dim: int  # dimension of the block in the requested mode (2 for cycles)
    chosen: tuple[int, ...]  # S_i: exact witness, or one vertex for a cycle


@dataclass(frozen=True)
class CompositionCertificate:
    mode: Mode
    blocks: tuple[BlockChoice, ...]
    p: int
    q: int
    S: tuple[int, ...]
    gamma_edges: tuple[tuple[int, int], ...]  # (block index, critical cut vertex)
    E_prime: tuple[tuple[int, int], ...]
    v_paths: dict[tuple[int, int], tuple[int, ...]] = field(hash=False)
    S_prime: tuple[int, ...] = ()
    S_star: tuple[int, ...] = ()
    verified: bool = False
    findings: tuple[str, ...] = ()

    @property
    def per_block_dim(self) -> tuple[int, ...]:
        return tuple(b.dim for b in self.blocks)

    @property
    def bound(self) -> int:
        return sum(self.per_block_dim) + self.p - 1

    @property
    def achieved(self) -> int:
        return len(self.S_star)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "blocks": [
                {
                    "index": b.index,
                    "vertices": list(b.vertices),
                    "is_cycle": b.is_cycle,
                    "is_end_block": b.is_end_block,
                    "S_i": list(b.chosen),
                }
                for b in self.blocks
            ],
            "per_block_dim": list(self.per_block_dim),
            "p": self.p,
            "q": self.q,
            "S": list(self.S),
            "S_star": list(self.S_star),
            "bound": self.bound,
            "achieved": self.achieved,
            "gamma_edges": [list(e) for e in self.gamma_edges],
            "E_prime": [list(e) for e in self.E_prime],
            "v_paths": {f"{i}@{v}": list(path) for (i, v), path in sorted(self.v_paths.items())},
            "S_prime": list(self.S_prime),
            "verified": self.verified,
            "findings": list(self.findings),
        }


def _cycle_vertex(g: Graph, block, cut: frozenset[int], dist) -> int:
    non_cut = [v for v in block.vertices if v not in cut]
    if not non_cut:
        # a cycle block whose every vertex is a cut vertex; any vertex is allowed
        return block.vertices[0]
    if block.is_end_block and len(block.vertices) % 2 == 0:
        (w,) = [v for v in block.vertices if v in cut]
        half = len(block.vertices) // 2
        non_cut = [v for v in non_cut if dist[v][w] != half]
    return non_cut[0]


def _block_items(block, mode: Mode) -> list:
    return list(block.vertices) if mode is Mode.VERTEX else list(block.edges)


def _item_dist(dist, s: int, x) -> int:
    if isinstance(x, tuple):
        return min(dist[s][x[0]], dist[s][x[1]])
    return dist[s][x]


def _v_path(dist, items, chosen: tuple[int, ...], v: int) -> tuple[int, ...]:
    """Vertices of the items of a block whose distances to every ``s`` in ``chosen`` run through ``v``."""
    out = set()
    for x in items:
        if all(_item_dist(dist, s, x) == _item_dist(dist, v, x) + dist[v][s] for s in chosen):
            out.update(x if isinstance(x, tuple) else (x,))
    return tuple(sorted(out))


def _select_e_prime(
    gamma: list[tuple[int, int]], block_ids: list[int]
) -> list[tuple[int, int]]:
    """Root each tree of the forest at a maximum-degree block, keep one edge per cut vertex."""
    nb_block: dict[int, list[int]] = {b: [] for b in block_ids}
    nb_vertex: dict[int, list[int]] = {}
    for b, v in gamma:
        nb_block[b].append(v)
        nb_vertex.setdefault(v, []).append(b)
    seen_blocks: set[int] = set()
    seen_vertices: set[int] = set()
    chosen: list[tuple[int, int]] = []
    while True:
        todo = [b for b in block_ids if b not in seen_blocks and nb_block[b]]
        if not todo:
            break
        root = min(todo, key=lambda b: (-len(nb_block[b]), b))
        seen_blocks.add(root)
        roots = [root]
        while roots:
            r = roots.pop(0)
            for v in sorted(nb_block[r]):
                if v in seen_vertices:
                    continue
                seen_vertices.add(v)
                for other in sorted(nb_vertex[v]):
                    if other == r or other in seen_blocks:
                        continue
                    chosen.append((other, v))
                    seen_blocks.add(other)
                    roots.append(other)
    return sorted(chosen)


def compose_generator(g: Graph, mode: Mode = Mode.VERTEX) -> CompositionCertificate:
    """Assemble a metric generator from per-block generators and repair vertices.

    Raises :class:`CompositionError` if the result is not a generator, which
    would mean the construction (or this implementation of it) is wrong.
    """
    mode = Mode(mode)
    if mode is Mode.MIXED:
        raise GraphError("block composition is defined for vertex and edge generators")
    _require_leafless(g, "compose_generator")
    if is_cycle_graph(g):
        raise GraphError("compose_generator excludes cycles")
    bd = block_decomposition(g)
    dist = all_pairs_distances(g).dist
    cut = bd.cut_vertices
    nontrivial = [i for i, b in enumerate(bd.blocks) if b.non_trivial]
    # non-cycle blocks first, the order used by the bound's bookkeeping
    nontrivial.sort(key=lambda i: (bd.blocks[i].is_cycle, i))
    choices = []
    for i in nontrivial:
        b = bd.blocks[i]
        if b.is_cycle:
            choices.append(BlockChoice(i, b.vertices, True, b.is_end_block, 2, (_cycle_vertex(g, b, cut, dist),)))
            continue
        sub, verts = g.subgraph(b.vertices)
        w = exact_dimension(sub, mode)
        choices.append(
            BlockChoice(i, b.vertices, False, b.is_end_block, w.size, tuple(verts[x] for x in w.set))
        )
    q = len(choices)
    p = sum(not c.is_cycle for c in choices)
    S = tuple(sorted({v for c in choices for v in c.chosen}))
    by_index = {c.index: c for c in choices}
    findings: list[str] = []

    if q == 1:
        # a single non-trivial block is the whole graph here
        star = choices[0].chosen
        ok = is_generator(g, star, mode)
        if not ok:
            raise CompositionError(f"block generator {star} does not generate the graph")
        return CompositionCertificate(mode, tuple(choices), p, q, S, (), (), {}, (), star, ok)

    # attribute every undistinguished pair to blocks sharing a cut vertex
    items_of = {c.index: _block_items(bd.blocks[c.index], mode) for c in choices}
    home: dict = {}
    for idx, items in items_of.items():
        for x in items:
            home.setdefault(x, set()).add(idx)
    gamma: set[tuple[int, int]] = set()
    for x, y in undistinguished_pairs(g, S, mode):
        hits = set()
        for i in home.get(x, ()):
            for j in home.get(y, ()):
                if i == j:
                    continue
                shared = set(bd.blocks[i].vertices) & set(bd.blocks[j].vertices)
                for v in shared:
                    hits.add((i, j, v))
        if not hits:
            findings.append(f"pair {x}, {y} is not attributable to two blocks sharing a cut vertex")
        for i, j, v in hits:
            gamma.add((i, v))
            gamma.add((j, v))
    gamma_edges = sorted(gamma)
    e_prime = _select_e_prime(gamma_edges, [c.index for c in choices])

    v_paths = {}
    repair = []
    for i, v in e_prime:
        path = _v_path(dist, items_of[i], by_index[i].chosen, v)
        v_paths[(i, v)] = path
        options = [x for x in path if x != v]
        if not options:
            findings.append(f"v-path of block {i} at {v} is trivial; using the block's farthest vertex")
            options = [x for x in bd.blocks[i].vertices if x != v]
        repair.append(max(options, key=lambda x: (dist[v][x], -x)))
    S_prime = tuple(sorted(set(repair)))
    star = tuple(sorted(set(S) | set(S_prime)))
    ok = is_generator(g, star, mode)
    cert = CompositionCertificate(
        mode, tuple(choices), p, q, S, tuple(gamma_edges), tuple(e_prime), v_paths,
        S_prime, star, ok, tuple(findings),
    )
    if not ok:
        raise CompositionError(
            f"composed set {star} is not a {mode.value} generator: "
            f"{undistinguished_pairs(g, star, mode)[:3]}"
        )
    return cert


# ---------------------------------------------------------------------------
# block bound chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockChain:
    mode: Mode
    c: int
    p: int
    q: int
    block_c: tuple[int, ...]
    block_dim: tuple[int, ...]
    block_is_cycle: tuple[bool, ...]
    dim: int
    hypothesis: bool  # dim(G_i) <= 2c(G_i) - 1 on every non-cycle block
    composition_bound: int  # sum dim(G_i) + p - 1
    hypothesis_bound: int  # sum over non-cycles of (2c_i - 1) + 2(q - p) + p - 1
    printed_chain_value: int  # the intermediate 2c - (q - p) - 1
    vertex_disjoint_blocks: bool

    @property
    def target(self) -> int:
        return 2 * self.c - 1

    @property
    def links(self) -> dict[str, int]:
        """Slack of each inequality in the chain (negative slack means the link fails)."""
        return {
            "dim<=composition_bound": self.composition_bound - self.dim,
            "composition_bound<=hypothesis_bound": self.hypothesis_bound - self.composition_bound,
            "hypothesis_bound==2c-1": self.target - self.hypothesis_bound,
            "dim<=2c-1": self.target - self.dim,
        }

    @property
    def chain_holds(self) -> bool:
        s = self.links
        first = s["dim<=composition_bound"] >= 0 and s["hypothesis_bound==2c-1"] == 0
        # the middle link is only claimed under the hypothesis
        mid = s["composition_bound<=hypothesis_bound"] >= 0 or not self.hypothesis
        return first and mid and (s["dim<=2c-1"] >= 0 or not self.hypothesis)

    @property
    def printed_chain_holds(self) -> bool:
        return self.dim <= self.printed_chain_value

    @property
    def strict_predicted(self) -> bool:
        """A non-cycle block below its own bound, or two vertex-disjoint non-trivial blocks."""
        slack_block = any(
            not cyc and d < 2 * ci - 1
            for cyc, d, ci in zip(self.block_is_cycle, self.block_dim, self.block_c)
        )
        return slack_block or self.vertex_disjoint_blocks

    @property
    def strict_check(self) -> bool | None:
        """``None`` when strictness is not predicted, else whether ``dim < 2c - 1`` holds."""
        return (self.dim < self.target) if self.strict_predicted else None

    def as_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "c": self.c,
            "p": self.p,
            "q": self.q,
            "block_c": list(self.block_c),
            "block_dim": list(self.block_dim),
            "block_is_cycle": list(self.block_is_cycle),
            "dim": self.dim,
            "hypothesis": self.hypothesis,
            "composition_bound": self.composition_bound,
            "hypothesis_bound": self.hypothesis_bound,
            "target": self.target,
            "links": self.links,
            "chain_holds": self.chain_holds,
            "printed_chain_value": self.printed_chain_value,
            "printed_chain_holds": self.printed_chain_holds,
            "vertex_disjoint_blocks": self.vertex_disjoint_blocks,
            "strict_predicted": self.strict_predicted,
            "strict_check": self.strict_check,
        }


def theorem_blocks_check(g: Graph, mode: Mode = Mode.VERTEX, dim: int | None = None) -> BlockChain:
    """Evaluate the block bound chain for one mode; ``dim`` may carry the precomputed global value."""
    mode = Mode(mode)
    if mode is Mode.MIXED:
        raise GraphError("the block chain is stated for vertex and edge dimensions")
    _require_leafless(g, "theorem_blocks_check")
    if is_cycle_graph(g):
        raise GraphError("theorem_blocks_check excludes cycles")
    bd = block_decomposition(g)
    blocks = sorted(
        (b for b in bd.blocks if b.non_trivial), key=lambda b: (b.is_cycle, b.edges[0])
    )
    block_c, block_dim, block_cyc = [], [], []
    for b in blocks:
        sub, _ = g.subgraph(b.vertices)
        block_c.append(cyclomatic_number(sub))
        block_cyc.append(b.is_cycle)
        block_dim.append(2 if b.is_cycle else exact_dimension(sub, mode).size)
    q = len(blocks)
    p = sum(not x for x in block_cyc)
    c = cyclomatic_number(g)
    if dim is None:
        dim = exact_dimension(g, mode).size
    hyp = all(cyc or d <= 2 * ci - 1 for cyc, d, ci in zip(block_cyc, block_dim, block_c))
    comp = sum(block_dim) + p - 1
    hyp_bound = sum(2 * ci - 1 for cyc, ci in zip(block_cyc, block_c) if not cyc) + 2 * (q - p) + p - 1
    disjoint = any(
        not set(a.vertices) & set(b.vertices) for a, b in combinations(blocks, 2)
    )
    return BlockChain(
        mode, c, p, q, tuple(block_c), tuple(block_dim), tuple(block_cyc), dim, hyp, comp,
        hyp_bound, 2 * c - (q - p) - 1, disjoint,
    )
