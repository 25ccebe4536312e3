"""Structural metric dimensions of cacti.

Pipeline: cactus profile (cycles, branch-active vertices, threads), smallest
BBR sets, cycle frames and configurations A-E, ABC/ADE classification, nice BBR
sets, incidence graphs and their vertex covers, and finally

    dim  = L + B + c_ABC + tau(G_vi)
    edim = L + B + c_ADE + tau(G_ei)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterator

from .exact import Mode
from .graph import (
    Graph,
    GraphError,
    NoThreadAnchorsError,
    ThreadProfile,
    block_decomposition,
    cyclomatic_number,
    require_connected,
    thread_profile,
)

log = logging.getLogger(__name__)

DEFAULT_BBR_CAP = 1_000_000

# Thread length in configurations C and E counts thread vertices (u_1..u_k has length k).
THREAD_LENGTH_COUNTS_VERTICES = True

VERTEX_CONFIGS = ("A", "B", "C")
EDGE_CONFIGS = ("A", "D", "E")


class NotCactusError(GraphError):
    pass


class BbrCapExceeded(RuntimeError):
    pass


class AnalysisError(RuntimeError):
    """An internal consistency check of the structural machinery failed."""


def _configs_for(mode: Mode) -> tuple[str, ...]:
    mode = Mode(mode)
    if mode is Mode.VERTEX:
        return VERTEX_CONFIGS
    if mode is Mode.EDGE:
        return EDGE_CONFIGS
    raise ValueError("structural machinery covers vertex and edge modes only")


# ---------------------------------------------------------------------------
# recognition and profile
# ---------------------------------------------------------------------------

def is_cactus(g: Graph) -> bool:
    bd = block_decomposition(g)
    return all(b.is_cycle or len(b.edges) == 1 for b in bd.blocks)


@dataclass(frozen=True)
class CactusProfile:
    graph: Graph
    cycles: tuple[tuple[int, ...], ...]
    branch_active: tuple[frozenset[int], ...]
    threads: ThreadProfile
    # branch_masks[i][j]: bitmask of G_v(C_i) for v = cycles[i][j]
    branch_masks: tuple[tuple[int, ...], ...]

    @property
    def c(self) -> int:
        return len(self.cycles)

    @property
    def girths(self) -> tuple[int, ...]:
        return tuple(len(cy) for cy in self.cycles)

    @property
    def b(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.branch_active)

    @property
    def B(self) -> int:
        return sum(max(0, 2 - bi) for bi in self.b)

    @property
    def end_cycle(self) -> tuple[bool, ...]:
        return tuple(bi == 1 for bi in self.b)

    @property
    def L(self) -> int:
        return self.threads.L

    @cached_property
    def thread_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in t.vertices) for t in self.threads.threads)

    @cached_property
    def shared_vertex(self) -> dict[tuple[int, int], int]:
        """Common vertex of each pair of cycles that share one."""
        out = {}
        sets = [set(cy) for cy in self.cycles]
        for i, j in combinations(range(self.c), 2):
            common = sets[i] & sets[j]
            if common:
                out[(i, j)] = min(common)
        return out

    def active_on(self, i: int, S_mask: int) -> frozenset[int]:
        cy = self.cycles[i]
        return frozenset(cy[j] for j, m in enumerate(self.branch_masks[i]) if S_mask & m)

    def free_threads(self, S_mask: int) -> frozenset[int]:
        return frozenset(t for t, m in enumerate(self.thread_masks) if not S_mask & m)


def _mask(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def cactus_profile(g: Graph) -> CactusProfile:
    require_connected(g)
    bd = block_decomposition(g)
    if not all(b.is_cycle or len(b.edges) == 1 for b in bd.blocks):
        raise NotCactusError("graph has a block that is neither an edge nor a cycle")
    try:
        tp = thread_profile(g)
    except NoThreadAnchorsError:
        tp = ThreadProfile((), {}, 0)
    degs = g.degrees
    cycles = []
    active = []
    masks = []
    for blk in bd.blocks:
        if not blk.is_cycle:
            continue
        cy = blk.cyclic_order()
        cyc_edges = set(blk.edges)
        # components of G - E(C), one per cycle vertex
        comp_masks = []
        ba = set()
        for v in cy:
            seen = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in g.adjacency[u]:
                    e = (u, w) if u < w else (w, u)
                    if e in cyc_edges or w in seen:
                        continue
                    seen.add(w)
                    stack.append(w)
            comp_masks.append(_mask(seen))
            if degs[v] >= 4 or any(degs[w] >= 3 for w in seen if w != v):
                ba.add(v)
        cycles.append(cy)
        active.append(frozenset(ba))
        masks.append(tuple(comp_masks))
    return CactusProfile(g, tuple(cycles), tuple(active), tp, tuple(masks))


# ---------------------------------------------------------------------------
# BBR sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BbrSet:
    set: tuple[int, ...]
    active: tuple[frozenset[int], ...]

    @property
    def a_S(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.active)


def bbr_failure(profile: CactusProfile, S) -> str | None:
    """Reason ``S`` is not a BBR set, or ``None`` when it is one."""
    S_mask = _mask(S)
    for i in range(profile.c):
        a = profile.active_on(i, S_mask)
        if len(a) < 2:
            return f"not biactive: cycle {i} has {len(a)} S-active vertex(es)"
    free = profile.free_threads(S_mask)
    anchors: dict[int, int] = {}
    for t in sorted(free):
        v = profile.threads.threads[t].anchor
        anchors[v] = anchors.get(v, 0) + 1
        if anchors[v] == 2:
            return f"not branch-resolving: two S-free threads hang at vertex {v}"
    return None


def is_bbr(g: Graph, S) -> tuple[bool, str | None]:
    reason = bbr_failure(cactus_profile(g), S)
    return reason is None, reason


def _bbr_predicate(profile: CactusProfile):
    cyc_masks = profile.branch_masks
    anchor_groups: dict[int, list[int]] = {}
    for t, th in enumerate(profile.threads.threads):
        anchor_groups.setdefault(th.anchor, []).append(profile.thread_masks[t])
    groups = [ms for ms in anchor_groups.values() if len(ms) > 1]

    def ok(S_mask: int) -> bool:
        for ms in cyc_masks:
            hits = 0
            for m in ms:
                if S_mask & m:
                    hits += 1
                    if hits == 2:
                        break
            if hits < 2:
                return False
        for ms in groups:
            if sum(1 for m in ms if not S_mask & m) > 1:
                return False
        return True

    return ok


def enumerate_smallest_bbr(
    g: Graph, cap: int = DEFAULT_BBR_CAP, profile: CactusProfile | None = None
) -> Iterator[BbrSet]:
    """All BBR sets of size ``L + B`` in lexicographic order.

    Also confirms, when affordable under ``cap``, that no BBR set of size
    ``L + B - 1`` exists.
    """
    profile = profile or cactus_profile(g)
    if profile.c < 1:
        raise GraphError("smallest BBR sets are defined here for graphs with cycles")
    n = g.n
    size = profile.L + profile.B
    if comb(n, size) > cap:
        raise BbrCapExceeded(f"C({n}, {size}) candidate sets exceed the cap of {cap}")
    ok = _bbr_predicate(profile)
    if size >= 1 and comb(n, size - 1) <= cap:
        for S in combinations(range(n), size - 1):
            if ok(_mask(S)):
                raise AnalysisError(f"BBR set {S} is smaller than L + B = {size}")
    for S in combinations(range(n), size):
        m = _mask(S)
        if ok(m):
            yield BbrSet(S, tuple(profile.active_on(i, m) for i in range(profile.c)))


# ---------------------------------------------------------------------------
# frames and configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleFrame:
    cycle: int
    k: int
    a_S: int
    labelings: tuple[tuple[int, ...], ...]  # every labeling v_0..v_{g-1} achieving the minimal k

    @property
    def labeling(self) -> tuple[int, ...]:
        return self.labelings[0]

    @property
    def s_path(self) -> tuple[int, ...]:
        return self.labeling[1:self.k + 1]

    @property
    def extremes(self) -> frozenset[int]:
        """``v_0`` and ``v_k`` of every minimal labeling."""
        return frozenset(x for lab in self.labelings for x in (lab[0], lab[self.k]))


def frame_from_active(cycle_index: int, cycle: tuple[int, ...], active: frozenset[int]) -> CycleFrame:
    g = len(cycle)
    pos = sorted(j for j, v in enumerate(cycle) if v in active)
    if len(pos) < 2:
        raise GraphError(f"S is not biactive on cycle {cycle_index}")
    gaps = [((pos[(t + 1) % len(pos)] - pos[t]) % g) for t in range(len(pos))]
    big = max(gaps)
    k = g - big
    labs = set()
    for t, gap in enumerate(gaps):
        if gap != big:
            continue
        start, end = pos[(t + 1) % len(pos)], pos[t]
        labs.add(tuple(cycle[(start + s) % g] for s in range(g)))
        labs.add(tuple(cycle[(end - s) % g] for s in range(g)))
    return CycleFrame(cycle_index, k, len(pos), tuple(sorted(labs)))


def cycle_frame(g: Graph, C: int, S, profile: CactusProfile | None = None) -> CycleFrame:
    profile = profile or cactus_profile(g)
    return frame_from_active(C, profile.cycles[C], profile.active_on(C, _mask(S)))


@dataclass(frozen=True)
class ConfigEntry:
    cycle: int
    flags: dict[str, bool] = field(hash=False)
    # witnesses[name] = (labeling index, vertex index i on the cycle, thread index or None)
    witnesses: dict[str, tuple[int, int, int | None]] = field(hash=False)
    # per labeling, the set of configurations it exhibits
    per_labeling: tuple[frozenset[str], ...] = ()

    def contains_any(self, names) -> bool:
        return any(self.flags[x] for x in names)

    @property
    def labelings_disagree(self) -> bool:
        """Some configuration is shown by one minimal labeling but not another."""
        return len(set(self.per_labeling)) > 1

    def verdict_disagrees(self, names) -> bool:
        """Minimal labelings differ on whether the cycle carries any of ``names``."""
        return len({bool(x & set(names)) for x in self.per_labeling}) > 1


def _tlen(thread) -> int:
    n = len(thread.vertices)
    return n if THREAD_LENGTH_COUNTS_VERTICES else n - 1


def _labeling_configs(lab, k, a, free_at, threads):
    """Evaluate configurations A-E on one labeling; returns ``name -> witness or None``."""
    g = len(lab)
    half_lo, half_hi = g // 2, (g + 1) // 2
    even = g % 2 == 0
    free = [free_at.get(v, ()) for v in lab]  # S-free thread indices hanging at v_i
    out: dict[str, tuple[int, int | None] | None] = {}

    out["A"] = (0, None) if (a == 2 and even and k == g // 2) else None

    def first_in(ranges):
        for i in ranges:
            if free[i]:
                return (i, free[i][0])
        return None

    out["B"] = None
    if k <= half_lo - 1:
        idx = [0, *range(k, half_lo), *range(half_hi + k + 1, g)]
        out["B"] = first_in(idx)

    out["C"] = None
    if a == 2 and even and k <= g // 2:
        need = g // 2 - k
        for i in range(0, k + 1):
            hit = next((t for t in free[i] if _tlen(threads[t]) >= need), None)
            if hit is not None:
                out["C"] = (i, hit)
                break

    out["D"] = None
    if k <= half_hi - 1:
        idx = [0, *range(k, half_hi), *range(half_lo + k + 1, g)]
        out["D"] = first_in(idx)

    out["E"] = None
    if a == 2:
        need = half_lo - k + 1
        for i in range(0, k + 1):
            hit = next((t for t in free[i] if _tlen(threads[t]) >= need), None)
            if hit is None:
                continue
            if even and not free[(g // 2 + k - i) % g]:
                continue
            out["E"] = (i, hit)
            break
    return out


def detect_configs(profile: CactusProfile, frame: CycleFrame, free_threads: frozenset[int]) -> ConfigEntry:
    """Configurations on one cycle. A cycle contains a configuration if any minimal labeling shows it."""
    threads = profile.threads.threads
    free_at: dict[int, list[int]] = {}
    for t in sorted(free_threads):
        free_at.setdefault(threads[t].anchor, []).append(t)
    per_lab = [
        _labeling_configs(lab, frame.k, frame.a_S, free_at, threads) for lab in frame.labelings
    ]
    flags = {}
    witnesses = {}
    for name in "ABCDE":
        hits = [li for li, res in enumerate(per_lab) if res[name] is not None]
        flags[name] = bool(hits)
        if hits:
            i, t = per_lab[hits[0]][name]
            witnesses[name] = (hits[0], i, t)
    shown = tuple(frozenset(x for x in "ABCDE" if res[x] is not None) for res in per_lab)
    return ConfigEntry(frame.cycle, flags, witnesses, shown)


def critical_vertices(frame: CycleFrame, girth: int, mode: Mode) -> frozenset[int]:
    """End-vertices of the S-path when its length ``k`` is within the mode's bound.

    The bound is ``floor(g/2) - 1`` for vertices and ``ceil(g/2) - 1`` for edges.
    """
    mode = Mode(mode)
    bound = girth // 2 - 1 if mode is Mode.VERTEX else (girth + 1) // 2 - 1
    if frame.k == 0:
        log.info("empty S-path on cycle %d", frame.cycle)
        return frozenset()
    return frame.extremes if frame.k <= bound else frozenset()


# ---------------------------------------------------------------------------
# analysis over all smallest BBR sets
# ---------------------------------------------------------------------------

@dataclass
class _Signature:
    first_set: tuple[int, ...]
    active: tuple[frozenset[int], ...]
    free: frozenset[int]
    frames: tuple[CycleFrame, ...]
    configs: tuple[ConfigEntry, ...]
    count: int = 1


@dataclass(frozen=True)
class ModeAnalysis:
    mode: Mode
    negative: tuple[bool, ...]
    nice_set: BbrSet
    incident_pairs: tuple[tuple[int, int], ...]
    incidence: Graph
    tau: int
    tau_witness: tuple[int, ...]
    compatible: bool

    @property
    def c_positive(self) -> int:
        return sum(not x for x in self.negative)


class CactusAnalysis:
    """Everything derived from the smallest BBR sets of one cactus."""

    def __init__(self, g: Graph, cap: int = DEFAULT_BBR_CAP) -> None:
        require_connected(g)
        self.graph = g
        self.profile = cactus_profile(g)
        if self.profile.c < 1:
            raise GraphError("structural formula needs at least one cycle (trees are out of scope)")
        self.findings: list[str] = []
        sigs: dict[tuple, _Signature] = {}
        p = self.profile
        for bbr in enumerate_smallest_bbr(g, cap, p):
            S_mask = _mask(bbr.set)
            free = p.free_threads(S_mask)
            key = (bbr.active, free)
            sig = sigs.get(key)
            if sig is not None:
                sig.count += 1
                continue
            frames = tuple(frame_from_active(i, p.cycles[i], bbr.active[i]) for i in range(p.c))
            configs = tuple(detect_configs(p, fr, free) for fr in frames)
            for ce in configs:
                for mode in (Mode.VERTEX, Mode.EDGE):
                    if ce.verdict_disagrees(_configs_for(mode)):
                        self.findings.append(
                            f"cycle {ce.cycle}: minimal labelings disagree on {mode.value} "
                            f"configurations for S={list(bbr.set)}"
                        )
            sigs[key] = _Signature(bbr.set, bbr.active, free, frames, configs)
        if not sigs:
            raise AnalysisError("no BBR set of size L + B exists")
        self.signatures = list(sigs.values())
        self.modes = {m: self._analyze(m) for m in (Mode.VERTEX, Mode.EDGE)}

    @property
    def bbr_count(self) -> int:
        return sum(s.count for s in self.signatures)

    def _incident_pairs(self, sig: _Signature, mode: Mode, among: tuple[bool, ...]) -> list[tuple[int, int]]:
        p = self.profile
        crit = [
            critical_vertices(fr, len(p.cycles[i]), mode) for i, fr in enumerate(sig.frames)
        ]
        out = []
        for (i, j), v in p.shared_vertex.items():
            if among[i] and among[j] and v in crit[i] and v in crit[j]:
                out.append((i, j))
        return out

    def _analyze(self, mode: Mode) -> ModeAnalysis:
        names = _configs_for(mode)
        c = self.profile.c
        negative = tuple(
            any(not s.configs[i].contains_any(names) for s in self.signatures) for i in range(c)
        )
        clean = [
            s for s in self.signatures
            if all(not s.configs[i].contains_any(names) for i in range(c) if negative[i])
        ]
        compatible = bool(clean)
        if not compatible:
            self.findings.append(
                f"{mode.value}: no single smallest BBR set keeps every negative cycle configuration-free"
            )
            clean = self.signatures
        best = min(clean, key=lambda s: (len(self._incident_pairs(s, mode, negative)), s.first_set))
        pairs = tuple(self._incident_pairs(best, mode, negative))
        h = Graph.from_edges(c, pairs)
        tau, cover = vertex_cover_number(h)
        nice = BbrSet(best.first_set, best.active)
        return ModeAnalysis(mode, negative, nice, pairs, h, tau, cover, compatible)

    def nice_signature(self, mode: Mode) -> _Signature:
        target = self.modes[Mode(mode)].nice_set.set
        return next(s for s in self.signatures if s.first_set == target)


def classify_cycles(g: Graph, mode: Mode, cap: int = DEFAULT_BBR_CAP) -> tuple[bool, ...]:
    """``True`` marks a negative cycle, in block order."""
    return CactusAnalysis(g, cap).modes[Mode(mode)].negative


def nice_bbr(g: Graph, mode: Mode, cap: int = DEFAULT_BBR_CAP) -> tuple[BbrSet, tuple[tuple[int, int], ...]]:
    a = CactusAnalysis(g, cap).modes[Mode(mode)]
    return a.nice_set, a.incident_pairs


def incidence_graph(g: Graph, mode: Mode, cap: int = DEFAULT_BBR_CAP) -> Graph:
    return CactusAnalysis(g, cap).modes[Mode(mode)].incidence


# ---------------------------------------------------------------------------
# vertex cover
# ---------------------------------------------------------------------------

def vertex_cover_number(h: Graph) -> tuple[int, tuple[int, ...]]:
    """Exact vertex cover number with the lexicographically least minimum cover."""
    edges = list(h.edges)
    if not edges:
        return 0, ()
    best = [h.n]

    def bb(remaining: list[tuple[int, int]], size: int) -> None:
        if size >= best[0]:
            return
        if not remaining:
            best[0] = size
            return
        # disjoint edges need distinct cover vertices
        used = set()
        matching = 0
        for u, v in remaining:
            if u not in used and v not in used:
                used.update((u, v))
                matching += 1
        if size + matching >= best[0]:
            return
        u, v = remaining[0]
        for x in (u, v):
            bb([e for e in remaining if x not in e], size + 1)

    bb(edges, 0)
    tau = best[0]
    for cover in combinations(range(h.n), tau):
        cs = set(cover)
        if all(u in cs or v in cs for u, v in edges):
            return tau, cover
    raise AssertionError("unreachable: a cover of size tau exists")


# ---------------------------------------------------------------------------
# formula and extremal classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DimensionBreakdown:
    L: int
    B: int
    c: int
    b: tuple[int, ...]
    c_abc: int
    c_ade: int
    tau_vi: int
    tau_ei: int
    nice_set_vertex: tuple[int, ...]
    nice_set_edge: tuple[int, ...]
    G_vi: Graph
    G_ei: Graph
    abc_negative: tuple[bool, ...]
    ade_negative: tuple[bool, ...]
    end_cycle: tuple[bool, ...]
    findings: tuple[str, ...] = ()

    @property
    def dim_formula(self) -> int:
        return self.L + self.B + self.c_abc + self.tau_vi

    @property
    def edim_formula(self) -> int:
        return self.L + self.B + self.c_ade + self.tau_ei

    def upper_bound_status(self) -> dict[str, bool | int | None]:
        """Status of ``dim, edim <= L + 2c`` and its predicted equality (defined for c >= 2)."""
        if self.c < 2:
            return {"bound": None, "dim_equality_predicted": None, "edim_equality_predicted": None}
        all_end = all(self.end_cycle)
        return {
            "bound": self.L + 2 * self.c,
            "dim_within": self.dim_formula <= self.L + 2 * self.c,
            "edim_within": self.edim_formula <= self.L + 2 * self.c,
            "dim_equality_predicted": all_end and not any(self.abc_negative),
            "edim_equality_predicted": all_end and not any(self.ade_negative),
        }


def breakdown_from_analysis(a: CactusAnalysis) -> DimensionBreakdown:
    p = a.profile
    v, e = a.modes[Mode.VERTEX], a.modes[Mode.EDGE]
    return DimensionBreakdown(
        L=p.L,
        B=p.B,
        c=p.c,
        b=p.b,
        c_abc=v.c_positive,
        c_ade=e.c_positive,
        tau_vi=v.tau,
        tau_ei=e.tau,
        nice_set_vertex=v.nice_set.set,
        nice_set_edge=e.nice_set.set,
        G_vi=v.incidence,
        G_ei=e.incidence,
        abc_negative=v.negative,
        ade_negative=e.negative,
        end_cycle=p.end_cycle,
        findings=tuple(a.findings),
    )


def structural_dimensions(g: Graph, cap: int = DEFAULT_BBR_CAP) -> DimensionBreakdown:
    """Evaluate both structural formulas on a connected cactus with at least one cycle."""
    require_connected(g)
    if not is_cactus(g):
        raise NotCactusError("structural formula applies to cacti only")
    if cyclomatic_number(g) < 1:
        raise GraphError("structural formula needs at least one cycle (trees are out of scope)")
    return breakdown_from_analysis(CactusAnalysis(g, cap))


def daisy_petals(g: Graph) -> tuple[int, ...] | None:
    """Petal lengths if ``g`` is a daisy (at least two cycles through one common vertex), else ``None``."""
    if not g.is_connected() or not is_cactus(g):
        return None
    bd = block_decomposition(g)
    if len(bd.blocks) < 2 or not all(b.is_cycle for b in bd.blocks):
        return None
    common = set(bd.blocks[0].vertices)
    for b in bd.blocks[1:]:
        common &= set(b.vertices)
    if len(common) != 1:
        return None
    return tuple(sorted(len(b.vertices) for b in bd.blocks))


@dataclass(frozen=True)
class ExtremalClassification:
    c: int
    L: int
    leafless: bool
    is_daisy: bool
    has_odd_petal: bool
    all_end_cycles: bool
    end_cycles: int
    dim_formula: int
    edim_formula: int
    dim_exact: int
    edim_exact: int
    # nearly-extremal predictions, dim = L + 2c - 1 (resp. edim)
    dim_nearly_cond1: bool
    dim_nearly_cond2: bool
    dim_nearly_statement: bool
    edim_nearly_cond1: bool
    edim_nearly_cond2: bool
    edim_nearly_statement: bool
    findings: tuple[str, ...]

    @property
    def nearly_bound(self) -> int:
        return self.L + 2 * self.c - 1

    @property
    def dim_nearly_extremal(self) -> bool:
        return self.dim_exact == self.nearly_bound

    @property
    def edim_nearly_extremal(self) -> bool:
        return self.edim_exact == self.nearly_bound

    @property
    def dim_nearly_predicted(self) -> bool:
        return self.dim_nearly_cond1 or self.dim_nearly_cond2

    @property
    def edim_nearly_predicted(self) -> bool:
        return self.edim_nearly_cond1 or self.edim_nearly_cond2

    @property
    def leafless_dim_extremal_predicted(self) -> bool | None:
        return (self.is_daisy and not self.has_odd_petal) if self.leafless else None

    @property
    def leafless_edim_extremal_predicted(self) -> bool | None:
        return self.is_daisy if self.leafless else None

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out["findings"] = list(self.findings)
        for k in (
            "nearly_bound", "dim_nearly_extremal", "edim_nearly_extremal", "dim_nearly_predicted",
            "edim_nearly_predicted", "leafless_dim_extremal_predicted", "leafless_edim_extremal_predicted",
        ):
            out[k] = getattr(self, k)
        return out


def _pairwise_incident(negative: tuple[bool, ...], pairs) -> bool:
    neg = [i for i, x in enumerate(negative) if x]
    have = set(pairs)
    return all((i, j) in have for i, j in combinations(neg, 2))


def _nearly_conditions(c: int, end_cycles: int, negative: tuple[bool, ...], pairs):
    positive = sum(not x for x in negative)
    remaining_incident = _pairwise_incident(negative, pairs)
    all_end = end_cycles == c
    # proof reading: c_pos = c - 1, or c_pos <= c - 2 with the rest pairwise incident
    cond1 = all_end and (positive == c - 1 or (positive <= c - 2 and remaining_incident))
    cond2 = end_cycles == c - 1 and positive == c
    # statement reading: at most c - 1 positive and the rest pairwise incident
    statement = (all_end and positive <= c - 1 and remaining_incident) or cond2
    return cond1, cond2, statement


def extremal_classification(
    g: Graph, cap: int = DEFAULT_BBR_CAP, dims: tuple[int, int] | None = None
) -> ExtremalClassification:
    """Nearly-extremal and leafless-extremal predictions checked against exact dimensions.

    ``dims`` may carry precomputed exact ``(dim, edim)``.
    """
    from .exact import metric_dimension

    require_connected(g)
    if not is_cactus(g):
        raise NotCactusError("extremal classification applies to cacti only")
    a = CactusAnalysis(g, cap)
    p = a.profile
    if p.c < 2:
        raise GraphError("extremal classification needs at least two cycles")
    bd = breakdown_from_analysis(a)
    if dims is None:
        dims = (metric_dimension(g, Mode.VERTEX), metric_dimension(g, Mode.EDGE))
    dim_exact, edim_exact = dims
    petals = daisy_petals(g)
    end_cycles = sum(p.end_cycle)
    v, e = a.modes[Mode.VERTEX], a.modes[Mode.EDGE]
    nv = _nearly_conditions(p.c, end_cycles, v.negative, v.incident_pairs)
    ne = _nearly_conditions(p.c, end_cycles, e.negative, e.incident_pairs)
    leafless = min(g.degrees) >= 2
    findings = list(a.findings)
    nearly = p.L + 2 * p.c - 1
    if (nv[0] or nv[1]) != (dim_exact == nearly):
        findings.append("nearly-extremal prediction for dim disagrees with the exact value")
    if nv[2] != (nv[0] or nv[1]):
        findings.append("statement and proof readings of the dim nearly-extremal conditions differ")
    if (ne[0] or ne[1]) != (edim_exact == nearly):
        findings.append("nearly-extremal prediction for edim disagrees with the exact value")
    if ne[2] != (ne[0] or ne[1]):
        findings.append("statement and proof readings of the edim nearly-extremal conditions differ")
    is_daisy = petals is not None
    has_odd = bool(petals) and any(x % 2 for x in petals)
    if leafless:
        if (is_daisy and not has_odd) != (dim_exact == 2 * p.c - 1):
            findings.append("leafless dim extremality disagrees with the daisy characterization")
        if is_daisy != (edim_exact == 2 * p.c - 1):
            findings.append("leafless edim extremality disagrees with the daisy characterization")
    if bd.dim_formula != dim_exact or bd.edim_formula != edim_exact:
        findings.append("structural formula disagrees with the exact solver")
    return ExtremalClassification(
        c=p.c,
        L=p.L,
        leafless=leafless,
        is_daisy=is_daisy,
        has_odd_petal=has_odd,
        all_end_cycles=end_cycles == p.c,
        end_cycles=end_cycles,
        dim_formula=bd.dim_formula,
        edim_formula=bd.edim_formula,
        dim_exact=dim_exact,
        edim_exact=edim_exact,
        dim_nearly_cond1=nv[0],
        dim_nearly_cond2=nv[1],
        dim_nearly_statement=nv[2],
        edim_nearly_cond1=ne[0],
        edim_nearly_cond2=ne[1],
        edim_nearly_statement=ne[2],
        findings=tuple(findings),
    )
