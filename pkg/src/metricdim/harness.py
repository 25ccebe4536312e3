"""Verification campaigns: corpus sources, per-graph checks and JSONL reports."""

from __future__ import annotations

import json
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import IO, Iterator

from .blocks import (
    CompositionError,
    compose_generator,
    connectivity_class,
    cyclomatic_additivity_check,
    delta3_bound_check,
    theorem_blocks_check,
)
from .cactus import (
    DEFAULT_BBR_CAP,
    AnalysisError,
    BbrCapExceeded,
    CactusAnalysis,
    breakdown_from_analysis,
    extremal_classification,
    is_cactus,
    vertex_cover_number,
)
from .exact import DEFAULT_PAIR_CAP, BudgetExceeded, Mode, SizeCapExceeded, exact_dimension
from .generate import (
    GraphFilter,
    enumerate_graphs,
    random_block_glued,
    random_min_degree_graph,
)
from .graph import (
    Graph,
    GraphError,
    cyclomatic_number,
    encode_graph6,
    is_cycle_graph,
    parse_graph6,
    read_graph6_lines,
)

CHECKS = ("conjecture34", "formula", "extremal", "blocks", "delta3")
FILTERS = ("connected", "delta2", "delta3", "cactus", "exclude-cycles", "kappa1")

PASS, FAIL = "PASS", "FAIL"


def skipped(reason: str) -> str:
    return f"SKIPPED({reason})"


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tasks and records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanTask:
    source: str
    filters: tuple[str, ...] = ("connected",)
    checks: tuple[str, ...] = ("conjecture34",)
    pair_cap: int = DEFAULT_PAIR_CAP
    bbr_cap: int = DEFAULT_BBR_CAP
    time_budget: float | None = None
    mixed: bool = False
    timing: bool = False

    def __post_init__(self) -> None:
        if not self.filters or not self.checks:
            raise UsageError("a scan needs at least one filter and one check")
        checks = CHECKS if "all" in self.checks else self.checks
        bad = [c for c in checks if c not in CHECKS]
        if bad:
            raise UsageError(f"unknown check(s): {', '.join(bad)}")
        bad = [f for f in self.filters if f not in FILTERS]
        if bad:
            raise UsageError(f"unknown filter(s): {', '.join(bad)}")
        object.__setattr__(self, "checks", tuple(c for c in CHECKS if c in checks))
        parse_source(self.source)

    def accepts(self, g: Graph) -> bool:
        if not g.is_connected():
            return False
        delta = min(g.degrees) if g.n > 1 else 0
        if "delta2" in self.filters and delta < 2:
            return False
        if "delta3" in self.filters and delta < 3:
            return False
        if "exclude-cycles" in self.filters and is_cycle_graph(g):
            return False
        if "cactus" in self.filters and not is_cactus(g):
            return False
        if "kappa1" in self.filters and (g.n < 3 or connectivity_class(g) != "1"):
            return False
        return True


@dataclass
class ScanRecord:
    graph6: str
    n: int
    m: int
    c: int
    delta: int
    kappa_class: str
    bound: int  # 2c - 1
    dim: int | None = None
    edim: int | None = None
    mdim: int | None = None
    status: dict[str, str] = field(default_factory=dict)
    equality: dict[str, bool] = field(default_factory=dict)
    extremal: dict | None = None
    details: dict[str, dict] = field(default_factory=dict)
    timing: float | None = None

    def to_dict(self) -> dict:
        out = {
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "c": self.c,
            "delta": self.delta,
            "kappa_class": self.kappa_class,
            "bound": self.bound,
            "dim": self.dim,
            "edim": self.edim,
            "status": self.status,
            "equality": self.equality,
            "extremal": self.extremal,
            "details": self.details,
        }
        if self.mdim is not None:
            out["mdim"] = self.mdim
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @property
    def failed(self) -> bool:
        return any(s == FAIL for s in self.status.values())


# ---------------------------------------------------------------------------
# sources
# ---------------------------------------------------------------------------

def _int_range(text: str) -> tuple[int, int]:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return int(lo), int(hi)
    return int(text), int(text)


def parse_source(source: str) -> tuple[str, tuple]:
    """Validate a source string; returns ``(kind, arguments)``.

    ``enumerate:N`` or ``enumerate:A-B`` (orders), ``file:PATH``,
    ``random:N,M,COUNT,SEED`` where N and M may be ranges ``lo-hi`` and M may be
    ``auto`` (``n+1`` to ``2n`` edges), and ``blocks:COUNT,SEED[,MAX_N]``.
    """
    kind, _, arg = source.partition(":")
    try:
        if kind == "enumerate":
            lo, hi = _int_range(arg)
            if ":" not in arg and "-" not in arg:
                lo = 1
            return kind, (lo, hi)
        if kind == "file":
            if not arg:
                raise UsageError("file source needs a path")
            return kind, (arg,)
        if kind == "random":
            n_txt, m_txt, count, seed = arg.split(",")
            m_range = None if m_txt == "auto" else _int_range(m_txt)
            return kind, (_int_range(n_txt), m_range, int(count), int(seed))
        if kind == "blocks":
            parts = arg.split(",")
            if len(parts) not in (2, 3):
                raise ValueError
            max_n = int(parts[2]) if len(parts) == 3 else 14
            return kind, (int(parts[0]), int(parts[1]), max_n)
    except ValueError as exc:
        raise UsageError(f"malformed source {source!r}") from exc
    raise UsageError(f"unknown source kind {kind!r}")


@dataclass(frozen=True)
class CorpusError:
    line: int
    text: str
    error: str


def random_graph_at(index: int, n_range, m_range, seed: int) -> Graph:
    """The ``index``-th graph of a seeded random stream; each index is independent of the others."""
    rng = random.Random(f"{seed}:{index}")
    n = rng.randint(max(3, n_range[0]), n_range[1])
    top = n * (n - 1) // 2
    lo, hi = (n + 1, 2 * n) if m_range is None else m_range
    lo, hi = max(lo, n), min(hi, top)
    if lo > hi:
        lo = hi = max(n, min(top, lo))
    m = rng.randint(lo, hi)
    return random_min_degree_graph(n, m, rng.randrange(2**32))


def iter_source(source: str) -> Iterator[Graph | CorpusError]:
    kind, args = parse_source(source)
    if kind == "enumerate":
        lo, hi = args
        for n in range(lo, hi + 1):
            yield from enumerate_graphs(n, GraphFilter())
    elif kind == "file":
        with open(args[0], encoding="ascii", errors="replace") as fh:
            for lineno, text in read_graph6_lines(fh):
                try:
                    yield parse_graph6(text)
                except GraphError as exc:
                    yield CorpusError(lineno, text, str(exc))
    elif kind == "random":
        n_range, m_range, count, seed = args
        for i in range(count):
            yield random_graph_at(i, n_range, m_range, seed)
    else:
        count, seed, max_n = args
        for i in range(count):
            yield random_block_glued(seed + i, max_n)


def _enumerate_cactus(source: str) -> Iterator[Graph] | None:
    """Cactus-only builtin enumeration goes through the faster cactus generator."""
    kind, args = parse_source(source)
    if kind != "enumerate":
        return None
    lo, hi = args

    def gen():
        for n in range(lo, hi + 1):
            yield from enumerate_graphs(n, GraphFilter(cactus_only=True))

    return gen()


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def _exact(g: Graph, mode: Mode, task: ScanTask):
    return exact_dimension(g, mode, pair_cap=task.pair_cap, time_budget=task.time_budget)


def _skip_reason(exc: Exception) -> str:
    if isinstance(exc, SizeCapExceeded):
        return "pair cap"
    if isinstance(exc, BudgetExceeded):
        return "time budget"
    if isinstance(exc, BbrCapExceeded):
        return "bbr cap"
    return type(exc).__name__


def breakdown_record(g: Graph, analysis: CactusAnalysis, dim_w, edim_w, extremal=None) -> dict:
    """JSON breakdown of both structural formulas next to the exact values."""
    bd = breakdown_from_analysis(analysis)
    _, cover_v = vertex_cover_number(bd.G_vi)
    _, cover_e = vertex_cover_number(bd.G_ei)
    return {
        "graph6": encode_graph6(g),
        "n": g.n,
        "m": g.m,
        "c": bd.c,
        "L": bd.L,
        "B": bd.B,
        "b": list(bd.b),
        "c_abc": bd.c_abc,
        "c_ade": bd.c_ade,
        "tau_vi": bd.tau_vi,
        "tau_ei": bd.tau_ei,
        "dim_formula": bd.dim_formula,
        "edim_formula": bd.edim_formula,
        "dim_exact": dim_w.size if dim_w else None,
        "edim_exact": edim_w.size if edim_w else None,
        "extremal": extremal,
        "witnesses": {
            "dim": list(dim_w.set) if dim_w else None,
            "edim": list(edim_w.set) if edim_w else None,
            "nice_set_vertex": list(bd.nice_set_vertex),
            "nice_set_edge": list(bd.nice_set_edge),
            "G_vi": [list(e) for e in bd.G_vi.edges],
            "G_ei": [list(e) for e in bd.G_ei.edges],
            "cover_vi": list(cover_v),
            "cover_ei": list(cover_e),
            "abc_negative": list(bd.abc_negative),
            "ade_negative": list(bd.ade_negative),
        },
        "findings": list(bd.findings),
    }


def _kappa(g: Graph) -> str:
    return connectivity_class(g) if g.n >= 2 else "0"


def check_graph(g: Graph, task: ScanTask) -> ScanRecord:
    """Run every requested check on one graph."""
    start = time.perf_counter()
    c = cyclomatic_number(g)
    delta = min(g.degrees) if g.n > 1 else 0
    rec = ScanRecord(encode_graph6(g), g.n, g.m, c, delta, _kappa(g), 2 * c - 1)
    witnesses: dict[Mode, object] = {}
    dims_error: Exception | None = None
    if g.n >= 2:
        try:
            for mode in (Mode.VERTEX, Mode.EDGE):
                witnesses[mode] = _exact(g, mode, task)
            rec.dim = witnesses[Mode.VERTEX].size
            rec.edim = witnesses[Mode.EDGE].size
        except (SizeCapExceeded, BudgetExceeded) as exc:
            dims_error = exc
        if task.mixed and dims_error is None:
            try:
                rec.mdim = _exact(g, Mode.MIXED, task).size
            except (SizeCapExceeded, BudgetExceeded):
                rec.mdim = None
    if rec.dim is not None:
        rec.equality = {"dim_eq_bound": rec.dim == rec.bound, "edim_eq_bound": rec.edim == rec.bound}

    for check in task.checks:
        fn = _CHECKS[check]
        if dims_error is not None:
            rec.status[check] = skipped(_skip_reason(dims_error))
            continue
        try:
            fn(g, rec, witnesses, task)
        except (SizeCapExceeded, BudgetExceeded, BbrCapExceeded) as exc:
            rec.status[check] = skipped(_skip_reason(exc))
    if task.timing:
        rec.timing = round(time.perf_counter() - start, 6)
    return rec


def conjecture_check(g: Graph, rec: ScanRecord, witnesses, task: ScanTask) -> None:
    """Both dimensions against ``2c - 1`` on graphs with minimum degree two that are not cycles."""
    if g.n < 3 or rec.delta < 2:
        rec.status["conjecture34"] = skipped("minimum degree below 2")
        return
    if is_cycle_graph(g):
        rec.status["conjecture34"] = skipped("cycle")
        return
    ok = rec.dim <= rec.bound and rec.edim <= rec.bound
    rec.status["conjecture34"] = PASS if ok else FAIL
    if not ok:
        rec.details["conjecture34"] = {
            "dim_witness": list(witnesses[Mode.VERTEX].set),
            "edim_witness": list(witnesses[Mode.EDGE].set),
            "bound": rec.bound,
        }


def formula_crosscheck(g: Graph, rec: ScanRecord, witnesses, task: ScanTask) -> None:
    """Structural formulas against the exact solver on cacti with at least one cycle."""
    if not is_cactus(g):
        rec.status["formula"] = skipped("not a cactus")
        return
    if rec.c < 1:
        rec.status["formula"] = skipped("tree")
        return
    try:
        a = CactusAnalysis(g, task.bbr_cap)
    except AnalysisError as exc:
        rec.status["formula"] = FAIL
        rec.details["formula"] = {"error": str(exc)}
        return
    bd = breakdown_from_analysis(a)
    ok = bd.dim_formula == rec.dim and bd.edim_formula == rec.edim
    rec.status["formula"] = PASS if ok else FAIL
    rec.equality["dim_eq_L+2c"] = rec.dim == bd.L + 2 * bd.c
    rec.equality["edim_eq_L+2c"] = rec.edim == bd.L + 2 * bd.c
    rec.equality["dim_eq_L+2c-1"] = rec.dim == bd.L + 2 * bd.c - 1
    rec.equality["edim_eq_L+2c-1"] = rec.edim == bd.L + 2 * bd.c - 1
    if not ok:
        rec.details["formula"] = breakdown_record(g, a, witnesses[Mode.VERTEX], witnesses[Mode.EDGE])


def extremal_check(g: Graph, rec: ScanRecord, witnesses, task: ScanTask) -> None:
    """Nearly-extremal and leafless-extremal predictions against exact values."""
    if not is_cactus(g):
        rec.status["extremal"] = skipped("not a cactus")
        return
    if rec.c < 2:
        rec.status["extremal"] = skipped("fewer than two cycles")
        return
    cls = extremal_classification(g, task.bbr_cap, (rec.dim, rec.edim))
    rec.extremal = cls.as_dict()
    disagree = [
        f for f in cls.findings
        if "disagrees" in f
    ]
    rec.status["extremal"] = FAIL if disagree else PASS
    if disagree:
        rec.details["extremal"] = {"findings": disagree}


def blocks_check(g: Graph, rec: ScanRecord, witnesses, task: ScanTask) -> None:
    """Additivity, composed generators within their bound, and the block chain in both modes."""
    if g.n < 3 or rec.delta < 2:
        rec.status["blocks"] = skipped("minimum degree below 2")
        return
    if is_cycle_graph(g):
        rec.status["blocks"] = skipped("cycle")
        return
    detail: dict = {"additivity": cyclomatic_additivity_check(g)}
    ok = detail["additivity"]
    for mode in (Mode.VERTEX, Mode.EDGE):
        try:
            cert = compose_generator(g, mode)
            detail[f"compose_{mode.value}"] = {
                "achieved": cert.achieved,
                "bound": cert.bound,
                "verified": cert.verified,
            }
            ok &= cert.verified and cert.achieved <= cert.bound
        except CompositionError as exc:
            detail[f"compose_{mode.value}"] = {"error": str(exc)}
            ok = False
        dim = rec.dim if mode is Mode.VERTEX else rec.edim
        chain = theorem_blocks_check(g, mode, dim)
        detail[f"chain_{mode.value}"] = chain.as_dict()
        ok &= chain.chain_holds and chain.strict_check is not False
    rec.status["blocks"] = PASS if ok else FAIL
    if not ok:
        rec.details["blocks"] = detail


def delta3_check(g: Graph, rec: ScanRecord, witnesses, task: ScanTask) -> None:
    if g.n < 4 or rec.delta < 3:
        rec.status["delta3"] = skipped("minimum degree below 3")
        return
    out = delta3_bound_check(g, (rec.dim, rec.edim))
    ok = out["chain_holds"] and out["strict"]
    rec.status["delta3"] = PASS if ok else FAIL
    if not ok:
        rec.details["delta3"] = out


_CHECKS = {
    "conjecture34": conjecture_check,
    "formula": formula_crosscheck,
    "extremal": extremal_check,
    "blocks": blocks_check,
    "delta3": delta3_check,
}


# ---------------------------------------------------------------------------
# scanning
# ---------------------------------------------------------------------------

def _work(item: tuple[int, str, ScanTask]) -> tuple[str, int, str]:
    index, g6, task = item
    rec = check_graph(parse_graph6(g6), task)
    return g6, index, rec.to_json()


def _candidates(task: ScanTask, errors: list[CorpusError]) -> Iterator[tuple[int, str]]:
    stream = None
    if "cactus" in task.filters:
        stream = _enumerate_cactus(task.source)
    if stream is None:
        stream = iter_source(task.source)
    index = 0
    for item in stream:
        if isinstance(item, CorpusError):
            errors.append(item)
            print(f"line {item.line}: {item.error}", file=sys.stderr)
            continue
        if task.accepts(item):
            yield index, encode_graph6(item)
            index += 1


@dataclass
class ScanSummary:
    records: int = 0
    status: dict[str, Counter] = field(default_factory=dict)
    equality: Counter = field(default_factory=Counter)
    census: Counter = field(default_factory=Counter)
    fails: list[str] = field(default_factory=list)
    errors: list[CorpusError] = field(default_factory=list)

    def add(self, rec: dict) -> None:
        self.records += 1
        failed = False
        for check, s in rec["status"].items():
            bucket = "SKIPPED" if s.startswith("SKIPPED") else s
            self.status.setdefault(check, Counter())[bucket] += 1
            failed |= s == FAIL
        if failed:
            self.fails.append(rec["graph6"])
        for k, v in rec["equality"].items():
            self.equality[k] += bool(v)
        ex = rec.get("extremal")
        if ex:
            self.census["cacti_c>=2"] += 1
            self.census["daisy"] += ex["is_daisy"]
            self.census["daisy_without_odd_petal"] += ex["is_daisy"] and not ex["has_odd_petal"]
            self.census["dim_nearly_extremal"] += ex["dim_nearly_extremal"]
            self.census["edim_nearly_extremal"] += ex["edim_nearly_extremal"]
            if ex["leafless"]:
                self.census["leafless"] += 1
                dim_eq = ex["dim_exact"] == 2 * ex["c"] - 1
                edim_eq = ex["edim_exact"] == 2 * ex["c"] - 1
                self.census["leafless_dim_eq_2c-1"] += dim_eq
                self.census["leafless_edim_eq_2c-1"] += edim_eq
                # both counts stay at zero when the daisy characterization holds
                self.census["leafless_dim_eq_not_even_daisy"] += dim_eq and not (
                    ex["is_daisy"] and not ex["has_odd_petal"]
                )
                self.census["leafless_edim_eq_not_daisy"] += edim_eq and not ex["is_daisy"]

    @property
    def exit_code(self) -> int:
        return 1 if self.fails else 0

    def to_dict(self) -> dict:
        return {
            "records": self.records,
            "status": {k: dict(sorted(v.items())) for k, v in sorted(self.status.items())},
            "equality": dict(sorted(self.equality.items())),
            "extremal_census": dict(sorted(self.census.items())),
            "fails": self.fails,
            "errors": [{"line": e.line, "text": e.text, "error": e.error} for e in self.errors],
            "exit_code": self.exit_code,
        }


def scan(task: ScanTask, out: IO[str], jobs: int = 1) -> ScanSummary:
    """Run a scan, writing JSON Lines to ``out`` in graph6 order; returns the summary.

    Records are ordered by (graph6, position in the source), so serial and
    parallel runs write byte-identical reports.
    """
    summary = ScanSummary()
    items = [(i, g6, task) for i, g6 in _candidates(task, summary.errors)]
    if jobs > 1 and len(items) > 1:
        with Pool(jobs) as pool:
            results = pool.map(_work, items, chunksize=max(1, len(items) // (jobs * 8)))
    else:
        results = [_work(it) for it in items]
    results.sort(key=lambda r: (r[0], r[1]))
    for _, _, line in results:
        out.write(line + "\n")
        summary.add(json.loads(line))
    return summary
