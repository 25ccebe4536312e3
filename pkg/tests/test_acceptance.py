"""The eight acceptance criteria at their stated scales and zero tolerance.

Each test records one PASS/FAIL line, printed in the terminal summary.
"""

import io
from itertools import combinations_with_replacement

import pytest

from metricdim.blocks import (
    compose_generator,
    cyclomatic_additivity_check,
    delta3_bound_check,
    theorem_blocks_check,
)
from metricdim.cactus import CactusAnalysis, breakdown_from_analysis, extremal_classification
from metricdim.exact import Mode, exact_dimension
from metricdim.families import cycle, daisy
from metricdim.generate import GraphFilter, enumerate_graphs, random_block_glued
from metricdim.graph import encode_graph6, parse_graph6
from metricdim.harness import ScanTask, scan

RANDOM_SEED = 20240601
BLOCKS_SEED = 9


@pytest.fixture(scope="module")
def cactus_corpus():
    """Every connected cactus with at least one cycle on at most 11 vertices, fully analysed."""
    out = []
    for n in range(3, 12):
        for g in enumerate_graphs(n, GraphFilter(cactus_only=True, min_cycles=1)):
            a = CactusAnalysis(g)
            dim = exact_dimension(g, Mode.VERTEX).size
            edim = exact_dimension(g, Mode.EDGE).size
            out.append((g, a, dim, edim))
    return out


def _scan(task, jobs=1):
    buf = io.StringIO()
    summary = scan(task, buf, jobs)
    return buf.getvalue(), summary


def test_criterion_1_formula_matches_exact(cactus_corpus, acceptance):
    bad = []
    for g, a, dim, edim in cactus_corpus:
        bd = breakdown_from_analysis(a)
        if (bd.dim_formula, bd.edim_formula) != (dim, edim):
            bad.append(encode_graph6(g))
    ok = not bad and len(cactus_corpus) == 9234
    acceptance(1, ok, f"{len(cactus_corpus)} cacti with c>=1, n<=11; {len(bad)} formula mismatches")
    assert ok, bad[:10]


def test_criterion_2_conjecture_scan(acceptance):
    _, systematic = _scan(ScanTask("enumerate:8", filters=("delta2", "exclude-cycles"), checks=("conjecture34",)))
    _, stochastic = _scan(ScanTask(f"random:4-12,auto,10000,{RANDOM_SEED}", filters=("delta2", "exclude-cycles"),
                                   checks=("conjecture34",)))
    s1 = systematic.status["conjecture34"]
    s2 = stochastic.status["conjecture34"]
    ok = (s1.get("FAIL", 0) == 0 and s2.get("FAIL", 0) == 0 and s1.get("SKIPPED", 0) == 0
          and s2.get("PASS", 0) == 10000)
    acceptance(2, ok, f"n<=8 systematic {dict(s1)}; 10000 random n in 4..12 {dict(s2)}")
    assert ok
    assert systematic.records == s1["PASS"] > 8000


def test_criterion_3_daisies(acceptance):
    bad = []
    count = 0
    for c in (2, 3, 4):
        for petals in combinations_with_replacement((3, 4, 5, 6), c):
            g = daisy(petals)
            dim = exact_dimension(g, Mode.VERTEX).size
            edim = exact_dimension(g, Mode.EDGE).size
            count += 1
            all_even = all(x % 2 == 0 for x in petals)
            if (dim == 2 * c - 1) != all_even or edim != 2 * c - 1:
                bad.append((petals, dim, edim))
    ok = not bad and count == 65
    acceptance(3, ok, f"{count} daisies with 2-4 petals from {{3,4,5,6}}; {len(bad)} violations")
    assert ok, bad


def test_criterion_4_nearly_extremal(cactus_corpus, acceptance):
    checked = 0
    bad = []
    findings = 0
    for g, _, dim, edim in cactus_corpus:
        if g.n > 10 or g.m - g.n + 1 < 2:
            continue
        cl = extremal_classification(g, dims=(dim, edim))
        checked += 1
        findings += bool(cl.findings)
        if cl.dim_nearly_predicted != cl.dim_nearly_extremal or cl.edim_nearly_predicted != cl.edim_nearly_extremal:
            bad.append(encode_graph6(g))
    ok = not bad and checked > 0
    acceptance(4, ok, f"{checked} cacti with c>=2, n<=10; {len(bad)} prediction mismatches; "
                      f"{findings} graphs with findings")
    assert ok, bad[:10]


def test_criterion_5_leafless_strictness(cactus_corpus, acceptance):
    checked = 0
    bad = []
    for g, _, dim, edim in cactus_corpus:
        c = g.m - g.n + 1
        if c < 2 or min(g.degrees) < 2:
            continue
        checked += 1
        if dim > 2 * c - 1 or edim > 2 * c - 1:
            bad.append(encode_graph6(g))
    ok = not bad and checked > 0
    acceptance(5, ok, f"{checked} leafless cacti with c>=2, n<=11; {len(bad)} violations")
    assert ok, bad


def test_criterion_6_min_degree_three(acceptance):
    checked = 0
    bad = []
    for n in range(4, 9):
        for g in enumerate_graphs(n, GraphFilter(min_degree=3)):
            r = delta3_bound_check(g)
            checked += 1
            if not (r["strict"] and r["chain_holds"]):
                bad.append(encode_graph6(g))
    ok = not bad and checked > 0
    acceptance(6, ok, f"{checked} graphs with min degree 3, n<=8; {len(bad)} violations of strictness or the chain")
    assert ok, bad


def test_criterion_7_block_machinery(acceptance):
    additivity = 0
    for n in range(1, 9):
        for g in enumerate_graphs(n):
            assert cyclomatic_additivity_check(g)
            additivity += 1
    bad = []
    for i in range(1000):
        g = random_block_glued(BLOCKS_SEED + i)
        assert cyclomatic_additivity_check(g)
        additivity += 1
        for mode in (Mode.VERTEX, Mode.EDGE):
            cert = compose_generator(g, mode)
            chain = theorem_blocks_check(g, mode)
            if not (cert.verified and cert.achieved <= cert.bound and chain.chain_holds
                    and chain.strict_check is not False):
                bad.append((encode_graph6(g), mode.value))
    ok = not bad
    acceptance(7, ok, f"additivity on {additivity} graphs; 1000 block-glued graphs x 2 modes, "
                      f"{len(bad)} composition or chain failures")
    assert ok, bad[:10]


def test_criterion_8_baseline_and_plumbing(cactus_corpus, acceptance):
    cycles_ok = all(
        exact_dimension(cycle(n), Mode.VERTEX).size == 2 == exact_dimension(cycle(n), Mode.EDGE).size
        for n in range(3, 31)
    )
    corpus = [g for n in range(1, 9) for g in enumerate_graphs(n)] + [g for g, *_ in cactus_corpus]
    round_trip = all(parse_graph6(encode_graph6(g)) == g for g in corpus)
    task = ScanTask(f"random:5-10,auto,300,{RANDOM_SEED}", filters=("delta2",),
                    checks=("conjecture34", "blocks", "delta3"))
    serial, _ = _scan(task, jobs=1)
    parallel, _ = _scan(task, jobs=3)
    identical = serial == parallel and len(serial.splitlines()) == 300
    ok = cycles_ok and round_trip and identical
    acceptance(8, ok, f"C_3..C_30 dims = 2: {cycles_ok}; graph6 round-trip over {len(corpus)} graphs: "
                      f"{round_trip}; serial == parallel report: {identical}")
    assert ok
