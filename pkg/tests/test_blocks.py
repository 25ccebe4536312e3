from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings

from metricdim.blocks import (
    CompositionError,
    compose_generator,
    connectivity_class,
    cyclomatic_additivity_check,
    delta3_bound_check,
    theorem_blocks_check,
)
from metricdim.exact import Mode, exact_dimension, is_generator, undistinguished_pairs
from metricdim.families import (
    complete,
    complete_bipartite,
    cycle,
    daisy,
    glue,
    path,
    petersen,
    star,
    with_pendant_path,
)
from metricdim.generate import random_block_glued
from metricdim.graph import GraphError, block_decomposition

from conftest import to_nx
from test_graph import connected_graphs


def test_additivity_examples():
    assert cyclomatic_additivity_check(daisy([3, 3]))
    assert cyclomatic_additivity_check(with_pendant_path(complete(4), 0, 3))
    assert cyclomatic_additivity_check(star(5))


@given(connected_graphs(max_n=12))
@settings(max_examples=100)
def test_additivity_property(g):
    assert cyclomatic_additivity_check(g)


def test_connectivity_class_matches_networkx():
    for g in (path(2), cycle(5), complete(4), complete(3), petersen(), daisy([3, 4]),
              complete_bipartite(2, 3), complete_bipartite(3, 3)):
        k = nx.node_connectivity(to_nx(g))
        assert connectivity_class(g) == (str(k) if k < 3 else ">=3")


# -- minimum degree three ----------------------------------------------------

def test_delta3_examples():
    r = delta3_bound_check(complete(4))
    assert (r["n_minus_1"], r["two_c_minus_1"], r["dim"]) == (3, 5, 3)
    assert r["chain_holds"] and r["strict"]
    r = delta3_bound_check(complete_bipartite(3, 3))
    assert (r["n_minus_1"], r["two_c_minus_1"]) == (5, 7) and r["chain_holds"]
    r = delta3_bound_check(petersen())
    assert (r["n_minus_1"], r["two_c_minus_1"]) == (9, 11) and r["strict"]
    with pytest.raises(GraphError):
        delta3_bound_check(cycle(4))


# -- composition -------------------------------------------------------------

def test_compose_daisy_two_squares():
    cert = compose_generator(daisy([4, 4]), Mode.VERTEX)
    assert (cert.q, cert.p) == (2, 0)
    assert len(cert.S) == 2 and len(cert.E_prime) == 1 and len(cert.S_prime) == 1
    assert cert.achieved == 3 == cert.bound
    assert cert.verified and is_generator(daisy([4, 4]), cert.S_star, Mode.VERTEX)
    # cycle choices avoid the centre and its antipode
    for b in cert.blocks:
        assert b.chosen[0] != 0 and b.chosen[0] not in (2, 5)


def test_compose_disjoint_squares_need_no_repair():
    g = glue(cycle(4), cycle(4), 0, 0, 2)
    cert = compose_generator(g, Mode.VERTEX)
    assert cert.gamma_edges == () and cert.S_prime == ()
    assert cert.S_star == cert.S and cert.achieved == 2 <= cert.bound


def test_compose_single_block_and_errors():
    cert = compose_generator(complete(4), Mode.EDGE)
    assert cert.q == 1 and cert.S_star == exact_dimension(complete(4), Mode.EDGE).set
    with pytest.raises(GraphError):
        compose_generator(cycle(5), Mode.VERTEX)
    with pytest.raises(GraphError):
        compose_generator(with_pendant_path(cycle(4), 0, 1), Mode.VERTEX)
    with pytest.raises(GraphError):
        compose_generator(daisy([4, 4]), Mode.MIXED)
    assert issubclass(CompositionError, RuntimeError)


def test_compose_k4_and_square():
    g = glue(complete(4), cycle(4), 0, 0)
    for mode in (Mode.VERTEX, Mode.EDGE):
        cert = compose_generator(g, mode)
        assert (cert.p, cert.q) == (1, 2)
        assert cert.verified and cert.achieved <= cert.bound


def _check_certificate(g, cert):
    assert cert.verified and is_generator(g, cert.S_star, cert.mode)
    assert cert.achieved <= cert.bound
    # E' selection: at most q - 1 edges and one unselected edge per cut vertex
    assert len(cert.E_prime) <= cert.q - 1
    unselected = Counter(v for i, v in cert.gamma_edges if (i, v) not in cert.E_prime)
    assert all(k <= 1 for k in unselected.values())
    assert set(cert.E_prime) <= set(cert.gamma_edges)
    # vertex-disjoint blocks are separated by S alone
    bd = block_decomposition(g)
    bad = undistinguished_pairs(g, cert.S, cert.mode)
    blocks = [bd.blocks[b.index] for b in cert.blocks]
    for i, a in enumerate(blocks):
        for b in blocks[i + 1:]:
            if set(a.vertices) & set(b.vertices):
                continue
            ia = set(a.vertices) if cert.mode is Mode.VERTEX else set(a.edges)
            ib = set(b.vertices) if cert.mode is Mode.VERTEX else set(b.edges)
            for x, y in bad:
                assert not ((x in ia and y in ib) or (x in ib and y in ia))
    assert not cert.findings


def test_compose_random_block_glued():
    for seed in range(120):
        g = random_block_glued(seed)
        for mode in (Mode.VERTEX, Mode.EDGE):
            _check_certificate(g, compose_generator(g, mode))


# -- bound chain -------------------------------------------------------------

def test_chain_daisy_reports_printed_value():
    ch = theorem_blocks_check(daisy([4, 4]), Mode.VERTEX)
    assert (ch.c, ch.p, ch.q, ch.dim) == (2, 0, 2, 3)
    assert ch.printed_chain_value == 1 and not ch.printed_chain_holds
    assert ch.composition_bound == 3 and ch.hypothesis_bound == 3 and ch.chain_holds
    assert not ch.strict_predicted and ch.strict_check is None


def test_chain_k4_and_square():
    ch = theorem_blocks_check(glue(complete(4), cycle(4), 0, 0), Mode.VERTEX)
    assert (ch.p, ch.q) == (1, 2) and ch.block_dim[0] == 3 and ch.block_c[0] == 3
    assert ch.hypothesis and ch.chain_holds
    assert ch.strict_predicted and ch.strict_check is True


def test_chain_cactus_reduces_to_counting():
    ch = theorem_blocks_check(daisy([3, 5, 4]), Mode.EDGE)
    assert ch.p == 0 and ch.hypothesis and ch.hypothesis_bound == 2 * ch.c - 1


def test_chain_random_block_glued():
    for seed in range(120):
        g = random_block_glued(seed)
        for mode in (Mode.VERTEX, Mode.EDGE):
            ch = theorem_blocks_check(g, mode)
            assert ch.chain_holds
            assert ch.strict_check in (None, True)
