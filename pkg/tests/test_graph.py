import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metricdim.families import complete, cycle, daisy, path, star, with_pendant_path
from metricdim.graph import (
    UNREACHABLE,
    DisconnectedGraphError,
    Graph,
    Graph6Error,
    GraphError,
    NoThreadAnchorsError,
    all_pairs_distances,
    block_decomposition,
    cyclomatic_number,
    degree_stats,
    encode_graph6,
    parse_graph6,
    read_graph6_lines,
    thread_profile,
    vertex_edge_distance,
)

from conftest import from_nx, to_nx


@st.composite
def graphs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def connected_graphs(draw, min_n=1, max_n=12):
    g = draw(graphs(min_n, max_n))
    # chain the vertices so the result is connected, then keep the random extras
    extra = [(v, draw(st.integers(0, v - 1))) for v in range(1, g.n)]
    return Graph.from_edges(g.n, [*g.edges, *extra])


# -- type invariants ---------------------------------------------------------

def test_rejects_loops_and_bad_vertices():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph(0, ())


def test_parallel_edges_collapse():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.adjacency == ((1,), (0, 2), (1,))


# -- graph6 ------------------------------------------------------------------

def test_graph6_small_examples():
    assert parse_graph6("A_").edges == ((0, 1),)
    assert encode_graph6(Graph.from_edges(2, [(0, 1)])) == "A_"
    assert encode_graph6(cycle(3)) == "Bw"


def test_graph6_matches_independent_decoder():
    # networkx decodes "D?{" as the star with centre 4
    g = parse_graph6("D?{")
    assert g.edges == ((0, 4), (1, 4), (2, 4), (3, 4))
    assert g.edges == from_nx(nx.from_graph6_bytes(b"D?{")).edges


@pytest.mark.parametrize("bad", ["", "A", "A_x", "B\x7f", "~??", "A`"])
def test_graph6_errors(bad):
    with pytest.raises(Graph6Error):
        parse_graph6(bad)


def test_graph6_header_and_large_order():
    g = cycle(70)
    text = encode_graph6(g)
    assert text.startswith("~")
    assert parse_graph6(text) == g
    assert parse_graph6(">>graph6<<" + encode_graph6(cycle(5))) == cycle(5)
    assert text.encode() == nx.to_graph6_bytes(to_nx(g), header=False).strip()


@given(graphs(max_n=20))
@settings(max_examples=200)
def test_graph6_round_trip(g):
    text = encode_graph6(g)
    assert parse_graph6(text) == g
    assert text.encode() == nx.to_graph6_bytes(to_nx(g), header=False).strip()


def test_read_graph6_lines_skips_comments():
    lines = ["# corpus\n", "\n", "A_\n", "  Bw  \n"]
    assert list(read_graph6_lines(lines)) == [(3, "A_"), (4, "Bw")]


# -- distances ---------------------------------------------------------------

def test_distance_examples():
    assert all_pairs_distances(path(3)).dist[0][2] == 2
    assert all_pairs_distances(cycle(6)).dist[0][3] == 3
    two = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert all_pairs_distances(two).dist[0][2] is UNREACHABLE


def test_vertex_edge_distance_examples():
    o = all_pairs_distances(cycle(5))
    assert vertex_edge_distance(o, 0, (2, 3)) == 2
    assert vertex_edge_distance(o, 2, (2, 3)) == 0
    assert vertex_edge_distance(all_pairs_distances(path(4)), 0, (2, 3)) == 2
    with pytest.raises(GraphError):
        vertex_edge_distance(o, 0, (0, 2))


@given(graphs(max_n=10))
@settings(max_examples=150)
def test_distance_invariants(g):
    d = all_pairs_distances(g).dist
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for u in range(g.n):
        assert d[u][u] == 0
        for v in range(g.n):
            assert d[u][v] == d[v][u]
            assert d[u][v] == ref[u].get(v, UNREACHABLE)
            assert (d[u][v] == 1) == g.has_edge(u, v)
            for w in range(g.n):
                if None not in (d[u][v], d[v][w], d[u][w]):
                    assert d[u][w] <= d[u][v] + d[v][w]


# -- simple invariants -------------------------------------------------------

def test_cyclomatic_examples():
    assert cyclomatic_number(path(5)) == 0
    assert cyclomatic_number(cycle(7)) == 1
    assert cyclomatic_number(complete(4)) == 3
    with pytest.raises(DisconnectedGraphError):
        cyclomatic_number(Graph.from_edges(3, [(0, 1)]))


def test_degree_stats_examples():
    assert degree_stats(cycle(5)) == (2, 2, frozenset())
    assert degree_stats(star(3)) == (1, 3, frozenset({1, 2, 3}))
    assert degree_stats(complete(4)) == (3, 3, frozenset())


# -- blocks ------------------------------------------------------------------

def test_blocks_two_triangles():
    bd = block_decomposition(daisy([3, 3]))
    assert len(bd.blocks) == 2
    assert bd.cut_vertices == {0}
    assert all(b.non_trivial and b.is_end_block and b.is_cycle for b in bd.blocks)


def test_blocks_path_and_k4():
    bd = block_decomposition(path(5))
    assert len(bd.blocks) == 4 and not any(b.non_trivial for b in bd.blocks)
    assert bd.cut_vertices == {1, 2, 3}
    bd = block_decomposition(complete(4))
    assert len(bd.blocks) == 1 and not bd.blocks[0].is_cycle and not bd.cut_vertices


def test_blocks_reject_disconnected():
    with pytest.raises(DisconnectedGraphError):
        block_decomposition(Graph.from_edges(4, [(0, 1), (2, 3)]))


@given(connected_graphs(max_n=12))
@settings(max_examples=200)
def test_block_partition_matches_networkx(g):
    bd = block_decomposition(g)
    h = to_nx(g)
    assert sum(len(b.edges) for b in bd.blocks) == g.m
    assert sorted(e for b in bd.blocks for e in b.edges) == list(g.edges)
    ref = sorted(sorted(tuple(sorted(e)) for e in comp) for comp in nx.biconnected_component_edges(h))
    assert sorted(sorted(b.edges) for b in bd.blocks) == ref
    assert bd.cut_vertices == set(nx.articulation_points(h))
    # block-cut graph is a tree
    bc = nx.Graph()
    for i, b in enumerate(bd.blocks):
        for v in b.vertices:
            if v in bd.cut_vertices:
                bc.add_edge(("b", i), ("v", v))
    if bc.number_of_nodes():
        assert nx.is_tree(bc)
    # blocks are ordered by their smallest edge
    assert [b.edges[0] for b in bd.blocks] == sorted(b.edges[0] for b in bd.blocks)


@given(connected_graphs(max_n=12))
@settings(max_examples=200)
def test_cyclomatic_additivity(g):
    total = 0
    for b in block_decomposition(g).blocks:
        sub, _ = g.subgraph(b.vertices)
        total += cyclomatic_number(sub)
    assert total == cyclomatic_number(g)


# -- threads -----------------------------------------------------------------

def test_thread_examples():
    assert thread_profile(cycle(5)).L == 0 and thread_profile(cycle(5)).threads == ()
    tp = thread_profile(star(3))
    assert tp.ell == {0: 3} and tp.L == 2
    tp = thread_profile(with_pendant_path(cycle(3), 0, 2))
    assert tp.ell == {0: 1} and tp.L == 0
    assert tp.threads[0].vertices == (4, 3)


def test_thread_profile_rejects_paths():
    with pytest.raises(NoThreadAnchorsError):
        thread_profile(path(4))
    with pytest.raises(NoThreadAnchorsError):
        thread_profile(Graph(1, ()))


@given(connected_graphs(min_n=3, max_n=12))
@settings(max_examples=150)
def test_thread_consistency(g):
    if max(g.degrees) <= 2 and g.m == g.n - 1:
        return
    tp = thread_profile(g)
    assert tp.L == sum(k - 1 for k in tp.ell.values() if k > 1)
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    assert sorted(t.vertices[0] for t in tp.threads) == leaves
    for t in tp.threads:
        assert g.degree(t.vertices[0]) == 1
        assert all(g.degree(v) == 2 for v in t.vertices[1:])
        assert g.degree(t.anchor) >= 3
        assert g.has_edge(t.vertices[-1], t.anchor)
