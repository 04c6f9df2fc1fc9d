from __future__ import annotations

import math

import networkx as nx
import pytest
from conftest import any_graphs, bipartite_graphs
from hypothesis import given
from oracles import floyd_warshall

from planarmedian import families
from planarmedian.graph import (
    DistanceOracle,
    Graph,
    GraphError,
    bfs_layers,
    components,
    from_edge_list,
    induced_subgraph,
    interval,
    is_bipartite,
    is_connected,
    is_subgraph,
    is_tree,
    relabel,
    shortest_cycle,
    shortest_odd_cycle,
    two_colouring,
    union,
)
from planarmedian.io import ParseError, parse_edge_list, write_edge_list


def test_basic_counts():
    g = from_edge_list([(0, 1), (1, 2), (1, 0)])
    assert (g.n, g.m) == (3, 2)
    assert g.neighbors(1) == (0, 2)
    assert g.has_edge(2, 1) and not g.has_edge(0, 2)
    assert g.edges() == [(0, 1), (1, 2)]


def test_isolated_vertices_and_errors():
    g = from_edge_list([(0, 1)], vertices=[5])
    assert 5 in g and g.degree(5) == 0
    with pytest.raises(GraphError):
        from_edge_list([(1, 1)])
    with pytest.raises(GraphError):
        from_edge_list([(-1, 2)])
    with pytest.raises(GraphError):
        g.neighbors(9)


def test_structure_helpers():
    q = families.cube()
    assert is_connected(q) and is_bipartite(q) and not is_tree(q)
    assert is_tree(families.path(5)) and is_tree(from_edge_list([], [0]))
    h = induced_subgraph(q, [0, 1, 2, 3])
    assert (h.n, h.m) == (4, 4)
    assert is_subgraph(h, q) and not is_subgraph(q, h)
    assert union(h, q) == q
    r = relabel(families.path(3), {0: 10, 1: 11, 2: 12})
    assert r.edges() == [(10, 11), (11, 12)]
    two = from_edge_list([(0, 1), (2, 3)])
    assert len(components(two)) == 2 and not is_connected(two)
    assert bfs_layers(families.path(4), 0) == {0: 0, 1: 1, 2: 2, 3: 3}


def test_cycles():
    assert len(shortest_cycle(families.cube())) == 4
    assert shortest_odd_cycle(families.cube()) is None
    assert len(shortest_odd_cycle(families.cycle(7))) == 7
    assert shortest_cycle(families.path(4)) is None
    assert two_colouring(families.complete(3)) is None


@given(any_graphs())
def test_distances_match_floyd_warshall(data):
    n, edges = data
    g = from_edge_list(edges, range(n))
    d = DistanceOracle(g)
    ref = floyd_warshall({v: set(g.neighbors(v)) for v in g})
    small = DistanceOracle(g, table_limit=0)
    for u in g:
        for v in g:
            assert d(u, v) == ref[u][v]
            assert small(u, v) == ref[u][v]


@given(bipartite_graphs(max_n=8))
def test_interval_matches_networkx(data):
    n, edges = data
    g = from_edge_list(edges, range(n))
    d = DistanceOracle(g)
    ng = nx.Graph(edges)
    ng.add_nodes_from(range(n))
    for u in g:
        for v in g:
            want = {x for p in nx.all_shortest_paths(ng, u, v) for x in p}
            assert interval(g, d, u, v) == want


def test_interval_disconnected_raises():
    g = from_edge_list([(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        interval(g, DistanceOracle(g), 0, 2)
    assert DistanceOracle(g)(0, 3) == math.inf


def test_edge_list_roundtrip_and_names():
    text = "# a comment\n3 1\n1 2  # trailing\nvertex 9\n"
    pg = parse_edge_list(text)
    assert pg.graph.edges() == [(1, 2), (1, 3)] and 9 in pg.graph
    assert write_edge_list(pg.graph) == "1 2\n1 3\nvertex 9\n"
    named = parse_edge_list("a b\nb c\n")
    assert named.graph.n == 3 and named.name(named.lookup("c")) == "c"
    assert write_edge_list(named.graph, named.names) == "a b\nb c\n"
    with pytest.raises(ParseError):
        parse_edge_list("1 2 3\n")
    with pytest.raises(ParseError):
        parse_edge_list("4 4\n")


@given(any_graphs())
def test_writer_parser_roundtrip(data):
    n, edges = data
    g = from_edge_list(edges, range(n))
    assert parse_edge_list(write_edge_list(g)).graph == g


def test_graph_equality_and_hash():
    a = from_edge_list([(0, 1), (1, 2)])
    b = Graph({0: [1], 1: [0, 2], 2: [1]})
    assert a == b and hash(a) == hash(b)
