from __future__ import annotations

import pytest
from conftest import bipartite_graphs
from hypothesis import given
from oracles import adjacency, canonical_cycle, is_median_brute, isometric_cycles_brute

from planarmedian import families
from planarmedian.embedding import NotPlanar
from planarmedian.graph import distances, from_edge_list
from planarmedian.metric import (
    Violation,
    convex_hull,
    cube_free_verdict,
    is_c6_q3_inferring,
    is_convex,
    is_cube_free_median_planar,
    is_median_oracle,
    is_median_planar,
    is_q3minus_q3_inferring,
    isometric_cycles,
    median_of_triple,
)


@pytest.mark.parametrize(
    "g, median",
    [
        (families.cube(), True),
        (families.cycle(4), True),
        (families.path(5), True),
        (families.grid(3, 3), True),
        (families.cycle(6), False),
        (families.complete_bipartite(2, 3), False),
        (families.cube_minus_vertex(), False),
        (families.hypercube(4), True),
    ],
)
def test_oracle_on_named_graphs(g, median):
    assert is_median_oracle(g).is_median is median
    assert is_median_brute(adjacency(g)) is median


def test_oracle_witnesses():
    v = is_median_oracle(families.cycle(6))
    assert v.witness.kind is Violation.TRIPLE and v.witness.verify(families.cycle(6))
    d = is_median_oracle(from_edge_list([(0, 1), (2, 3)]))
    assert d.witness.kind is Violation.DISCONNECTED


def test_median_of_triple_in_cube():
    q = families.cube()
    assert median_of_triple(q, distances(q), 1, 2, 4) == {0}
    assert median_of_triple(q, distances(q), 0, 3, 5) == {1}


def test_spec_examples_for_characterization():
    assert is_median_planar(families.cycle(6)).reason is Violation.NOT_C6_Q3_INFERRING
    c8 = is_median_planar(families.cycle(8))
    assert c8.reason is Violation.BAD_ISOMETRIC_CYCLE and c8.witness.detail["length"] == 8
    assert is_median_planar(families.complete_bipartite(2, 3)).reason is Violation.HAS_K23
    assert is_median_planar(families.domino()).is_median
    with pytest.raises(NotPlanar):
        is_median_planar(families.complete(5))


def test_cube_free_variant():
    assert is_cube_free_median_planar(families.grid(3, 4))
    assert not is_cube_free_median_planar(families.cube())
    assert cube_free_verdict(families.cube()).witness.detail["length"] == 6


def test_isometric_cycles_of_cube():
    cyc = isometric_cycles(families.cube())
    lengths = sorted(c.length for c in cyc)
    assert lengths == [4] * 6 + [6] * 4


@given(bipartite_graphs(max_n=8))
def test_isometric_cycles_match_brute(data):
    n, edges = data
    g = from_edge_list(edges, range(n))
    got = {canonical_cycle(c.vertices) for c in isometric_cycles(g)}
    assert got == isometric_cycles_brute(adjacency(g))


@given(bipartite_graphs(max_n=9))
def test_planar_characterization_matches_oracle(data):
    n, edges = data
    g = from_edge_list(edges, range(n))
    try:
        verdict = is_median_planar(g)
    except NotPlanar:
        return
    assert verdict.is_median == is_median_oracle(g).is_median == is_median_brute(adjacency(g))
    if verdict.witness is not None:
        assert verdict.witness.verify(g)


def test_c6_and_q3_minus_inference():
    assert is_c6_q3_inferring(families.cube())[0]
    ok, cyc = is_c6_q3_inferring(families.cycle(6))
    assert not ok and cyc.length == 6
    assert not is_q3minus_q3_inferring(families.cube_minus_vertex())[0]
    assert is_q3minus_q3_inferring(families.glued_cubes())[0]


def test_convex_hull_examples():
    q = families.cube()
    c6 = next(c for c in isometric_cycles(q) if c.length == 6)
    assert convex_hull(q, None, c6.vertices) == q
    assert convex_hull(q, None, [3]).n == 1
    c6g = families.cycle(6)
    assert convex_hull(c6g, None, [0, 3]) == c6g
    assert convex_hull(families.grid(3, 3), None, [0, 4]).n == 4


@given(bipartite_graphs(max_n=8))
def test_hull_is_convex_and_minimal(data):
    n, edges = data
    g = from_edge_list(edges, range(n))
    seed = [0, n - 1]
    h = convex_hull(g, None, seed)
    assert is_convex(g, None, h)
    # dropping any non-seed vertex must break convexity, else the hull was not least
    for v in h:
        if v in seed:
            continue
        rest = set(h.vertices) - {v}
        assert not is_convex(g, None, rest)
