from __future__ import annotations

import random

import pytest

from planarmedian.embedding import planar_embed
from planarmedian.generate import (
    _has_hole_or_pinch,
    add_pendant_trees,
    generate_qs,
    generate_to_size,
    polyomino_piece,
    random_polyomino,
)
from planarmedian.metric import is_median_oracle, is_median_planar
from planarmedian.squares import is_cube, is_square_graph


def test_k1_cube():
    inst = generate_qs(0, 1, cube_prob=1.0)
    assert is_cube(inst.graph) and len(inst.factorization) == 1


def test_k2_two_cubes():
    inst = generate_qs(0, 2, cube_prob=1.0)
    assert (inst.graph.n, inst.graph.m) == (12, 20)
    assert is_median_oracle(inst.graph).is_median


def test_deterministic():
    a, b = generate_qs(42, 9), generate_qs(42, 9)
    assert a.graph == b.graph and a.embedding.rotation == b.embedding.rotation
    assert a.factorization.to_json() == b.factorization.to_json()
    assert generate_qs(43, 9).graph != a.graph


@pytest.mark.parametrize("seed", range(15))
def test_soundness(seed):
    inst = generate_qs(seed, 1 + seed % 10)
    g = inst.graph
    assert is_median_planar(g).is_median
    assert is_median_oracle(g).is_median
    inst.factorization.validate()
    assert inst.embedding.host == g


def test_ground_truth_factors_are_pieces():
    inst = generate_qs(8, 7)
    for fac in inst.factorization.factors:
        assert is_cube(fac.graph) or is_square_graph(fac.graph)[0]
    assert len(inst.maps) == len(inst.factorization) - 1


def test_polyominoes_are_square_graphs():
    rng = random.Random(1)
    for _ in range(30):
        cells = random_polyomino(rng, rng.randint(2, 9))
        assert not _has_hole_or_pinch(cells)
        piece = polyomino_piece(cells)
        assert is_square_graph(piece.graph)[0]
        planar_embed(piece.graph)
        with_trees = add_pendant_trees(piece, rng, 3)
        assert with_trees.graph.n == piece.graph.n + 3
        assert is_square_graph(with_trees.graph)[0]


def test_hole_detection():
    ring = {(x, y) for x in range(3) for y in range(3)} - {(1, 1)}
    assert _has_hole_or_pinch(ring)
    assert _has_hole_or_pinch({(0, 0), (1, 1)})
    assert not _has_hole_or_pinch({(0, 0), (1, 0), (1, 1)})


def test_size_target():
    inst = generate_to_size(3, 400)
    assert 400 <= inst.graph.n < 470


def test_invalid_k():
    with pytest.raises(ValueError):
        generate_qs(0, 0)
