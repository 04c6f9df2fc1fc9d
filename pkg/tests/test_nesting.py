from __future__ import annotations

import pytest
from oracles import forest_brute

from planarmedian import families
from planarmedian.embedding import planar_embed, reroot_outer
from planarmedian.generate import generate_qs
from planarmedian.nesting import StraddleError, level_slices, nesting_forest, square_order
from planarmedian.squares import enumerate_squares


def _as_tuples(pm: dict) -> dict:
    out = {}
    for k, v in pm.items():
        key = k.key if hasattr(k, "key") else k
        out[key] = v.key if v is not None else None
    return out


def _all_roots(e):
    for f in e.faces:
        yield reroot_outer(e, f.id)


@pytest.mark.parametrize(
    "g",
    [families.cube(), families.domino(), families.glued_cubes(), families.grid(3, 4), families.cogwheel(8)],
    ids=["cube", "domino", "glued", "grid34", "cogwheel8"],
)
def test_forest_matches_brute_for_every_outer_face(g):
    e0 = planar_embed(g)
    sq = enumerate_squares(g)
    for e in _all_roots(e0):
        rot = {v: list(e.rotation[v]) for v in g}
        want = forest_brute(rot, e.outer.walk[0], [s.vertices for s in sq])
        for method in ("sweep", "order"):
            got = _as_tuples(nesting_forest(g, e, sq, method=method).parent_map())
            assert got == want


@pytest.mark.parametrize("seed", range(10))
def test_sweep_agrees_with_order_on_generated(seed):
    inst = generate_qs(seed, 2 + seed % 6)
    for e in (inst.embedding, planar_embed(inst.graph)):
        a = nesting_forest(inst.graph, e, method="sweep")
        b = nesting_forest(inst.graph, e, method="order")
        assert a.parent_map() == b.parent_map()


def test_forest_shape():
    inst = generate_qs(11, 8)
    f = nesting_forest(inst.graph, inst.embedding)
    kids = f.children
    for nd in f.nodes:
        if nd.kind == "vertex":
            assert nd.id not in kids
        if nd.parent is not None:
            assert f.nodes[nd.parent].kind == "square"
            assert nd.level == f.nodes[nd.parent].level + 1
    assert sum(len(v) for v in level_slices(f).values()) == len(f.nodes)
    assert '"' in f.to_dot() and f.to_json()["nodes"]


def test_square_outer_face_gives_one_tree():
    e = planar_embed(families.glued_cubes())
    for face in e.faces:
        if face.is_square:
            f = nesting_forest(e.host, reroot_outer(e, face.id))
            assert f.is_tree()


def test_square_order_is_antisymmetric():
    g = families.cube()
    e = planar_embed(g)
    order = square_order(g, e)
    outer = e.outer.square()
    for s in order.squares:
        assert order.contains_square(outer, s)


def test_straddling_squares_raise():
    k24 = families.complete_bipartite(2, 4)
    e = planar_embed(k24)
    with pytest.raises(StraddleError):
        nesting_forest(k24, e, method="sweep")
    with pytest.raises(StraddleError):
        nesting_forest(k24, e, method="order")
