"""Small-graph isomorphism and subgraph matching by refinement plus backtracking."""

from __future__ import annotations

from collections import Counter

from .graph import Graph

SOFT_LIMIT = 32


def refine_colours(g: Graph, rounds: int | None = None) -> dict[int, tuple]:
    """Colour refinement with canonical (graph-independent) colour names.

    Colours are nested tuples built from degrees and neighbour colour
    multisets, hashed down to ints each round so they stay comparable
    across different graphs.
    """
    colour = {v: g.degree(v) for v in g}
    limit = g.n if rounds is None else rounds
    for _ in range(limit):
        sig = {v: (colour[v], tuple(sorted(colour[w] for w in g.neighbors(v)))) for v in g}
        names = {s: hash(s) for s in set(sig.values())}
        new = {v: names[sig[v]] for v in g}
        stable = len(set(new.values())) == len(set(colour.values()))
        colour = new
        if stable:
            break
    return colour


def invariant(g: Graph) -> tuple:
    """Isomorphism-invariant fingerprint (equal for isomorphic graphs)."""
    col = refine_colours(g)
    return g.n, g.m, tuple(sorted(Counter(col.values()).items()))


def are_isomorphic(g: Graph, h: Graph) -> dict[int, int] | None:
    """A bijection V(g) -> V(h) preserving adjacency, or None."""
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(g.degree(v) for v in g) != sorted(h.degree(v) for v in h):
        return None
    cg = refine_colours(g)
    ch = refine_colours(h)
    if Counter(cg.values()) != Counter(ch.values()):
        return None
    by_colour: dict = {}
    for v in h:
        by_colour.setdefault(ch[v], []).append(v)
    order = _search_order(g, cg)
    return _extend(g, h, order, lambda v: by_colour[cg[v]], induced=True)


def find_subgraph(pattern: Graph, host: Graph) -> dict[int, int] | None:
    """Injective map pattern -> host sending edges to edges (not necessarily induced)."""
    if pattern.n > host.n or pattern.m > host.m:
        return None
    order = _search_order(pattern, {v: 0 for v in pattern})
    cands = list(host)

    def candidates(v: int):
        dv = pattern.degree(v)
        return [x for x in cands if host.degree(x) >= dv]

    return _extend(pattern, host, order, candidates, induced=False)


def _search_order(g: Graph, colour: dict[int, object]) -> list[int]:
    # BFS-ish order: rarest colour first, then always pick a vertex with most mapped neighbours
    counts = Counter(colour.values())
    remaining = set(g)
    order: list[int] = []
    placed: set[int] = set()
    while remaining:
        best = max(
            remaining,
            key=lambda v: (
                sum(1 for w in g.neighbors(v) if w in placed),
                -counts[colour[v]],
                g.degree(v),
                -v,
            ),
        )
        order.append(best)
        placed.add(best)
        remaining.discard(best)
    return order


def _extend(g: Graph, h: Graph, order: list[int], candidates, induced: bool) -> dict[int, int] | None:
    mapping: dict[int, int] = {}
    used: set[int] = set()
    prior = {v: [w for w in g.neighbors(v) if order.index(w) < order.index(v)] for v in g}
    earlier = {v: order[: order.index(v)] for v in g} if induced else {}

    def ok(v: int, x: int) -> bool:
        for w in prior[v]:
            if not h.has_edge(mapping[w], x):
                return False
        if induced:
            nv = g.neighbor_set(v)
            for w in earlier[v]:
                if w not in nv and h.has_edge(mapping[w], x):
                    return False
        return True

    def rec(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        if prior[v]:
            anchor = mapping[prior[v][0]]
            pool = [x for x in h.neighbors(anchor) if x in _pool_set(v)]
        else:
            pool = _pool(v)
        for x in pool:
            if x in used or not ok(v, x):
                continue
            mapping[v] = x
            used.add(x)
            if rec(pos + 1):
                return True
            del mapping[v]
            used.discard(x)
        return False

    pools: dict[int, list[int]] = {}
    pool_sets: dict[int, frozenset[int]] = {}

    def _pool(v: int) -> list[int]:
        if v not in pools:
            pools[v] = list(candidates(v))
        return pools[v]

    def _pool_set(v: int) -> frozenset[int]:
        if v not in pool_sets:
            pool_sets[v] = frozenset(_pool(v))
        return pool_sets[v]

    return dict(mapping) if rec(0) else None
