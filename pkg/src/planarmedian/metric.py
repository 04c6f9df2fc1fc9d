"""Median tests: brute-force oracle, isometric cycles, inferring predicates, convex hulls."""

from __future__ import annotations

import math
import warnings
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np

from . import _accel
from .graph import (
    DistanceOracle,
    Graph,
    GraphError,
    components,
    distances,
    induced_subgraph,
    interval,
    is_connected,
    shortest_odd_cycle,
)

ORACLE_SOFT_LIMIT = 300


class Violation(str, Enum):
    DISCONNECTED = "disconnected"
    HAS_K23 = "k23"
    BAD_ISOMETRIC_CYCLE = "iso_cycle"
    NOT_C6_Q3_INFERRING = "c6_no_cube"
    TRIPLE = "triple"


@dataclass(frozen=True)
class Witness:
    kind: Violation
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()
    detail: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            **({"detail": self.detail} if self.detail else {}),
        }

    def verify(self, g: Graph, d: DistanceOracle | None = None) -> bool:
        """Re-check the witness against the definitions it claims to violate."""
        vs = self.vertices
        if self.kind is Violation.DISCONNECTED:
            if g.n == 0:
                return True
            comp = next(c for c in components(g) if vs[0] in c)
            return vs[1] not in comp
        if self.kind is Violation.HAS_K23:
            a, b, *mid = vs
            return len(set(vs)) == 5 and all(g.has_edge(a, x) and g.has_edge(b, x) for x in mid)
        d = d or distances(g)
        if self.kind is Violation.TRIPLE:
            return len(median_of_triple(g, d, *vs)) != 1
        cyc = IsoCycle(vs)
        if not cyc.is_isometric(g, d):
            return False
        if self.kind is Violation.BAD_ISOMETRIC_CYCLE:
            return cyc.length not in (4, 6)
        return cyc.length == 6 and _c6_completion(g, vs) is None


@dataclass(frozen=True)
class MedianVerdict:
    is_median: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.is_median

    @property
    def reason(self) -> Violation | None:
        return self.witness.kind if self.witness else None

    def to_json(self) -> dict:
        return {
            "median": self.is_median,
            "witness": self.witness.to_json() if self.witness else None,
        }


@dataclass(frozen=True)
class IsoCycle:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:] + vs[:1])]

    def is_isometric(self, g: Graph, d: DistanceOracle) -> bool:
        vs = self.vertices
        n = len(vs)
        if n < 3 or len(set(vs)) != n:
            return False
        if not all(g.has_edge(a, b) for a, b in zip(vs, vs[1:] + vs[:1])):
            return False
        for i in range(n):
            for j in range(i + 1, n):
                if d(vs[i], vs[j]) != min(j - i, n - j + i):
                    return False
        return True


def _cycle_witness(kind: Violation, cyc: Iterable[int]) -> Witness:
    c = IsoCycle(tuple(cyc))
    return Witness(kind, c.vertices, tuple(c.edges()), {"length": c.length})


# brute-force oracle


def median_of_triple(g: Graph, d: DistanceOracle, u: int, v: int, w: int) -> frozenset[int]:
    return interval(g, d, u, v) & interval(g, d, v, w) & interval(g, d, u, w)


def is_median_oracle(g: Graph, d: DistanceOracle | None = None, impl=None) -> MedianVerdict:
    """Median test straight from the definition: every triple has one median.

    Runs in O(n^3) after the distance table; sizes above ORACLE_SOFT_LIMIT
    trigger a warning but still run.
    """
    if g.n > ORACLE_SOFT_LIMIT:
        warnings.warn(f"median oracle on {g.n} vertices is cubic", RuntimeWarning, stacklevel=2)
    if g.n == 0:
        return MedianVerdict(False, Witness(Violation.DISCONNECTED, ()))
    d = d or distances(g)
    table = d.table
    if table is None:
        raise GraphError("median oracle needs a materialized distance table")
    if (table < 0).any():
        i, j = map(int, np.argwhere(table < 0)[0])
        return MedianVerdict(False, Witness(Violation.DISCONNECTED, (d.labels[i], d.labels[j])))
    hit = _accel.first_bad_triple(table, impl)
    if hit is None:
        return MedianVerdict(True)
    i, j, k, size = hit
    return MedianVerdict(
        False,
        Witness(Violation.TRIPLE, (d.labels[i], d.labels[j], d.labels[k]), (), {"medians": size}),
    )


# isometric cycles


class _Space:
    """Index-space view of a graph and its distance table for the cycle searches."""

    def __init__(self, g: Graph, d: DistanceOracle):
        self.labels = d.labels
        self.D = d.rows
        idx = d.index
        self.adj = [[idx[w] for w in g.neighbors(v)] for v in d.labels]
        self.n = len(self.labels)


def _even_search(sp: _Space, u: int, w: int, k: int, find_all: bool) -> list[list[int]]:
    """Isometric 2k-cycles with minimum vertex u and antipode w (index space)."""
    D, adj = sp.D, sp.adj
    Du, Dw = D[u], D[w]
    dead: set[tuple[int, int]] = set()
    found: list[list[int]] = []
    ta = [u] + [0] * k
    tb = [w] + [0] * k

    def rec(i: int) -> bool:
        a, b = ta[i], tb[i]
        if i == k:
            # reachability is prefix independent; the direction filter is not
            if not find_all or ta[1] < tb[k - 1]:
                found.append(ta[: k + 1] + tb[1:k])
            return True
        if (a, b) in dead:
            return False
        ok = False
        j = i + 1
        last = j == k
        for a2 in adj[a]:
            if Du[a2] != j or Dw[a2] != k - j or a2 < u:
                continue
            Da2 = D[a2]
            for b2 in adj[b]:
                if Dw[b2] != j or Du[b2] != k - j:
                    continue
                if b2 < u or (b2 == u and not last):
                    continue
                if Da2[b2] != k:
                    continue
                ta[j], tb[j] = a2, b2
                if rec(j):
                    ok = True
                    if not find_all:
                        return True
        if not ok:
            dead.add((a, b))
        return ok

    rec(0)
    return found


def _odd_search(sp: _Space, u: int, v: int, k: int, find_all: bool) -> list[list[int]]:
    """Isometric (2k+1)-cycles through u (minimum) whose far edge ends at v."""
    D, adj = sp.D, sp.adj
    Du, Dv = D[u], D[v]
    dead: set[tuple[int, int]] = set()
    found: list[list[int]] = []
    ta = [u] + [0] * k
    tb = [v] + [0] * k

    def rec(i: int) -> bool:
        a, b = ta[i], tb[i]
        if i == k:
            if not find_all or ta[1] < tb[k - 1]:
                found.append(ta[: k + 1] + tb[:k])
            return True
        if (a, b) in dead:
            return False
        ok = False
        j = i + 1
        last = j == k
        for a2 in adj[a]:
            if Du[a2] != j or Dv[a2] != k + 1 - j or a2 < u:
                continue
            Da2 = D[a2]
            if Da2[b] != k:
                continue
            for b2 in adj[b]:
                if Dv[b2] != j or Du[b2] != k - j:
                    continue
                if b2 < u or (b2 == u and not last):
                    continue
                if Da2[b2] != k:
                    continue
                ta[j], tb[j] = a2, b2
                if rec(j):
                    ok = True
                    if not find_all:
                        return True
        if not ok:
            dead.add((a, b))
        return ok

    rec(0)
    return found


def _iter_cycles(sp: _Space, lengths=None, find_all: bool = True):
    D = sp.D
    for u in range(sp.n):
        Du = D[u]
        for x in range(u + 1, sp.n):
            k = Du[x]
            if k < 1:
                continue
            if k >= 2 and (lengths is None or 2 * k in lengths):
                for cyc in _even_search(sp, u, x, k, find_all):
                    yield cyc
            if lengths is None or 2 * k + 1 in lengths:
                for cyc in _odd_search(sp, u, x, k, find_all):
                    yield cyc


def isometric_cycles(g: Graph, d: DistanceOracle | None = None, lengths: Iterable[int] | None = None) -> list[IsoCycle]:
    """All isometric cycles, each once, sorted by (length, vertex sequence).

    A cycle of length L is isometric iff every vertex is at distance
    floor(L/2) from its antipode(s); the search walks the two halves of the
    cycle in lock-step from the smallest vertex, keeping opposite vertices at
    that distance.
    """
    d = d or distances(g)
    sp = _Space(g, d)
    wanted = None if lengths is None else frozenset(lengths)
    out = []
    for cyc in _iter_cycles(sp, wanted):
        c = IsoCycle(tuple(sp.labels[i] for i in cyc))
        if not c.is_isometric(g, d):
            raise AssertionError(f"non-isometric cycle produced: {c.vertices}")
        out.append(c)
    out.sort(key=lambda c: (c.length, c.vertices))
    return out


def find_isometric_cycle(g: Graph, d: DistanceOracle, lengths: Iterable[int]) -> IsoCycle | None:
    """First isometric cycle whose length is in lengths, or None."""
    sp = _Space(g, d)
    wanted = frozenset(lengths)
    for cyc in _iter_cycles(sp, wanted, find_all=False):
        return IsoCycle(tuple(sp.labels[i] for i in cyc))
    return None


def _bad_cycle_witness(g: Graph, d: DistanceOracle, allowed: tuple[int, ...]) -> Witness | None:
    odd = shortest_odd_cycle(g)
    if odd is not None:
        return _cycle_witness(Violation.BAD_ISOMETRIC_CYCLE, odd)
    diam = d.diameter()
    bad = [2 * k for k in range(2, int(diam) + 1) if 2 * k not in allowed]
    if not bad:
        return None
    cyc = find_isometric_cycle(g, d, bad)
    return _cycle_witness(Violation.BAD_ISOMETRIC_CYCLE, cyc.vertices) if cyc else None


# inferring predicates


def _c6_completion(g: Graph, cyc: tuple[int, ...]) -> tuple[int, int] | None:
    on = set(cyc)
    odd = set(g.neighbor_set(cyc[0])) & g.neighbor_set(cyc[2]) & g.neighbor_set(cyc[4])
    even = set(g.neighbor_set(cyc[1])) & g.neighbor_set(cyc[3]) & g.neighbor_set(cyc[5])
    for a in sorted(odd - on):
        for b in sorted(even - on):
            if a != b:
                return a, b
    return None


def is_c6_q3_inferring(g: Graph, d: DistanceOracle | None = None) -> tuple[bool, IsoCycle | None]:
    """Every isometric 6-cycle lies in a cube subgraph.

    The two extra cube vertices are the common neighbours of the alternate
    cycle vertices; they are antipodal in the cube, so no edge between them
    is required.
    """
    d = d or distances(g)
    for c in isometric_cycles(g, d, lengths=(6,)):
        if _c6_completion(g, c.vertices) is None:
            return False, c
    return True, None


def q3minus_subgraphs(g: Graph):
    """Yield (c, (x, y, z), (xy, yz, zx)) for every Q3-minus-a-vertex subgraph.

    c is the degree-3 centre, x, y, z its neighbours and xy the common
    neighbour of x and y other than c, etc. The missing eighth vertex would
    be adjacent to xy, yz and zx.
    """
    for c in g:
        nbrs = g.neighbors(c)
        if len(nbrs) < 3:
            continue
        for x, y, z in combinations(nbrs, 3):
            for xy in sorted(g.neighbor_set(x) & g.neighbor_set(y) - {c}):
                if xy in (x, y, z):
                    continue
                for yz in sorted(g.neighbor_set(y) & g.neighbor_set(z) - {c, xy}):
                    if yz in (x, y, z):
                        continue
                    for zx in sorted(g.neighbor_set(z) & g.neighbor_set(x) - {c, xy, yz}):
                        if zx in (x, y, z):
                            continue
                        yield c, (x, y, z), (xy, yz, zx)


def is_q3minus_q3_inferring(g: Graph) -> tuple[bool, tuple[int, ...] | None]:
    for c, (x, y, z), (xy, yz, zx) in q3minus_subgraphs(g):
        seven = {c, x, y, z, xy, yz, zx}
        tops = g.neighbor_set(xy) & g.neighbor_set(yz) & g.neighbor_set(zx)
        if not tops - seven:
            return False, (c, x, y, z, xy, yz, zx)
    return True, None


def contains_k23(g: Graph) -> Graph | None:
    """A K_{2,3} subgraph (two vertices with three common neighbours), or None."""
    from .squares import find_k23

    hit = find_k23(g)
    if hit is None:
        return None
    a, b, mids = hit
    return Graph({a: mids, b: mids})


# characterization


def _characterize(g: Graph, d: DistanceOracle | None, allowed: tuple[int, ...]) -> MedianVerdict:
    from .squares import find_k23

    if g.n == 0:
        return MedianVerdict(False, Witness(Violation.DISCONNECTED, ()))
    if not is_connected(g):
        comps = components(g)
        return MedianVerdict(False, Witness(Violation.DISCONNECTED, (comps[0][0], comps[1][0])))
    hit = find_k23(g)
    if hit is not None:
        a, b, mids = hit
        verts = (a, b, *mids)
        edges = tuple(sorted((min(p, x), max(p, x)) for p in (a, b) for x in mids))
        return MedianVerdict(False, Witness(Violation.HAS_K23, verts, edges))
    d = d or distances(g)
    bad = _bad_cycle_witness(g, d, allowed)
    if bad is not None:
        return MedianVerdict(False, bad)
    if 6 in allowed:
        ok, cyc = is_c6_q3_inferring(g, d)
        if not ok:
            return MedianVerdict(False, _cycle_witness(Violation.NOT_C6_Q3_INFERRING, cyc.vertices))
    return MedianVerdict(True)


def is_median_planar(g: Graph, d: DistanceOracle | None = None) -> MedianVerdict:
    """Median test for planar graphs via the structural characterization.

    Conditions are checked in the order connectivity, K_{2,3}-freeness,
    isometric cycle lengths in {4, 6}, and cube completion of isometric
    6-cycles; the first failure becomes the witness. Raises NotPlanar.
    """
    from .embedding import require_planar

    require_planar(g)
    return _characterize(g, d, (4, 6))


def is_cube_free_median_planar(g: Graph, d: DistanceOracle | None = None) -> bool:
    from .embedding import require_planar

    require_planar(g)
    return _characterize(g, d, (4,)).is_median


def cube_free_verdict(g: Graph, d: DistanceOracle | None = None) -> MedianVerdict:
    from .embedding import require_planar

    require_planar(g)
    return _characterize(g, d, (4,))


# convexity


def _seed_vertices(seed) -> list[int]:
    if isinstance(seed, Graph):
        return list(seed.vertices)
    return sorted(set(seed))


def convex_hull(g: Graph, d: DistanceOracle | None, seed) -> Graph:
    """Least convex subgraph containing seed (a Graph or a vertex collection).

    Closure under intervals: each newly added vertex is paired with every
    member so far, which reaches the same fixed point as adding one
    violating geodesic per round.
    """
    d = d or distances(g)
    verts = _seed_vertices(seed)
    for v in verts:
        if v not in g:
            raise GraphError(f"unknown vertex {v}")
    members: list[int] = []
    inside: set[int] = set()
    queue = list(verts)
    while queue:
        x = queue.pop()
        if x in inside:
            continue
        for y in members:
            for z in interval(g, d, x, y):
                if z not in inside:
                    queue.append(z)
        members.append(x)
        inside.add(x)
    return induced_subgraph(g, inside)


def is_convex(g: Graph, d: DistanceOracle | None, h) -> bool:
    d = d or distances(g)
    hv = set(_seed_vertices(h))
    if not all(v in g for v in hv):
        return False
    if isinstance(h, Graph):
        if not all(g.has_edge(u, v) for u, v in h.edges()):
            return False
        for u in hv:
            for w in g.neighbors(u):
                if w in hv and not h.has_edge(u, w):
                    return False
    for u, v in combinations(sorted(hv), 2):
        if d(u, v) == math.inf or not interval(g, d, u, v) <= hv:
            return False
    return True


def face_square_count(e) -> int:
    """Number of faces bounded by a 4-cycle (the k-FS diagnostic)."""
    return sum(1 for f in e.faces if f.is_square)
