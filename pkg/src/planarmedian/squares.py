"""Squares (4-cycles), cube/book/cogwheel detection and square-graph recognition."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from . import families
from .graph import Graph, is_bipartite
from .isomorphism import are_isomorphic, find_subgraph

MEDIAN_ORACLE_LIMIT = 300


def _dihedral(q: tuple[int, int, int, int]):
    for r in range(4):
        rot = q[r:] + q[:r]
        yield rot
        yield (rot[0], rot[3], rot[2], rot[1])


@dataclass(frozen=True, eq=False)
class Square:
    """A 4-cycle a-b-c-d-a. Equality and hashing use the canonical key."""

    vertices: tuple[int, int, int, int]
    key: tuple[int, int, int, int] = field(init=False, repr=False)

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) != 4 or len(set(vs)) != 4:
            raise ValueError(f"a square needs 4 distinct vertices, got {vs}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "key", min(_dihedral(vs)))

    @classmethod
    def of(cls, *vs: int) -> Square:
        return cls(tuple(vs))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Square) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: Square) -> bool:
        return self.key < other.key

    def __iter__(self):
        return iter(self.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(min(vs[i], vs[(i + 1) % 4]), max(vs[i], vs[(i + 1) % 4])) for i in range(4)]

    def opposite(self, v: int) -> int:
        return self.vertices[(self.vertices.index(v) + 2) % 4]

    def neighbours_of(self, v: int) -> tuple[int, int]:
        i = self.vertices.index(v)
        return self.vertices[(i - 1) % 4], self.vertices[(i + 1) % 4]

    def in_graph(self, g: Graph) -> bool:
        return all(g.has_edge(u, v) for u, v in self.edges())

    def canonical(self) -> Square:
        return Square(self.key)

    def to_json(self) -> list[int]:
        return list(self.vertices)


# enumeration


class _K23Found(Exception):
    def __init__(self, a: int, b: int, mids):
        self.hit = (min(a, b), max(a, b), tuple(sorted(mids)[:3]))


def _four_cycles(g: Graph, stop_on_k23: bool) -> list[tuple[int, int, int, int]]:
    # degree-ordered listing: each 4-cycle is found from its highest-ranked vertex
    order = sorted(g, key=lambda v: (-g.degree(v), v))
    rank = {v: i for i, v in enumerate(order)}
    out = []
    for u in order:
        ru = rank[u]
        mids: dict[int, list[int]] = defaultdict(list)
        for v in g.neighbors(u):
            if rank[v] <= ru:
                continue
            for w in g.neighbors(v):
                if rank[w] > ru:
                    mids[w].append(v)
        for w, ms in mids.items():
            if len(ms) >= 3 and stop_on_k23:
                raise _K23Found(u, w, ms)
            for v1, v2 in combinations(ms, 2):
                out.append((u, v1, w, v2))
    if stop_on_k23:
        diag: dict[tuple[int, int], set[int]] = defaultdict(set)
        for a, b, c, d in out:
            for p, q, x, y in ((a, c, b, d), (b, d, a, c)):
                s = diag[(min(p, q), max(p, q))]
                s.update((x, y))
                if len(s) >= 3:
                    raise _K23Found(p, q, s)
    return out


def enumerate_squares(g: Graph) -> list[Square]:
    """Every 4-cycle of g exactly once, sorted by canonical key."""
    return sorted(Square(q) for q in _four_cycles(g, False))


def squares_if_k23_free(g: Graph) -> tuple[list[Square] | None, tuple | None]:
    """(squares, None) for K_{2,3}-free graphs, else (None, (a, b, mids)).

    Stops as soon as two vertices with three common neighbours show up, so
    the square list stays linear for planar inputs.
    """
    try:
        return sorted(Square(q) for q in _four_cycles(g, True)), None
    except _K23Found as hit:
        return None, hit.hit


def find_k23(g: Graph) -> tuple[int, int, tuple[int, ...]] | None:
    return squares_if_k23_free(g)[1]


def squares_by_edge(squares) -> dict[tuple[int, int], list[Square]]:
    out: dict[tuple[int, int], list[Square]] = defaultdict(list)
    for s in squares:
        for e in s.edges():
            out[e].append(s)
    return out


# forbidden subgraphs


class ForbiddenKind(str, Enum):
    CUBE = "cube"
    BOOK = "book"
    SUSPENDED_COGWHEEL = "suspended_cogwheel"


@dataclass(frozen=True)
class ForbiddenWitness:
    """A forbidden subgraph occurrence.

    Cube: vertices[i] is the image of cube vertex i (bit patterns).
    Book: extra["hub"] is the shared edge, extra["pages"] the corner pairs.
    Cogwheel: extra holds hub, pendant and the rim v1 u1 v2 u2 ... sequence.
    """

    kind: ForbiddenKind
    vertices: tuple[int, ...]
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "vertices": list(self.vertices), "extra": self.extra}

    def verify(self, g: Graph) -> bool:
        vs = self.vertices
        if len(set(vs)) != len(vs) or not all(v in g for v in vs):
            return False
        if self.kind is ForbiddenKind.CUBE:
            return len(vs) == 8 and all(
                g.has_edge(vs[i], vs[i ^ (1 << b)]) for i in range(8) for b in range(3)
            )
        if self.kind is ForbiddenKind.BOOK:
            a, b = self.extra["hub"]
            pages = self.extra["pages"]
            if len(pages) != 3 or not g.has_edge(a, b):
                return False
            return all(g.has_edge(a, x) and g.has_edge(b, y) and g.has_edge(x, y) for x, y in pages)
        hub, pendant, rim = self.extra["hub"], self.extra["pendant"], self.extra["rim"]
        k = len(rim) // 2
        if len(rim) % 2 or k < 4 or not g.has_edge(hub, pendant):
            return False
        for i in range(k):
            v, u, v_next = rim[2 * i], rim[2 * i + 1], rim[(2 * i + 2) % len(rim)]
            if not (g.has_edge(hub, v) and g.has_edge(u, v) and g.has_edge(u, v_next)):
                return False
        return True


def is_cube(g: Graph) -> bool:
    if g.n != 8 or g.m != 12 or any(g.degree(v) != 3 for v in g):
        return False
    return is_bipartite(g) and are_isomorphic(g, families.cube()) is not None


def find_cube_subgraph(g: Graph) -> ForbiddenWitness | None:
    if sum(1 for v in g if g.degree(v) >= 3) < 8:
        return None
    hit = find_subgraph(families.cube(), g)
    if hit is None:
        return None
    return ForbiddenWitness(ForbiddenKind.CUBE, tuple(hit[i] for i in range(8)))


def find_cube_from_squares(g: Graph, squares: list[Square]) -> ForbiddenWitness | None:
    """Cube search driven by the square list; linear when squares per vertex are bounded.

    A cube through v with neighbours a, b, c needs squares on the three
    pairs, with far corners x_ab, x_bc, x_ac sharing a neighbour other than v.
    """
    at: dict[int, dict[tuple[int, int], list[int]]] = defaultdict(lambda: defaultdict(list))
    for s in squares:
        for v in s.vertices:
            a, b = s.neighbours_of(v)
            at[v][(min(a, b), max(a, b))].append(s.opposite(v))
    for v in sorted(at):
        pairs = at[v]
        nbrs = sorted({x for p in pairs for x in p})
        for a, b, c in combinations(nbrs, 3):
            ab, bc, ac = pairs.get((a, b)), pairs.get((b, c)), pairs.get((a, c))
            if not (ab and bc and ac):
                continue
            for x in ab:
                for y in bc:
                    for z in ac:
                        common = g.neighbor_set(x) & g.neighbor_set(y) & g.neighbor_set(z)
                        common -= {v}
                        if common and len({x, y, z}) == 3:
                            t = min(common)
                            return ForbiddenWitness(ForbiddenKind.CUBE, (v, a, b, x, c, z, y, t))
    return None


def find_book(g: Graph, squares: list[Square] | None = None) -> ForbiddenWitness | None:
    """Three squares on one edge with six distinct corners."""
    squares = enumerate_squares(g) if squares is None else squares
    for (a, b), sq in sorted(squares_by_edge(squares).items()):
        if len(sq) < 3:
            continue
        pages = []
        for s in sq:
            x = s.neighbours_of(a)
            x = x[0] if x[1] == b else x[1]
            pages.append((x, s.opposite(a)))
        for trio in combinations(pages, 3):
            corners = [v for p in trio for v in p]
            if len(set(corners)) == 6:
                return ForbiddenWitness(
                    ForbiddenKind.BOOK,
                    (a, b, *corners),
                    {"hub": [a, b], "pages": [list(p) for p in trio]},
                )
    return None


def find_suspended_cogwheel(g: Graph) -> ForbiddenWitness | None:
    """Hub c (degree >= 5), pendant x in N(c), rim v1 u1 ... vk uk with k >= 4.

    Spokes v_i come from N(c) minus x; connectors u_i lie outside
    N(c) + {c, x} and join consecutive spokes. Rim search is a DFS over the
    spoke/connector incidence with used-sets, so the rim length is bounded
    by |V| and nothing is pruned heuristically.
    """
    for c in g:
        if g.degree(c) < 5:
            continue
        nc = g.neighbor_set(c)
        for x in g.neighbors(c):
            spokes = [v for v in g.neighbors(c) if v != x]
            links: dict[int, list[tuple[int, int]]] = defaultdict(list)
            via: dict[int, list[int]] = defaultdict(list)
            for v in spokes:
                for u in g.neighbors(v):
                    if u != c and u != x and u not in nc:
                        via[u].append(v)
            for u, vs in via.items():
                for v1, v2 in combinations(vs, 2):
                    links[v1].append((u, v2))
                    links[v2].append((u, v1))
            rim = _rim_cycle(spokes, links)
            if rim is not None:
                return ForbiddenWitness(
                    ForbiddenKind.SUSPENDED_COGWHEEL,
                    (c, x, *rim),
                    {"hub": c, "pendant": x, "rim": rim},
                )
    return None


def _rim_cycle(spokes: list[int], links: dict[int, list[tuple[int, int]]]) -> list[int] | None:
    for start in spokes:
        if len(links[start]) < 2:
            continue
        seq = [start]
        used = {start}

        def dfs(v: int) -> bool:
            for u, w in sorted(links[v]):
                if u in used:
                    continue
                if w == start and len(seq) >= 7:
                    seq.append(u)
                    return True
                if w in used or w < start:
                    continue
                seq.extend((u, w))
                used.update((u, w))
                if dfs(w):
                    return True
                del seq[-2:]
                used.difference_update((u, w))
            return False

        if dfs(start):
            return seq
    return None


# recognition


class BasicKind(str, Enum):
    CUBE = "cube"
    CYCLIC_SQUARE_GRAPH = "square_graph"
    NO = "no"


def median_verdict(g: Graph):
    """Median test used by the recognizers: brute force when small, structural otherwise."""
    from .metric import is_median_oracle

    if g.n <= MEDIAN_ORACLE_LIMIT:
        return is_median_oracle(g)
    from .decompose import recognize

    return recognize(g).verdict


def is_square_graph(g: Graph) -> tuple[bool, object | None]:
    """(True, None) or (False, witness).

    The witness is the median failure witness or a ForbiddenWitness. Large
    non-planar inputs are rejected with witness None.
    """
    from .embedding import NotPlanar

    try:
        verdict = median_verdict(g)
    except NotPlanar:
        return False, None
    if not verdict.is_median:
        return False, verdict.witness
    squares = enumerate_squares(g)
    for finder in (
        lambda: find_cube_subgraph(g),
        lambda: find_book(g, squares),
        lambda: find_suspended_cogwheel(g),
    ):
        hit = finder()
        if hit is not None:
            return False, hit
    return True, None


def is_basic_qs(g: Graph) -> BasicKind:
    if is_cube(g):
        return BasicKind.CUBE
    ok, _ = is_square_graph(g)
    if ok and enumerate_squares(g):
        return BasicKind.CYCLIC_SQUARE_GRAPH
    return BasicKind.NO
