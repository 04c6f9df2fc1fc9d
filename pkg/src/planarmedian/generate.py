"""Random QS-graphs with ground-truth factorizations and plane embeddings."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import families
from .decompose import Factor, Factorization, GlueMap
from .embedding import Embedding, planar_embed
from .graph import Graph, from_edge_list
from .squares import Square, is_square_graph


@dataclass(frozen=True)
class Piece:
    """A basic QS-graph with a rotation system; labels 0..n-1."""

    graph: Graph
    rotation: dict[int, list[int]]
    kind: str

    def embedding(self) -> Embedding:
        return Embedding(self.graph, self.rotation)


# piece construction

_DIRS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _has_hole_or_pinch(cells: set[tuple[int, int]]) -> bool:
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    for x in range(x0, x1):
        for y in range(y0, y1):
            a, b = (x, y) in cells, (x + 1, y + 1) in cells
            c, d = (x + 1, y) in cells, (x, y + 1) in cells
            if (a and b and not c and not d) or (c and d and not a and not b):
                return True
    seen = {(x0, y0)}
    stack = [(x0, y0)]
    while stack:
        x, y = stack.pop()
        for dx, dy in _DIRS:
            p = (x + dx, y + dy)
            if x0 <= p[0] <= x1 and y0 <= p[1] <= y1 and p not in cells and p not in seen:
                seen.add(p)
                stack.append(p)
    empty = (x1 - x0 + 1) * (y1 - y0 + 1) - len(cells)
    return len(seen) != empty


def random_polyomino(rng: random.Random, size: int) -> set[tuple[int, int]]:
    """Hole-free polyomino with no corner-only contacts, grown cell by cell."""
    cells = {(0, 0)}
    while len(cells) < size:
        frontier = sorted(
            {(x + dx, y + dy) for x, y in cells for dx, dy in _DIRS} - cells
        )
        rng.shuffle(frontier)
        for c in frontier:
            if not _has_hole_or_pinch(cells | {c}):
                cells.add(c)
                break
        else:
            break
    return cells


def polyomino_piece(cells: set[tuple[int, int]]) -> Piece:
    pts = sorted({(x + dx, y + dy) for x, y in cells for dx in (0, 1) for dy in (0, 1)})
    idx = {p: i for i, p in enumerate(pts)}
    edges = set()
    for x, y in cells:
        corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        for i in range(4):
            a, b = idx[corners[i]], idx[corners[(i + 1) % 4]]
            edges.add((min(a, b), max(a, b)))
    g = from_edge_list(sorted(edges))
    rotation = {}
    for p, i in idx.items():
        nb = [(p[0] + dx, p[1] + dy) for dx, dy in _DIRS]
        rotation[i] = [idx[q] for q in nb if q in idx and g.has_edge(i, idx[q])]
    return Piece(g, rotation, "square_graph")


def add_pendant_trees(piece: Piece, rng: random.Random, count: int) -> Piece:
    """Attach count new leaves inside the outer face, each to an outer vertex or earlier leaf."""
    rot = {v: list(nb) for v, nb in piece.rotation.items()}
    g = piece.graph
    e = piece.embedding()
    for _ in range(count):
        walk = e.outer.walk
        i = rng.randrange(len(walk))
        u, v = walk[i - 1][0], walk[i][0]
        # corner at v on the outer face sits between walk[i][1] (before) and u
        w = walk[i][1]
        leaf = g.n
        order = rot[v]
        j = order.index(w) if len(order) > 1 else 0
        order.insert(j + 1, leaf)
        rot[leaf] = [v]
        g = from_edge_list(g.edges() + [(v, leaf)])
        e = Embedding(g, rot, outer_face=None)
        e = _outer_by_walk_edge(e, (v, leaf))
    return Piece(g, rot, piece.kind)


def _outer_by_walk_edge(e: Embedding, h: tuple[int, int]) -> Embedding:
    from .embedding import reroot_outer

    return reroot_outer(e, e.face_of[h])


def cube_piece() -> Piece:
    e = planar_embed(families.cube())
    return Piece(e.host, {v: list(nb) for v, nb in e.rotation.items()}, "cube")


def cogwheel_piece(rim: int) -> Piece:
    e = planar_embed(families.cogwheel(rim))
    return Piece(e.host, {v: list(nb) for v, nb in e.rotation.items()}, "square_graph")


@dataclass
class PieceFactory:
    rng: random.Random
    cube_prob: float = 0.3
    cogwheel_prob: float = 0.1
    cells: tuple[int, int] = (2, 7)
    pendant_prob: float = 0.25
    max_pendants: int = 3
    verify: bool = True
    _checked: dict = field(default_factory=dict)

    def make(self) -> Piece:
        r = self.rng.random()
        if r < self.cube_prob:
            return cube_piece()
        if r < self.cube_prob + self.cogwheel_prob:
            piece = cogwheel_piece(2 * self.rng.randint(4, 6))
        else:
            piece = polyomino_piece(random_polyomino(self.rng, self.rng.randint(*self.cells)))
        if self.rng.random() < self.pendant_prob:
            piece = add_pendant_trees(piece, self.rng, self.rng.randint(1, self.max_pendants))
        if self.verify:
            ok = self._checked.get(piece.graph)
            if ok is None:
                ok = self._checked[piece.graph] = is_square_graph(piece.graph)[0]
            if not ok:
                raise AssertionError("generated piece is not a square-graph")
        return piece


# assembly


@dataclass(frozen=True)
class QSInstance:
    graph: Graph
    factorization: Factorization
    embedding: Embedding
    kinds: tuple[str, ...]
    maps: tuple[GlueMap, ...] = ()


def _square_faces(e: Embedding, skip: int | None) -> list[tuple[int, ...]]:
    return [tuple(a for a, _ in f.walk) for f in e.faces if f.length == 4 and f.id != skip]


class _Builder:
    def __init__(self, first: Piece, rng: random.Random):
        self.rng = rng
        e = first.embedding()
        if first.kind == "cube":
            # every face is a square: make one of them the outer face
            from .embedding import reroot_outer

            e = reroot_outer(e, 0)
        self.rot = {v: list(nb) for v, nb in first.rotation.items()}
        self.edges = list(first.graph.edges())
        self.n = first.graph.n
        self.outer_edge = e.outer.walk[0]
        self.sites = _square_faces(e, e.outer_face)
        self.factors = [Factor(first.graph, first.kind)]
        self.maps: list[GlueMap] = []

    def glue(self, piece: Piece) -> None:
        rng = self.rng
        k = rng.randrange(len(self.sites))
        self.sites[k], self.sites[-1] = self.sites[-1], self.sites[k]
        c = self.sites.pop()
        eh = piece.embedding()
        hsq = [f for f in eh.faces if f.length == 4]
        face = hsq[rng.randrange(len(hsq))]
        cp = tuple(a for a, _ in face.walk)
        # walks are traversed in opposite directions across the glued square
        s = rng.randrange(4)
        phi = {cp[i]: c[(s - i) % 4] for i in range(4)}
        for v in piece.graph:
            if v not in phi:
                phi[v] = self.n
                self.n += 1
        for i in range(4):
            x, xp = c[(s - i) % 4], cp[i]
            u, w = c[(s - i - 1) % 4], c[(s - i + 1) % 4]
            order = self.rot[x]
            j = order.index(u)
            order = order[j:] + order[:j]
            if order[-1] != w:
                raise AssertionError("glue site is not a face corner")
            hr = piece.rotation[xp]
            j = hr.index(cp[(i - 1) % 4])
            hr = hr[j:] + hr[:j]
            self.rot[x] = order + [phi[y] for y in hr[1:-1]]
        for v in piece.graph:
            if v not in cp:
                self.rot[phi[v]] = [phi[y] for y in piece.rotation[v]]
        cset = set(cp)
        self.edges.extend((phi[a], phi[b]) for a, b in piece.graph.edges() if not (a in cset and b in cset))
        for f in eh.faces:
            if f.length == 4 and f.id != face.id:
                self.sites.append(tuple(phi[a] for a, _ in f.walk))
        hg = from_edge_list([(phi[a], phi[b]) for a, b in piece.graph.edges()])
        target = Square(c)
        self.factors.append(Factor(hg, piece.kind, target))
        self.maps.append(GlueMap(Square(cp), target, s, True))

    def finish(self) -> QSInstance:
        g = from_edge_list(self.edges)
        e = Embedding(g, self.rot)
        from .embedding import reroot_outer

        e = reroot_outer(e, e.face_of[self.outer_edge])
        kinds = tuple(f.kind for f in self.factors)
        return QSInstance(g, Factorization(g, tuple(self.factors)), e, kinds, tuple(self.maps))


def generate_qs(
    seed: int,
    k: int,
    *,
    cube_prob: float = 0.3,
    cogwheel_prob: float = 0.1,
    cells: tuple[int, int] = (2, 7),
    pendant_prob: float = 0.25,
    max_n: int | None = None,
    verify_pieces: bool = True,
) -> QSInstance:
    """QS-graph glued from k basic pieces, deterministic in seed.

    Each step glues a fresh piece into a bounded square face of the current
    plane graph, splicing the piece's rotation system into the face corners.
    Stops early once max_n vertices are reached.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = random.Random(seed)
    factory = PieceFactory(rng, cube_prob, cogwheel_prob, cells, pendant_prob, verify=verify_pieces)
    b = _Builder(factory.make(), rng)
    for _ in range(k - 1):
        if max_n is not None and b.n >= max_n:
            break
        b.glue(factory.make())
    return b.finish()


def generate_to_size(seed: int, n: int, **kw) -> QSInstance:
    """Keep gluing pieces until the graph has at least n vertices."""
    return generate_qs(seed, 10**9, max_n=n, **kw)
