"""Combinatorial planar embeddings: rotation systems, faces, sides of squares."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import networkx as nx

from .graph import Graph, GraphError, from_edge_list, induced_subgraph
from .squares import Square


class NotPlanar(Exception):
    """Raised for non-planar input; certificate is a Kuratowski subgraph when known."""

    def __init__(self, certificate: Graph | None = None):
        super().__init__("graph is not planar")
        self.certificate = certificate


class EmbeddingError(ValueError):
    """Rotation system or face structure is inconsistent."""


@dataclass(frozen=True)
class Face:
    id: int
    walk: tuple[tuple[int, int], ...]
    is_outer: bool = False
    component: int = 0

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.walk)

    @property
    def length(self) -> int:
        return len(self.walk)

    @property
    def is_square(self) -> bool:
        return len(self.walk) == 4 and len(set(self.vertices)) == 4

    def square(self) -> Square:
        if not self.is_square:
            raise EmbeddingError(f"face {self.id} is not bounded by a square")
        return Square(self.vertices)

    def canonical_walk(self) -> tuple[int, ...]:
        vs = self.vertices
        if not vs:
            return ()
        lo = min(vs)
        return min(vs[i:] + vs[:i] for i, v in enumerate(vs) if v == lo)


class Side(str, Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class SideMap:
    square: Square
    vertex_side: dict[int, Side]
    face_side: dict[int, Side]

    def inside(self) -> frozenset[int]:
        return frozenset(v for v, s in self.vertex_side.items() if s is Side.INSIDE)

    def outside(self) -> frozenset[int]:
        return frozenset(v for v, s in self.vertex_side.items() if s is Side.OUTSIDE)


def _pick_outer(faces: list[list[tuple[int, int]]], ids: list[int]) -> int:
    # longest face; ties broken by the lexicographically smallest rotated walk
    best = max(len(faces[i]) for i in ids)
    cands = [i for i in ids if len(faces[i]) == best]
    if len(cands) == 1:
        return cands[0]
    return min(cands, key=lambda i: Face(i, tuple(faces[i])).canonical_walk())


class Embedding:
    """Rotation system of a planar graph plus a designated outer face.

    rotation[v] lists the neighbours of v in clockwise order. The face to
    the left of the half-edge u->v continues with v->w where w precedes u
    in the rotation at v.
    """

    def __init__(self, host: Graph, rotation: Mapping[int, Iterable[int]], outer_face: int | None = None):
        self.host = host
        rot = {}
        for v in host:
            order = tuple(rotation.get(v, ()))
            if sorted(order) != list(host.neighbors(v)):
                raise EmbeddingError(f"rotation at {v} does not match its neighbourhood")
            rot[v] = order
        self.rotation = rot
        self._pos = {v: {w: i for i, w in enumerate(nb)} for v, nb in rot.items()}
        walks, face_of = self._trace()
        self._walks = walks
        self.face_of = face_of
        self._components()
        if outer_face is None:
            outer_face = _pick_outer(walks, list(range(len(walks)))) if walks else 0
        elif not 0 <= outer_face < max(len(walks), 1):
            raise EmbeddingError(f"unknown face id {outer_face}")
        self.outer_face = outer_face
        self._check_euler()

    def _trace(self):
        walks: list[list[tuple[int, int]]] = []
        face_of: dict[tuple[int, int], int] = {}
        rot, pos = self.rotation, self._pos
        for u in self.host:
            for v in rot[u]:
                if (u, v) in face_of:
                    continue
                fid = len(walks)
                walk = []
                a, b = u, v
                while (a, b) not in face_of:
                    face_of[(a, b)] = fid
                    walk.append((a, b))
                    nb = rot[b]
                    a, b = b, nb[pos[b][a] - 1]
                if (a, b) != (u, v):
                    raise EmbeddingError("face walk did not close on its first half-edge")
                walks.append(walk)
        return walks, face_of

    def _components(self) -> None:
        comp: dict[int, int] = {}
        cid = 0
        for s in self.host:
            if s in comp:
                continue
            comp[s] = cid
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.host.neighbors(v):
                    if w not in comp:
                        comp[w] = cid
                        queue.append(w)
            cid += 1
        self._component = comp
        self._ncomp = cid
        faces_by_comp: dict[int, list[int]] = {}
        for fid, walk in enumerate(self._walks):
            faces_by_comp.setdefault(comp[walk[0][0]], []).append(fid)
        self._faces_by_comp = faces_by_comp
        self._component_outer = {c: _pick_outer(self._walks, ids) for c, ids in faces_by_comp.items()}

    def _check_euler(self) -> None:
        nv: dict[int, int] = {}
        ne: dict[int, int] = {}
        for v in self.host:
            c = self._component[v]
            nv[c] = nv.get(c, 0) + 1
            ne[c] = ne.get(c, 0) + len(self.rotation[v])
        for c, fids in self._faces_by_comp.items():
            if nv[c] - ne[c] // 2 + len(fids) != 2:
                raise EmbeddingError("rotation system is not planar (Euler check failed)")

    # faces

    @cached_property
    def faces(self) -> list[Face]:
        comp = self._component
        return [
            Face(i, tuple(w), i == self.outer_face, comp[w[0][0]]) for i, w in enumerate(self._walks)
        ]

    def face(self, fid: int) -> Face:
        return self.faces[fid]

    @property
    def outer(self) -> Face:
        return self.faces[self.outer_face]

    def is_component_outer(self, fid: int) -> bool:
        """True for the face of each component that touches the global outer region."""
        if fid == self.outer_face:
            return True
        c = self._component[self._walks[fid][0][0]]
        outer_comp = self._component[self._walks[self.outer_face][0][0]] if self._walks else -1
        return c != outer_comp and self._component_outer[c] == fid

    def face_neighbours(self, fid: int) -> list[tuple[tuple[int, int], int]]:
        """(half-edge on fid, face across it) for every edge of the face walk."""
        return [((a, b), self.face_of[(b, a)]) for a, b in self._walks[fid]]

    def corner_face(self, v: int, w: int) -> int:
        """Face holding the corner at v that follows w in the walk direction."""
        return self.face_of[(w, v)]

    def succ(self, v: int, w: int) -> int:
        nb = self.rotation[v]
        return nb[(self._pos[v][w] + 1) % len(nb)]

    def pred(self, v: int, w: int) -> int:
        nb = self.rotation[v]
        return nb[self._pos[v][w] - 1]

    def position(self, v: int, w: int) -> int:
        return self._pos[v][w]

    def component_of(self, v: int) -> int:
        return self._component[v]

    # serialization

    def to_json(self) -> dict:
        outer = list(self.outer.vertices) if self._walks else list(self.host.vertices[:1])
        return {
            "rotation": {str(v): list(self.rotation[v]) for v in sorted(self.rotation)},
            "outer_face": outer,
        }

    @classmethod
    def from_json(cls, data: dict, host: Graph | None = None) -> Embedding:
        rotation = {int(k): [int(x) for x in v] for k, v in data["rotation"].items()}
        if host is None:
            host = from_edge_list(
                [(u, w) for u, nb in rotation.items() for w in nb], rotation.keys()
            )
        e = cls(host, rotation)
        walk = [int(x) for x in data.get("outer_face", [])]
        if len(walk) >= 2:
            fid = e.face_of.get((walk[0], walk[1]))
            if fid is None or list(e.faces[fid].vertices) != walk:
                raise EmbeddingError("outer_face walk is not a face of the rotation system")
            e = reroot_outer(e, fid)
        return e

    def to_dot(self) -> str:
        lines = ["graph embedding {"]
        for v in self.host:
            lines.append(f'  {v} [label="{v}"];')
        for u, v in self.host.edges():
            lines.append(f"  {u} -- {v};")
        outer = " ".join(map(str, self.outer.vertices)) if self._walks else ""
        lines.append(f'  label="outer face: {outer}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Embedding(n={self.host.n}, m={self.host.m}, faces={len(self._walks)})"


def planar_embed(g: Graph) -> Embedding:
    """Planar rotation system for g, or NotPlanar with a Kuratowski certificate."""
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.edges())
    planar, emb = nx.check_planarity(nxg, counterexample=True)
    if not planar:
        cert = from_edge_list(emb.edges()) if emb is not None else None
        raise NotPlanar(cert)
    rotation = {}
    for v in g:
        order = list(emb.neighbors_cw_order(v))
        if order:
            i = order.index(min(order))
            order = order[i:] + order[:i]
        rotation[v] = order
    return Embedding(g, rotation)


def require_planar(g: Graph) -> None:
    if g.m > 3 * g.n - 6 and g.n >= 3:
        raise NotPlanar(None)
    planar_embed(g)


def faces(e: Embedding) -> list[Face]:
    return e.faces


def reroot_outer(e: Embedding, f: int) -> Embedding:
    if not 0 <= f < len(e.faces):
        raise EmbeddingError(f"unknown face id {f}")
    out = Embedding.__new__(Embedding)
    out.__dict__.update({k: v for k, v in e.__dict__.items() if k != "faces"})
    out.outer_face = f
    return out


def _check_square(e: Embedding, c: Square) -> None:
    if not c.in_graph(e.host):
        raise GraphError(f"{c.vertices} is not a cycle of the host graph")


def side_map(e: Embedding, c: Square) -> SideMap:
    """Inside/outside of a 4-cycle via the face-adjacency graph cut along its edges."""
    _check_square(e, c)
    comp = e.component_of(c.vertices[0])
    cut = set()
    for a, b in c.edges():
        cut.add((a, b))
        cut.add((b, a))
    comp_faces = e._faces_by_comp[comp]
    start = e.outer_face if e.faces[e.outer_face].component == comp else e._component_outer[comp]

    def flood(seed: int, side: dict[int, Side], label: Side) -> None:
        side[seed] = label
        queue = deque([seed])
        while queue:
            f = queue.popleft()
            for h, g2 in e.face_neighbours(f):
                if h in cut or g2 in side:
                    continue
                side[g2] = label
                queue.append(g2)

    face_side: dict[int, Side] = {}
    flood(start, face_side, Side.OUTSIDE)
    rest = [f for f in comp_faces if f not in face_side]
    if not rest:
        raise EmbeddingError("cutting along the square did not separate any faces")
    flood(rest[0], face_side, Side.INSIDE)
    if len(face_side) != len(comp_faces):
        raise EmbeddingError("cutting along the square produced more than two face classes")
    for a, b in c.edges():
        if face_side[e.face_of[(a, b)]] is face_side[e.face_of[(b, a)]]:
            raise EmbeddingError(f"square edge {a}-{b} does not separate the two sides")
    for f in e.faces:
        if f.component != comp:
            face_side[f.id] = Side.OUTSIDE
    on = c.vertex_set
    vertex_side: dict[int, Side] = {}
    for v in e.host:
        if v in on:
            continue
        if e.component_of(v) != comp or not e.rotation[v]:
            vertex_side[v] = Side.OUTSIDE
            continue
        w = e.rotation[v][0]
        vertex_side[v] = face_side[e.face_of[(w, v)]]
    return SideMap(c, vertex_side, face_side)


def _check_chordless(g: Graph, c: Square) -> None:
    a, b, x, y = c.vertices
    if g.has_edge(a, x) or g.has_edge(b, y):
        raise GraphError(f"square {c.vertices} has a chord; host must be triangle-free")


def split_at_square(e: Embedding, c: Square) -> tuple[Graph, Graph]:
    """(G_in, G_out): induced on the square plus its inside / outside vertices."""
    _check_square(e, c)
    _check_chordless(e.host, c)
    sm = side_map(e, c)
    on = c.vertex_set
    return induced_subgraph(e.host, on | sm.inside()), induced_subgraph(e.host, on | sm.outside())


def restrict(e: Embedding, vertices: Iterable[int], outer_half_edge: tuple[int, int] | None = None) -> Embedding:
    """Embedding induced on a vertex subset.

    The outer face becomes the face containing outer_half_edge, or by default
    the face that swallows the original outer face.
    """
    keep = set(vertices)
    sub = induced_subgraph(e.host, keep)
    rotation = {v: [w for w in e.rotation[v] if w in keep] for v in keep}
    out = Embedding(sub, rotation)
    if outer_half_edge is None and e.faces:
        outer_half_edge = next(((a, b) for a, b in e.outer.walk if a in keep and b in keep), None)
    if outer_half_edge is not None:
        out = reroot_outer(out, out.face_of[outer_half_edge])
    return out


def split_embeddings(e: Embedding, c: Square) -> tuple[Embedding, Embedding]:
    """Induced embeddings of G_in (outer face outside c) and G_out (original outer face)."""
    sm = side_map(e, c)
    on = c.vertex_set
    a, b = c.vertices[0], c.vertices[1]
    h = (a, b) if sm.face_side[e.face_of[(a, b)]] is Side.OUTSIDE else (b, a)
    e_in = restrict(e, on | sm.inside(), h)
    e_out = restrict(e, on | sm.outside())
    return e_in, e_out
