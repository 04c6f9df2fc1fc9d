"""Containment order on squares and the nesting forest of a plane graph."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property

from .embedding import Embedding, EmbeddingError, Side, side_map
from .graph import Graph, is_connected
from .squares import Square, enumerate_squares, squares_by_edge


class StraddleError(EmbeddingError):
    """A square has vertices strictly on both sides of another square."""


@dataclass(frozen=True)
class SquareOrder:
    squares: tuple[Square, ...]
    contains: frozenset[tuple[int, int]]

    def contains_square(self, c: Square, c2: Square) -> bool:
        idx = {s: i for i, s in enumerate(self.squares)}
        return (idx[c], idx[c2]) in self.contains


def _side_maps(e: Embedding, squares):
    return [side_map(e, s) for s in squares]


def square_order(g: Graph, e: Embedding, squares: list[Square] | None = None) -> SquareOrder:
    """(i, j) in contains iff every vertex of square j is on or inside square i."""
    squares = enumerate_squares(g) if squares is None else list(squares)
    maps = _side_maps(e, squares)
    rel = set()
    for i, sm in enumerate(maps):
        on = squares[i].vertex_set
        for j, s2 in enumerate(squares):
            if all(v in on or sm.vertex_side[v] is Side.INSIDE for v in s2.vertices):
                rel.add((i, j))
    for i, j in rel:
        if i != j and (j, i) in rel:
            raise EmbeddingError(f"containment is not antisymmetric on squares {i} and {j}")
    return SquareOrder(tuple(squares), frozenset(rel))


@dataclass(frozen=True)
class ForestNode:
    id: int
    kind: str
    square: Square | None
    vertex: int | None
    parent: int | None
    level: int

    def vertices(self) -> tuple[int, ...]:
        return self.square.vertices if self.square is not None else (self.vertex,)

    def to_json(self) -> dict:
        out = {"id": self.id, "kind": self.kind, "level": self.level, "parent": self.parent}
        if self.square is not None:
            out["square"] = list(self.square.vertices)
        else:
            out["vertex"] = self.vertex
        return out


@dataclass(frozen=True)
class NestingForest:
    nodes: tuple[ForestNode, ...]

    @cached_property
    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for nd in self.nodes:
            if nd.parent is not None:
                out[nd.parent].append(nd.id)
        return dict(out)

    @property
    def roots(self) -> list[int]:
        return [nd.id for nd in self.nodes if nd.parent is None]

    @property
    def squares(self) -> list[ForestNode]:
        return [nd for nd in self.nodes if nd.kind == "square"]

    @property
    def depth(self) -> int:
        return max((nd.level for nd in self.nodes), default=-1)

    def is_tree(self) -> bool:
        return len(self.roots) == 1

    def node_of(self, square: Square) -> ForestNode:
        for nd in self.nodes:
            if nd.square == square:
                return nd
        raise KeyError(square)

    def parent_map(self) -> dict:
        """Square or vertex -> parent square (None for roots), for comparisons."""
        out = {}
        for nd in self.nodes:
            key = nd.square if nd.square is not None else nd.vertex
            out[key] = None if nd.parent is None else self.nodes[nd.parent].square
        return out

    def to_json(self) -> dict:
        return {"nodes": [nd.to_json() for nd in self.nodes]}

    def to_dot(self) -> str:
        lines = ["digraph forest {"]
        for nd in self.nodes:
            if nd.square is not None:
                label = "C" + "-".join(map(str, nd.square.vertices))
                lines.append(f'  n{nd.id} [shape=box,label="{label} L{nd.level}"];')
            else:
                lines.append(f'  n{nd.id} [shape=ellipse,label="{nd.vertex} L{nd.level}"];')
        for nd in self.nodes:
            if nd.parent is not None:
                lines.append(f"  n{nd.parent} -> n{nd.id};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def level_slices(f: NestingForest) -> dict[int, list[int]]:
    out: dict[int, list[int]] = defaultdict(list)
    for nd in f.nodes:
        out[nd.level].append(nd.id)
    return dict(sorted(out.items()))


def _assemble(squares: list[Square], sq_parent: list[int | None], w_parent: dict[int, int | None]) -> NestingForest:
    level = [-1] * len(squares)

    def lev(i: int) -> int:
        # iterative so deep nestings do not hit the recursion limit
        path = []
        j = i
        while level[j] < 0 and sq_parent[j] is not None:
            path.append(j)
            j = sq_parent[j]
            if len(path) > len(squares):
                raise EmbeddingError("cycle in square containment")
        if level[j] < 0:
            level[j] = 0
        for k in reversed(path):
            level[k] = level[sq_parent[k]] + 1
        return level[i]

    nodes = []
    for i, s in enumerate(squares):
        nodes.append(ForestNode(i, "square", s, None, sq_parent[i], lev(i)))
    base = len(squares)
    for k, x in enumerate(sorted(w_parent)):
        p = w_parent[x]
        nodes.append(ForestNode(base + k, "vertex", None, x, p, 0 if p is None else level[p] + 1))
    return NestingForest(tuple(nodes))


def _square_free(g: Graph, squares) -> list[int]:
    covered = set()
    for s in squares:
        covered.update(s.vertices)
    return [v for v in g if v not in covered]


def nesting_forest(g: Graph, e: Embedding, squares: list[Square] | None = None, method: str = "sweep") -> NestingForest:
    """Forest of squares under immediate containment plus square-free vertices.

    method="sweep" runs one pass over the dual graph and is near-linear;
    method="order" builds the full containment relation from one side map
    per square (quadratic, kept as a reference). Both raise StraddleError
    when the squares are not nested, which cannot happen for median inputs.
    """
    if not is_connected(g):
        raise EmbeddingError("nesting forest needs a connected graph")
    squares = enumerate_squares(g) if squares is None else sorted(squares)
    if method == "sweep":
        return _sweep(g, e, squares)
    if method == "order":
        return _from_order(g, e, squares)
    raise ValueError(f"unknown method {method!r}")


def _from_order(g: Graph, e: Embedding, squares: list[Square]) -> NestingForest:
    maps = _side_maps(e, squares)
    for i, sm in enumerate(maps):
        for j, s2 in enumerate(squares):
            sides = {sm.vertex_side[v] for v in s2.vertices if v in sm.vertex_side}
            if len(sides) == 2:
                raise StraddleError(f"square {s2.vertices} straddles {squares[i].vertices}")
    order = square_order(g, e, squares)
    cont = order.contains

    def minimal(cands: list[int]) -> int | None:
        if not cands:
            return None
        inner = [c for c in cands if all((o, c) in cont for o in cands)]
        if len(inner) != 1:
            raise StraddleError("containing squares do not form a chain")
        return inner[0]

    sq_parent = []
    for j in range(len(squares)):
        sq_parent.append(minimal([i for i in range(len(squares)) if i != j and (i, j) in cont]))
    w_parent = {}
    for x in _square_free(g, squares):
        w_parent[x] = minimal([i for i, sm in enumerate(maps) if sm.vertex_side[x] is Side.INSIDE])
    return _assemble(squares, sq_parent, w_parent)


_UNSET = -2


def _sweep(g: Graph, e: Embedding, squares: list[Square]) -> NestingForest:
    # Each face stores the innermost square containing it; parent pointers of
    # squares give the rest of the chain. Crossing an edge leaves the squares
    # through that edge that are on the current chain (they must sit on top of
    # it) and enters the others, outermost first.
    nsq = len(squares)
    by_edge: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, s in enumerate(squares):
        for edge in s.edges():
            by_edge[edge].append(i)
    parent = [_UNSET] * nsq
    top = [_UNSET] * len(e.faces)
    rot, pos = e.rotation, e._pos

    def cross(t: int, a: int, b: int) -> int:
        through = by_edge.get((a, b) if a < b else (b, a))
        if not through:
            return t
        left = []
        while t >= 0 and t in through:
            left.append(t)
            t = parent[t]
        entering = [s for s in through if s not in left]
        if len(entering) > 1:
            # pivot a, measured backwards from b around a
            deg = len(rot[a])
            pa = pos[a]
            steps = {}
            for s in entering:
                x = squares[s].neighbours_of(a)
                x = x[0] if x[1] == b else x[1]
                steps[s] = (pa[b] - pa[x]) % deg
            if len(set(steps.values())) != len(steps):
                raise StraddleError("two squares leave a vertex along the same edge pair")
            entering.sort(key=lambda s: -steps[s])
        for s in entering:
            if parent[s] == _UNSET:
                parent[s] = t
            elif parent[s] != t:
                raise StraddleError(f"square {squares[s].vertices} is entered from inconsistent regions")
            t = s
        return t

    start = e.outer_face
    if e.faces:
        top[start] = -1
        queue = deque([start])
        while queue:
            f = queue.popleft()
            tf = top[f]
            for (a, b), f2 in e.face_neighbours(f):
                t = cross(tf, a, b)
                if top[f2] == _UNSET:
                    top[f2] = t
                    queue.append(f2)
                elif top[f2] != t:
                    raise StraddleError(f"face {f2} reached with two different enclosing squares")
    if any(p == _UNSET for p in parent):
        raise EmbeddingError("some square was never entered by the sweep")
    sq_parent = [None if p < 0 else p for p in parent]
    w_parent: dict[int, int | None] = {}
    for x in _square_free(g, squares):
        if not rot[x]:
            w_parent[x] = None
            continue
        t = top[e.face_of[(rot[x][0], x)]]
        w_parent[x] = None if t < 0 else t
    return _assemble(squares, sq_parent, w_parent)
