"""Undirected simple graphs with stable integer labels, distances and intervals."""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Mapping
from functools import cached_property

import numpy as np

from . import _accel

TABLE_LIMIT = 4096


class GraphError(ValueError):
    """Malformed graph input (self-loop, unknown vertex, bad edge-list line)."""


class Graph:
    """Immutable undirected simple graph on non-negative integer labels.

    Neighbour tuples are kept sorted so every traversal is deterministic.
    """

    def __init__(self, adjacency: Mapping[int, Iterable[int]] | None = None):
        adj: dict[int, set[int]] = {}
        for v, nbrs in (adjacency or {}).items():
            _check_label(v)
            adj.setdefault(v, set())
            for w in nbrs:
                _check_label(w)
                if w == v:
                    raise GraphError(f"self-loop at vertex {v}")
                adj[v].add(w)
                adj.setdefault(w, set()).add(v)
        self._init(adj)

    def _init(self, adj: dict[int, set[int]]) -> None:
        self._adj = {v: tuple(sorted(adj[v])) for v in sorted(adj)}
        self._sets = {v: frozenset(n) for v, n in adj.items()}
        self._m = sum(len(n) for n in adj.values()) // 2

    @classmethod
    def _from_sets(cls, adj: dict[int, set[int]]) -> Graph:
        # trusted constructor: adj is already symmetric and loop-free
        g = cls.__new__(cls)
        g._init(adj)
        return g

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> Graph:
        return from_edge_list(edges, vertices)

    # basic queries

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._sets[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        s = self._sets.get(u)
        return s is not None and v in s

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in self._adj.items() for v in nbrs if u < v]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def adjacency(self) -> dict[int, tuple[int, ...]]:
        return dict(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self):
        return iter(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.edges())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # derived structures

    @cached_property
    def index(self) -> dict[int, int]:
        """Label -> dense position in sorted label order."""
        return {v: i for i, v in enumerate(self._adj)}

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        idx = self.index
        indptr = np.zeros(self.n + 1, dtype=np.int32)
        flat: list[int] = []
        for i, v in enumerate(self._adj):
            flat.extend(idx[w] for w in self._adj[v])
            indptr[i + 1] = len(flat)
        return indptr, np.asarray(flat, dtype=np.int32)


def _check_label(v: object) -> None:
    if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 0:
        raise GraphError(f"vertex labels must be non-negative integers, got {v!r}")


def from_edge_list(pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> Graph:
    """Build a graph from vertex pairs; duplicates collapse, loops are rejected."""
    adj: dict[int, set[int]] = {}
    for v in vertices:
        _check_label(v)
        adj.setdefault(int(v), set())
    for pair in pairs:
        u, v = pair
        _check_label(u)
        _check_label(v)
        u, v = int(u), int(v)
        if u == v:
            raise GraphError(f"self-loop in edge ({u}, {v})")
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return Graph._from_sets(adj)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    keep = set(s)
    for v in keep:
        if v not in g:
            raise GraphError(f"unknown vertex {v}")
    return Graph._from_sets({v: {w for w in g.neighbors(v) if w in keep} for v in keep})


def union(*graphs: Graph) -> Graph:
    adj: dict[int, set[int]] = {}
    for h in graphs:
        for v in h:
            adj.setdefault(v, set()).update(h.neighbors(v))
    return Graph._from_sets(adj)


def relabel(g: Graph, mapping: Mapping[int, int]) -> Graph:
    """Apply an injective relabelling; vertices missing from mapping keep their label."""
    f = {v: mapping.get(v, v) for v in g}
    if len(set(f.values())) != g.n:
        raise GraphError("relabelling is not injective")
    return Graph._from_sets({f[v]: {f[w] for w in g.neighbors(v)} for v in g})


def is_subgraph(h: Graph, g: Graph) -> bool:
    return all(v in g for v in h) and all(g.has_edge(u, v) for u, v in h.edges())


# traversal predicates


def bfs_layers(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dv
                queue.append(w)
    return dist


def components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for v in g:
        if v in seen:
            continue
        comp = list(bfs_layers(g, v))
        seen.update(comp)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(bfs_layers(g, g.vertices[0])) == g.n


def two_colouring(g: Graph) -> dict[int, int] | None:
    colour: dict[int, int] = {}
    for s in g:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    return colour


def is_bipartite(g: Graph) -> bool:
    return two_colouring(g) is not None


def is_tree(g: Graph) -> bool:
    return g.n > 0 and g.m == g.n - 1 and is_connected(g)


def shortest_odd_cycle(g: Graph) -> list[int] | None:
    """A shortest odd cycle (always isometric), or None for bipartite graphs."""
    best: list[int] | None = None
    for s in g:
        parent = {s: None}
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] + 1 >= len(best):
                break
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif dist[w] == dist[v] and v < w:
                    a = _path_to_root(parent, v)
                    b = _path_to_root(parent, w)
                    if a[-1] != b[-1] or len(set(a) & set(b)) != 1:
                        continue
                    cyc = a[::-1] + b[:-1]
                    if best is None or len(cyc) < len(best):
                        best = cyc
    return _rotate_min(best) if best else None


def shortest_cycle(g: Graph) -> list[int] | None:
    """Girth cycle of g (any parity); a shortest cycle is always isometric."""
    best: list[int] | None = None
    for s in g:
        parent = {s: None}
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] >= len(best):
                break
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif w != parent[v] and dist[w] >= dist[v]:
                    a = _path_to_root(parent, v)
                    b = _path_to_root(parent, w)
                    if len(set(a) & set(b)) != 1:
                        continue
                    cyc = a[::-1] + b[:-1]
                    if best is None or len(cyc) < len(best):
                        best = cyc
    return _rotate_min(best) if best else None


def _path_to_root(parent: dict, v: int) -> list[int]:
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out


def _rotate_min(cyc: list[int]) -> list[int]:
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return cyc


# distances


class DistanceOracle:
    """Hop distances of one graph.

    The full table is built eagerly when n <= TABLE_LIMIT; larger graphs
    answer queries with one BFS per source row (rows are cached).
    """

    def __init__(self, g: Graph, table_limit: int = TABLE_LIMIT):
        self.graph = g
        self.labels = g.vertices
        self.index = g.index
        self._rows: dict[int, dict[int, int]] = {}
        self.table: np.ndarray | None = None
        if g.n <= table_limit:
            indptr, indices = g.csr
            self.table = _accel.all_pairs_bfs(indptr, indices, g.n)

    @property
    def materialized(self) -> bool:
        return self.table is not None

    @cached_property
    def rows(self) -> list[list[int]]:
        """Index-space distance table as nested lists (-1 for unreachable)."""
        if self.table is None:
            raise GraphError("distance table not materialized for this graph size")
        return self.table.tolist()

    def __call__(self, u: int, v: int) -> float:
        return self.distance(u, v)

    def distance(self, u: int, v: int) -> float:
        if u not in self.index or v not in self.index:
            raise GraphError(f"unknown vertex in pair ({u}, {v})")
        if self.table is not None:
            d = int(self.table[self.index[u], self.index[v]])
        else:
            row = self._rows.get(u)
            if row is None:
                row = self._rows[u] = bfs_layers(self.graph, u)
            d = row.get(v, -1)
        return math.inf if d < 0 else d

    def diameter(self) -> float:
        if self.table is None:
            raise GraphError("diameter needs the materialized table")
        if self.graph.n == 0:
            return 0
        if (self.table < 0).any():
            return math.inf
        return int(self.table.max())


def distances(g: Graph) -> DistanceOracle:
    return DistanceOracle(g)


def interval(g: Graph, d: DistanceOracle, u: int, v: int) -> frozenset[int]:
    """All vertices on some shortest u-v path."""
    duv = d(u, v)
    if duv == math.inf:
        raise GraphError(f"vertices {u} and {v} are disconnected")
    if d.table is not None:
        iu, iv = d.index[u], d.index[v]
        row = d.table[iu] + d.table[iv]
        hits = np.nonzero((row == duv) & (d.table[iu] >= 0))[0]
        return frozenset(d.labels[i] for i in hits)
    du = bfs_layers(g, u)
    dv = bfs_layers(g, v)
    return frozenset(x for x in du if du[x] + dv.get(x, math.inf) == duv)
