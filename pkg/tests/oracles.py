"""Independent reference implementations used only by the tests.

Nothing here imports the library's algorithms; graphs are plain adjacency
dicts or networkx graphs so the library is checked against separate code.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import networkx as nx


def adjacency(g) -> dict[int, set[int]]:
    """Library Graph or networkx graph -> {v: set(neighbours)}."""
    if isinstance(g, nx.Graph):
        return {v: set(g[v]) for v in g}
    return {v: set(g.neighbors(v)) for v in g}


def floyd_warshall(adj: dict[int, set[int]]) -> dict[int, dict[int, float]]:
    vs = sorted(adj)
    d = {u: {v: (0 if u == v else (1 if v in adj[u] else math.inf)) for v in vs} for u in vs}
    for k in vs:
        dk = d[k]
        for i in vs:
            dik = d[i][k]
            if dik == math.inf:
                continue
            di = d[i]
            for j in vs:
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def is_median_brute(adj: dict[int, set[int]]) -> bool:
    """Definition: connected and every triple has exactly one median."""
    if not adj:
        return False
    d = floyd_warshall(adj)
    vs = sorted(adj)
    if any(d[vs[0]][v] == math.inf for v in vs):
        return False
    for u, v, w in itertools.combinations_with_replacement(vs, 3):
        count = 0
        for x in vs:
            if d[u][x] + d[x][v] == d[u][v] and d[v][x] + d[x][w] == d[v][w] and d[u][x] + d[x][w] == d[u][w]:
                count += 1
        if count != 1:
            return False
    return True


def isometric_cycles_brute(adj: dict[int, set[int]]) -> set[tuple[int, ...]]:
    """Every isometric cycle as its canonical rotation/reflection."""
    d = floyd_warshall(adj)
    g = nx.Graph()
    g.add_nodes_from(adj)
    g.add_edges_from((u, v) for u in adj for v in adj[u])
    out = set()
    for cyc in nx.simple_cycles(g):
        n = len(cyc)
        if n < 3:
            continue
        if all(d[cyc[i]][cyc[j]] == min(j - i, n - j + i) for i in range(n) for j in range(i + 1, n)):
            out.add(canonical_cycle(cyc))
    return out


def canonical_cycle(cyc) -> tuple[int, ...]:
    cyc = list(cyc)
    best = None
    for seq in (cyc, cyc[::-1]):
        for r in range(len(seq)):
            cand = tuple(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best


# plane embeddings


def trace_faces(rot: dict[int, list[int]]) -> list[list[tuple[int, int]]]:
    """Faces of a rotation system; the successor of dart (u, v) is (v, w),
    where w immediately precedes u in the rotation at v."""
    pos = {v: {w: i for i, w in enumerate(nb)} for v, nb in rot.items()}
    seen = set()
    faces = []
    for u in sorted(rot):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append((a, b))
                nb = rot[b]
                a, b = b, nb[pos[b][a] - 1]
            faces.append(walk)
    return faces


def side_classification(rot: dict[int, list[int]], outer_dart: tuple[int, int], square: tuple[int, ...]) -> dict[int, str]:
    """Vertex -> 'in' / 'out' / 'on' for a 4-cycle, by crossing parity in the dual.

    A face is inside iff every dual path to it from the outer face crosses
    the square's edges an odd number of times.
    """
    faces = trace_faces(rot)
    face_of = {dart: i for i, f in enumerate(faces) for dart in f}
    sq_edges = {frozenset((square[i], square[(i + 1) % 4])) for i in range(4)}
    start = face_of[outer_dart]
    parity = {start: 0}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for a, b in faces[f]:
            g2 = face_of[(b, a)]
            p = parity[f] ^ (1 if frozenset((a, b)) in sq_edges else 0)
            if g2 not in parity:
                parity[g2] = p
                queue.append(g2)
            elif parity[g2] != p:
                raise AssertionError("inconsistent crossing parity")
    side = {}
    for v in rot:
        if v in square:
            side[v] = "on"
        elif not rot[v]:
            side[v] = "out"
        else:
            side[v] = "in" if parity[face_of[(rot[v][0], v)]] else "out"
    return side


def forest_brute(rot, outer_dart, squares: list[tuple[int, ...]]) -> dict:
    """Square or square-free vertex -> canonical parent square (None at roots)."""
    sides = {s: side_classification(rot, outer_dart, s) for s in squares}
    on_sq = {v for s in squares for v in s}

    def contains(s, t):
        return s != t and all(sides[s][v] in ("in", "on") for v in t)

    out = {}
    for t in squares:
        hosts = [s for s in squares if contains(s, t)]
        inner = [s for s in hosts if all(s == o or contains(o, s) for o in hosts)]
        assert len(inner) <= 1
        out[canonical_cycle(t)] = canonical_cycle(inner[0]) if inner else None
    for x in rot:
        if x in on_sq:
            continue
        hosts = [s for s in squares if sides[s][x] == "in"]
        inner = [s for s in hosts if all(s == o or contains(o, s) for o in hosts)]
        assert len(inner) <= 1
        out[x] = canonical_cycle(inner[0]) if inner else None
    return out


def rotation_systems(adj: dict[int, set[int]], cap: int = 50_000):
    """All rotation systems of the graph, or None when there are more than cap."""
    vs = sorted(adj)
    choices = []
    total = 1
    for v in vs:
        nb = sorted(adj[v])
        if len(nb) <= 2:
            choices.append([nb])
            continue
        first, rest = nb[0], nb[1:]
        orders = [[first, *p] for p in itertools.permutations(rest)]
        total *= len(orders)
        choices.append(orders)
    if total > cap:
        return None
    return ({v: c for v, c in zip(vs, combo)} for combo in itertools.product(*choices))


def is_square_graph_brute(adj: dict[int, set[int]], cap: int = 50_000) -> bool | None:
    """Exhaustive test of the definition: some plane embedding and outer face
    with all inner faces 4-cycles and all inner vertices of degree >= 4.
    None when the rotation-system count exceeds cap."""
    n = len(adj)
    m = sum(len(s) for s in adj.values()) // 2
    seen = {next(iter(adj))} if adj else set()
    stack = list(seen)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if not adj or len(seen) != n:
        return False
    if m == 0:
        return True
    systems = rotation_systems(adj, cap)
    if systems is None:
        return None
    want = m - n + 2
    for rot in systems:
        faces = trace_faces(rot)
        if len(faces) != want:
            continue
        for i, outer in enumerate(faces):
            ok = True
            for j, f in enumerate(faces):
                if j != i and (len(f) != 4 or len({a for a, _ in f}) != 4):
                    ok = False
                    break
            if not ok:
                continue
            on_outer = {a for a, _ in outer} | {b for _, b in outer}
            if all(len(adj[v]) >= 4 for v in adj if v not in on_outer):
                return True
    return False


# exhaustive families


def connected_bipartite_graphs(nmax: int, planar: bool = True) -> dict[int, list[nx.Graph]]:
    """Connected bipartite graphs up to isomorphism by vertex extension.

    Every connected graph has a non-cut vertex, so each graph on n vertices
    is a graph on n - 1 vertices plus one vertex joined to a non-empty set
    inside one colour class. Duplicates are removed with WL hashes and
    networkx isomorphism. With planar=True non-planar graphs are dropped
    (planarity is hereditary, so extension stays complete).
    """
    g1 = nx.Graph()
    g1.add_node(0)
    levels = {1: [g1]}
    for n in range(2, nmax + 1):
        buckets: dict[str, list[nx.Graph]] = {}
        for h in levels[n - 1]:
            colour = nx.bipartite.color(h)
            for side in (0, 1):
                part = sorted(v for v in h if colour[v] == side)
                for r in range(1, len(part) + 1):
                    for sub in itertools.combinations(part, r):
                        g = h.copy()
                        g.add_edges_from((n - 1, x) for x in sub)
                        if planar and not nx.check_planarity(g)[0]:
                            continue
                        key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
                        bucket = buckets.setdefault(key, [])
                        if not any(nx.is_isomorphic(g, o) for o in bucket):
                            bucket.append(g)
        levels[n] = [g for b in buckets.values() for g in b]
    return levels


def labelled_connected_bipartite_count(n: int) -> int:
    """Isomorphism classes of connected bipartite graphs via labelled edge subsets (small n)."""
    vs = range(n)
    pairs = list(itertools.combinations(vs, 2))
    seen: dict[str, list[nx.Graph]] = {}
    count = 0
    for mask in range(1 << len(pairs)):
        g = nx.Graph()
        g.add_nodes_from(vs)
        g.add_edges_from(p for i, p in enumerate(pairs) if mask >> i & 1)
        if not nx.is_connected(g) or not nx.is_bipartite(g):
            continue
        key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
        bucket = seen.setdefault(key, [])
        if not any(nx.is_isomorphic(g, o) for o in bucket):
            bucket.append(g)
            count += 1
    return count
