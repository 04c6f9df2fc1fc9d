"""Named small graphs used throughout the library and its tests."""

from __future__ import annotations

from .graph import Graph, from_edge_list


def path(n: int) -> Graph:
    return from_edge_list([(i, i + 1) for i in range(n - 1)], range(n))


def cycle(n: int) -> Graph:
    return from_edge_list([(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return from_edge_list([(0, i) for i in range(1, leaves + 1)], [0])


def complete(n: int) -> Graph:
    return from_edge_list([(i, j) for i in range(n) for j in range(i + 1, n)], range(n))


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts {0..a-1} and {a..a+b-1}."""
    return from_edge_list([(i, a + j) for i in range(a) for j in range(b)])


def grid(rows: int, cols: int) -> Graph:
    """rows x cols vertices; vertex (r, c) is labelled r * cols + c."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return from_edge_list(edges, range(rows * cols))


def domino() -> Graph:
    """Two squares sharing an edge (the 2 x 3 grid)."""
    return grid(2, 3)


def hypercube(dim: int) -> Graph:
    n = 1 << dim
    return from_edge_list([(v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)], range(n))


def cube() -> Graph:
    return hypercube(3)


def cube_minus_vertex() -> Graph:
    q = cube()
    return from_edge_list([(u, v) for u, v in q.edges() if 7 not in (u, v)])


def book() -> Graph:
    """K2 x K1,3: three squares sharing the edge 0-1."""
    return from_edge_list([(0, 1), (0, 2), (1, 3), (2, 3), (0, 4), (1, 5), (4, 5), (0, 6), (1, 7), (6, 7)])


def cogwheel(n: int) -> Graph:
    """Even rim 1..n with hub 0 adjacent to the odd rim vertices."""
    if n % 2 or n < 4:
        raise ValueError("cogwheel rim length must be even and >= 4")
    edges = [(i, i % n + 1) for i in range(1, n + 1)]
    edges += [(0, i) for i in range(1, n + 1, 2)]
    return from_edge_list(edges)


def suspended_cogwheel(n: int) -> Graph:
    """Cogwheel plus a pendant vertex n + 1 on the hub."""
    g = cogwheel(n)
    return from_edge_list(g.edges() + [(0, n + 1)])


def glued_cubes() -> Graph:
    """Two cubes sharing the face {0, 1, 2, 3}."""
    q = cube()
    second = {0: 0, 1: 1, 2: 2, 3: 3, 4: 8, 5: 9, 6: 10, 7: 11}
    edges = q.edges() + [(second[u], second[v]) for u, v in q.edges() if not (u < 4 and v < 4)]
    return from_edge_list([(u, v) for u, v in edges])
