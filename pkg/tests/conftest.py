from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def bipartite_graphs(draw, min_n: int = 1, max_n: int = 9, connected: bool = True):
    """Edge lists of random bipartite graphs on 0..n-1 (connected by default)."""
    n = draw(st.integers(min_n, max_n))
    side = [draw(st.booleans()) for _ in range(n)]
    edges = set()
    if connected:
        # random spanning tree, flipping sides along it so it stays bipartite
        side = [False] * n
        for v in range(1, n):
            p = draw(st.integers(0, v - 1))
            side[v] = not side[p]
            edges.add((p, v))
    cross = [(u, v) for u in range(n) for v in range(u + 1, n) if side[u] != side[v]]
    if cross:
        extra = draw(st.lists(st.sampled_from(cross), max_size=2 * n, unique=True))
        edges.update(extra)
    return n, sorted(edges)


@st.composite
def any_graphs(draw, max_n: int = 8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return n, sorted(edges)


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
