"""Edge-list text format: `u v` per line, `#` comments, `vertex u` for isolated vertices."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph, GraphError, from_edge_list


class ParseError(GraphError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


@dataclass(frozen=True)
class ParsedGraph:
    """A parsed graph plus the original token of every vertex when names were not integers."""

    graph: Graph
    names: dict[int, str] = field(default_factory=dict)

    def name(self, v: int) -> str:
        return self.names.get(v, str(v))

    def lookup(self, token: str) -> int:
        if not self.names:
            try:
                return int(token)
            except ValueError:
                raise GraphError(f"unknown vertex {token!r}") from None
        for v, s in self.names.items():
            if s == token:
                return v
        raise GraphError(f"unknown vertex {token!r}")


def parse_edge_list(text: str) -> ParsedGraph:
    """Parse the edge-list format.

    Non-negative integer tokens are kept as labels. If any token is not one,
    every token is mapped to a dense integer in order of first appearance and
    the original names are kept in ParsedGraph.names.
    """
    edges: list[tuple[str, str]] = []
    isolated: list[str] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 2:
                raise ParseError("expected `vertex u`", no)
            isolated.append(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(f"expected two vertices, got {len(parts)} tokens", no)
        if parts[0] == parts[1]:
            raise ParseError(f"self-loop at {parts[0]}", no)
        edges.append((parts[0], parts[1]))
    tokens = [t for e in edges for t in e] + isolated
    if all(t.isdigit() for t in tokens):
        return ParsedGraph(from_edge_list([(int(a), int(b)) for a, b in edges], [int(t) for t in isolated]))
    ids: dict[str, int] = {}
    for t in tokens:
        ids.setdefault(t, len(ids))
    g = from_edge_list([(ids[a], ids[b]) for a, b in edges], [ids[t] for t in isolated])
    return ParsedGraph(g, {v: t for t, v in ids.items()})


def read_edge_list(path: str | Path) -> ParsedGraph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, names: dict[int, str] | None = None) -> str:
    """Sorted edges, then `vertex` lines for isolated vertices."""
    name = (lambda v: names.get(v, str(v))) if names else str
    lines = [f"{name(u)} {name(v)}" for u, v in g.edges()]
    lines += [f"vertex {name(v)}" for v in g if g.degree(v) == 0]
    return "\n".join(lines) + ("\n" if lines else "")
