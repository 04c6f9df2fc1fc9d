"""Square gluing, ordered decomposition into basic QS-graphs, recomposition, merging."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

from .embedding import Embedding, NotPlanar, planar_embed, split_embeddings, split_at_square
from .graph import (
    TABLE_LIMIT,
    Graph,
    GraphError,
    components,
    from_edge_list,
    induced_subgraph,
    is_connected,
    is_tree,
    relabel,
    shortest_cycle,
    shortest_odd_cycle,
    two_colouring,
    union,
)
from .metric import (
    MedianVerdict,
    Violation,
    Witness,
    _characterize,
    _cycle_witness,
    is_median_oracle,
)
from .nesting import NestingForest, StraddleError, nesting_forest
from .squares import BasicKind, Square, is_basic_qs, is_cube, squares_if_k23_free

CELL_ORACLE_LIMIT = 300


class NotMedian(Exception):
    def __init__(self, verdict: MedianVerdict):
        kind = verdict.witness.kind.value if verdict.witness else "unknown"
        super().__init__(f"graph is not a median graph ({kind})")
        self.verdict = verdict


class FactorizationError(ValueError):
    """A factorization violates one of its structural laws."""


class InvalidOrder(FactorizationError):
    """A glue square is missing from the union of the preceding factors."""


# gluing


@dataclass(frozen=True)
class GlueMap:
    """One of the 8 isomorphisms between two ordered squares.

    source.vertices[i] is identified with target.vertices[(shift + sign * i) % 4]
    where sign is -1 for reflections.
    """

    source: Square
    target: Square
    shift: int = 0
    reflect: bool = False

    def mapping(self) -> dict[int, int]:
        sign = -1 if self.reflect else 1
        s, t = self.source.vertices, self.target.vertices
        return {s[i]: t[(self.shift + sign * i) % 4] for i in range(4)}

    @classmethod
    def all(cls, source: Square, target: Square) -> list[GlueMap]:
        return [cls(source, target, k, r) for r in (False, True) for k in range(4)]


def glue_with_mapping(g: Graph, c: Square, h: Graph, c2: Square, m: GlueMap | None = None) -> tuple[Graph, dict[int, int]]:
    """Glue h onto g along c2 -> c; returns the result and the label map for h."""
    if not c.in_graph(g):
        raise GraphError(f"{c.vertices} is not a square of the first graph")
    if not c2.in_graph(h):
        raise GraphError(f"{c2.vertices} is not a square of the second graph")
    m = m or GlueMap(c2, c)
    if m.source.vertices != c2.vertices or m.target.vertices != c.vertices:
        raise GraphError("glue map does not connect the given squares")
    phi = m.mapping()
    for a, b in c2.edges():
        if not g.has_edge(phi[a], phi[b]):
            raise GraphError("correspondence is not edge-preserving")
    nxt = max(g.vertices, default=-1) + 1
    for v in h:
        if v not in phi:
            phi[v] = nxt
            nxt += 1
    return union(g, relabel(h, phi)), phi


def glue(g: Graph, c: Square, h: Graph, c2: Square, m: GlueMap | None = None) -> Graph:
    return glue_with_mapping(g, c, h, c2, m)[0]


# factorizations


@dataclass(frozen=True)
class Factor:
    graph: Graph
    kind: str
    glue: Square | None = None

    def to_json(self) -> dict:
        return {
            "vertices": list(self.graph.vertices),
            "edges": [list(e) for e in self.graph.edges()],
            "kind": self.kind,
            "glue_square": self.glue.to_json() if self.glue else None,
        }


def edge_list_digest(g: Graph) -> str:
    from .io import write_edge_list

    return hashlib.sha256(write_edge_list(g).encode()).hexdigest()


@dataclass(frozen=True)
class Factorization:
    host: Graph
    factors: tuple[Factor, ...]
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.factors)

    def to_json(self) -> dict:
        return {
            "host": {"n": self.host.n, "m": self.host.m, "sha256": edge_list_digest(self.host)},
            "degenerate": self.degenerate,
            "factors": [f.to_json() for f in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict, host: Graph) -> Factorization:
        factors = []
        for fd in data["factors"]:
            g = from_edge_list([tuple(e) for e in fd["edges"]], fd["vertices"])
            sq = Square(tuple(fd["glue_square"])) if fd.get("glue_square") else None
            factors.append(Factor(g, fd["kind"], sq))
        return cls(host, tuple(factors), bool(data.get("degenerate", False)))

    def validate(self, check_basic: bool = True) -> None:
        """Raise FactorizationError unless every structural law holds."""
        if not self.factors:
            raise FactorizationError("empty factorization")
        if self.factors[0].glue is not None:
            raise FactorizationError("the first factor has no glue square")
        recomposed = recompose(self)
        if recomposed != self.host:
            raise FactorizationError("union of the factors differs from the host")
        prefix = self.factors[0].graph
        for j, f in enumerate(self.factors[1:], start=2):
            c = f.glue
            if c is None:
                raise FactorizationError(f"factor {j} lacks a glue square")
            shared = set(f.graph.vertices) & set(prefix.vertices)
            if shared != set(c.vertices):
                raise FactorizationError(f"factor {j} meets the prefix in {sorted(shared)}, not in its glue square")
            shared_edges = f.graph.edge_set() & prefix.edge_set()
            if shared_edges != set(c.edges()):
                raise FactorizationError(f"factor {j} shares edges beyond its glue square")
            prefix = union(prefix, f.graph)
        if self.degenerate:
            return
        for j, f in enumerate(self.factors, start=1):
            if f.graph.n == 4 and f.graph.m == 4:
                raise FactorizationError(f"factor {j} is the unit square")
            if check_basic and is_basic_qs(f.graph) is BasicKind.NO:
                raise FactorizationError(f"factor {j} is not a basic QS-graph")


def recompose(f: Factorization) -> Graph:
    """Left-to-right union of the factors, checking that each glue square is present."""
    if not f.factors:
        return Graph()
    acc = f.factors[0].graph
    for j, fac in enumerate(f.factors[1:], start=2):
        c = fac.glue
        if c is None or not c.in_graph(acc):
            raise InvalidOrder(f"glue square of factor {j} is not in the union of factors 1..{j - 1}")
        if not c.in_graph(fac.graph):
            raise InvalidOrder(f"glue square of factor {j} is not a square of that factor")
        acc = union(acc, fac.graph)
    return acc


# recognition


@dataclass(frozen=True)
class Cell:
    """Vertex set of one factor: a forest star, or the level-0 slice."""

    vertices: frozenset[int]
    square: Square | None
    stage: int


@dataclass
class Recognition:
    verdict: MedianVerdict
    embedding: Embedding | None = None
    squares: list[Square] = field(default_factory=list)
    forest: NestingForest | None = None
    cells: list[Cell] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)


def forest_cells(g: Graph, forest: NestingForest) -> list[Cell]:
    """Factor vertex sets in output order: level-0 slice (if needed), then stars by stage."""
    nodes = forest.nodes
    kids = forest.children
    cells: list[Cell] = []
    roots = forest.roots
    if len(roots) > 1:
        vs: set[int] = set()
        for r in roots:
            vs.update(nodes[r].vertices())
        cells.append(Cell(frozenset(vs), None, 0))
    stars: list[tuple[int, int, Cell]] = []
    for nd in forest.squares:
        ch = kids.get(nd.id)
        if not ch:
            continue
        vs = set(nd.square.vertices)
        for c in ch:
            vs.update(nodes[c].vertices())
        stars.append((nd.level + 1, min(vs), Cell(frozenset(vs), nd.square, nd.level + 1)))
    stars.sort(key=lambda t: (t[0], t[1], t[2].square.key))
    cells.extend(c for _, _, c in stars)
    return cells


def _cell_verdict(h: Graph, cell_check: str) -> MedianVerdict:
    if cell_check == "auto" and is_cube(h):
        return MedianVerdict(True)
    if cell_check == "oracle" or (cell_check == "auto" and h.n <= CELL_ORACLE_LIMIT):
        return is_median_oracle(h)
    return _characterize(h, None, (4, 6))


def _global_witness(g: Graph, fallback: Witness | None, cell: Cell | None = None) -> MedianVerdict:
    # cell-level witnesses live in a subgraph; re-derive one valid for g when affordable
    if g.n <= TABLE_LIMIT:
        v = _characterize(g, None, (4, 6))
        if v.is_median:
            raise AssertionError("certificate rejected a graph the characterization accepts")
        return v
    detail = dict(fallback.detail) if fallback else {}
    if cell is not None:
        detail["cell"] = sorted(cell.vertices)
    kind = fallback.kind if fallback else Violation.TRIPLE
    return MedianVerdict(False, Witness(kind, fallback.vertices if fallback else (), fallback.edges if fallback else (), detail))


def recognize(g: Graph, embedding: Embedding | None = None, cell_check: str = "auto", method: str = "sweep") -> Recognition:
    """Planar median recognition through the nesting forest.

    G is median iff it is connected, bipartite, K_{2,3}-free, its squares
    nest, and the subgraph induced by every forest star (and by the level-0
    slice) is median; each of these pieces is a repeated inside/outside
    split of G. Raises NotPlanar.
    """
    times: dict[str, float] = {}
    t0 = time.perf_counter()
    if embedding is None:
        e = planar_embed(g)
    else:
        if embedding.host != g:
            raise GraphError("embedding belongs to a different graph")
        e = embedding
    t1 = time.perf_counter()
    times["planarity"] = (t1 - t0) * 1000
    rec = Recognition(MedianVerdict(True), e, timings=times)

    def done(verdict: MedianVerdict) -> Recognition:
        times["median"] = (time.perf_counter() - t1) * 1000 - times.get("forest", 0.0)
        rec.verdict = verdict
        return rec

    if g.n == 0:
        return done(MedianVerdict(False, Witness(Violation.DISCONNECTED, ())))
    if not is_connected(g):
        comps = components(g)
        return done(MedianVerdict(False, Witness(Violation.DISCONNECTED, (comps[0][0], comps[1][0]))))
    if two_colouring(g) is None:
        return done(MedianVerdict(False, _cycle_witness(Violation.BAD_ISOMETRIC_CYCLE, shortest_odd_cycle(g))))
    squares, k23 = squares_if_k23_free(g)
    if k23 is not None:
        a, b, mids = k23
        edges = tuple(sorted((min(p, x), max(p, x)) for p in (a, b) for x in mids))
        return done(MedianVerdict(False, Witness(Violation.HAS_K23, (a, b, *mids), edges)))
    rec.squares = squares
    if not squares:
        if is_tree(g):
            return done(MedianVerdict(True))
        cyc = shortest_cycle(g)
        kind = Violation.NOT_C6_Q3_INFERRING if len(cyc) == 6 else Violation.BAD_ISOMETRIC_CYCLE
        return done(MedianVerdict(False, _cycle_witness(kind, cyc)))
    tf = time.perf_counter()
    try:
        forest = nesting_forest(g, e, squares, method=method)
    except StraddleError:
        times["forest"] = (time.perf_counter() - tf) * 1000
        return done(_global_witness(g, None))
    times["forest"] = (time.perf_counter() - tf) * 1000
    rec.forest = forest
    rec.cells = forest_cells(g, forest)
    for cell in rec.cells:
        v = _cell_verdict(induced_subgraph(g, cell.vertices), cell_check)
        if not v.is_median:
            return done(_global_witness(g, v.witness, cell))
    return done(MedianVerdict(True))


def decompose(
    g: Graph,
    *,
    embedding: Embedding | None = None,
    strict: bool = False,
    cell_check: str = "auto",
    method: str = "sweep",
    recognition: Recognition | None = None,
) -> Factorization:
    """Ordered decomposition of a planar median graph into basic QS-graphs.

    Trees and single squares come back as one degenerate factor. Raises
    NotPlanar or NotMedian (with a witness). With strict=True every factor
    is re-checked with the full basic-QS recognizer.
    """
    rec = recognition or recognize(g, embedding, cell_check, method)
    if not rec.verdict.is_median:
        raise NotMedian(rec.verdict)
    t0 = time.perf_counter()
    if is_tree(g):
        return Factorization(g, (Factor(g, "tree"),), degenerate=True)
    if g.n == 4 and g.m == 4:
        return Factorization(g, (Factor(g, "square"),), degenerate=True)
    factors = []
    for j, cell in enumerate(rec.cells):
        h = induced_subgraph(g, cell.vertices)
        kind = "cube" if is_cube(h) else "square_graph"
        if strict:
            got = is_basic_qs(h)
            if got is BasicKind.NO:
                raise AssertionError(f"factor {j + 1} is not a basic QS-graph")
            kind = got.value
        factors.append(Factor(h, kind, None if j == 0 else cell.square))
    rec.timings["decomposition"] = (time.perf_counter() - t0) * 1000
    return Factorization(g, tuple(factors))


def merge_factorizations(g: Graph, e: Embedding, c: Square, f_in: Factorization, f_out: Factorization) -> Factorization:
    """Combine factorizations of G_in(c) and G_out(c) into one of g.

    The half whose first factor contains c goes second, with c as the glue
    square of that first factor; a half equal to c itself is dropped as the
    unit element.
    """
    g_in, g_out = split_at_square(e, c)
    if f_in.host != g_in or f_out.host != g_out:
        raise FactorizationError("factorizations do not match the split at the square")
    if not (c.in_graph(f_in.host) and c.in_graph(f_out.host)):
        raise FactorizationError("square is not shared by both halves")
    unit = lambda f: f.host.n == 4 and f.host.m == 4  # noqa: E731
    if unit(f_in):
        return Factorization(g, f_out.factors, f_out.degenerate)
    if unit(f_out):
        return Factorization(g, f_in.factors, f_in.degenerate)
    on = set(c.vertices)
    if on <= set(f_out.factors[0].graph.vertices):
        first, second = f_in, f_out
    elif on <= set(f_in.factors[0].graph.vertices):
        first, second = f_out, f_in
    else:
        raise FactorizationError("neither half starts with a factor containing the square")
    head = second.factors[0]
    factors = first.factors + (Factor(head.graph, head.kind, c),) + second.factors[1:]
    merged = Factorization(g, factors)
    merged.validate(check_basic=False)
    return merged


def split_and_merge(g: Graph, e: Embedding, c: Square) -> Factorization:
    """Decompose both halves of g at c under the induced embeddings, then merge."""
    e_in, e_out = split_embeddings(e, c)
    f_in = decompose(e_in.host, embedding=e_in)
    f_out = decompose(e_out.host, embedding=e_out)
    return merge_factorizations(g, e, c, f_in, f_out)


def splittable_factors(f: Factorization) -> list[tuple[int, Square]]:
    """Experimental: factors that split at some square under some outer face.

    For each factor, every face is tried as the outer face and every square
    is tested for a split with both halves proper. No uniqueness claim is
    attached to the result.
    """
    from .embedding import reroot_outer, side_map

    out = []
    for j, fac in enumerate(f.factors):
        h = fac.graph
        try:
            e = planar_embed(h)
        except NotPlanar:
            continue
        hit = None
        sqs = squares_if_k23_free(h)[0] or []
        for face in e.faces:
            er = reroot_outer(e, face.id)
            for s in sqs:
                sm = side_map(er, s)
                if sm.inside() and sm.outside():
                    hit = s
                    break
            if hit:
                break
        if hit:
            out.append((j, hit))
    return out
