"""planarmedian command line: check, decompose, verify, gen, hull, stats.

Exit codes: 0 success, 1 negative result (non-median, failed verification),
2 bad input or usage, 3 non-planar input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .decompose import Factorization, FactorizationError, NotMedian, decompose, recognize, recompose
from .embedding import NotPlanar, planar_embed
from .generate import generate_qs
from .graph import TABLE_LIMIT, Graph, GraphError, is_connected
from .io import ParsedGraph, parse_edge_list, write_edge_list
from .metric import (
    ORACLE_SOFT_LIMIT,
    MedianVerdict,
    Violation,
    Witness,
    _characterize,
    convex_hull,
    face_square_count,
    is_median_oracle,
)
from .nesting import StraddleError, nesting_forest
from .squares import enumerate_squares, find_cube_from_squares, is_basic_qs, squares_if_k23_free

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_NONPLANAR = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    input_digest: str | None = None
    result: dict = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    exit_code: int = EXIT_OK
    text: str = ""

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_sha256": self.input_digest,
            "result": self.result,
            "timings_ms": {k: round(v, 3) for k, v in self.timings.items()},
            "exit_code": self.exit_code,
        }


class _Clock:
    def __init__(self, report: RunReport):
        self.report = report
        self.t = time.perf_counter()

    def lap(self, phase: str) -> None:
        now = time.perf_counter()
        self.report.timings[phase] = self.report.timings.get(phase, 0.0) + (now - self.t) * 1000
        self.t = now


class InputError(Exception):
    pass


def _read(path: str) -> tuple[ParsedGraph, str]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None
    digest = hashlib.sha256(text.encode()).hexdigest()
    try:
        return parse_edge_list(text), digest
    except GraphError as exc:
        raise InputError(str(exc)) from None


def _named(pg: ParsedGraph, payload: dict) -> dict:
    if pg.names:
        payload["names"] = {str(v): s for v, s in sorted(pg.names.items())}
    return payload


def _witness_text(pg: ParsedGraph, w: Witness | None) -> str:
    if w is None:
        return ""
    vs = " ".join(pg.name(v) for v in w.vertices)
    extra = f" length {w.detail['length']}" if "length" in w.detail else ""
    return f"witness {w.kind.value}{extra}: {vs}"


def _median_verdict(g: Graph, cube_free: bool, oracle: bool, clock: _Clock) -> tuple[MedianVerdict, str]:
    """Verdict via the brute-force oracle, the characterization, or the forest certificate."""
    if oracle:
        v = is_median_oracle(g)
        route = "oracle"
    elif g.n <= TABLE_LIMIT:
        v = _characterize(g, None, (4,) if cube_free else (4, 6))
        route = "characterization"
    else:
        rec = recognize(g)
        v = rec.verdict
        route = "forest"
        if cube_free and v.is_median:
            hit = find_cube_from_squares(g, rec.squares)
            if hit is not None:
                v = MedianVerdict(False, _cube_cycle(hit.vertices))
    if oracle and cube_free and v.is_median:
        squares = squares_if_k23_free(g)[0] or []
        hit = find_cube_from_squares(g, squares)
        if hit is not None:
            v = MedianVerdict(False, _cube_cycle(hit.vertices))
    clock.lap("median")
    return v, route


def _cube_cycle(cube: tuple[int, ...]) -> Witness:
    # isometric 6-cycle of a cube: 1 3 2 6 4 5 in bit-pattern labels
    cyc = tuple(cube[i] for i in (1, 3, 2, 6, 4, 5))
    edges = tuple(sorted((min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])))
    return Witness(Violation.BAD_ISOMETRIC_CYCLE, cyc, edges, {"length": 6})


# commands


def cmd_check(args) -> RunReport:
    rep = RunReport("check")
    clock = _Clock(rep)
    pg, rep.input_digest = _read(args.path)
    g = pg.graph
    clock.lap("parse")
    planar_embed(g)
    clock.lap("planarity")
    v, route = _median_verdict(g, args.cube_free, args.oracle, clock)
    rep.result = _named(pg, {"n": g.n, "m": g.m, "route": route, "cube_free": args.cube_free, **v.to_json()})
    label = "cube-free median" if args.cube_free else "median"
    rep.text = f"{label}: {'yes' if v.is_median else 'no'}"
    if v.witness is not None:
        rep.text += "\n" + _witness_text(pg, v.witness)
    rep.exit_code = EXIT_OK if v.is_median else EXIT_NO
    return rep


def _verify_factorization(f: Factorization) -> dict:
    out = {"recompose_equal": False, "valid": False, "problems": []}
    try:
        out["recompose_equal"] = recompose(f) == f.host
        f.validate(check_basic=True)
        out["valid"] = True
    except FactorizationError as exc:
        out["problems"].append(str(exc))
    out["kinds"] = [is_basic_qs(x.graph).value if not f.degenerate else x.kind for x in f.factors]
    return out


def cmd_decompose(args) -> RunReport:
    rep = RunReport("decompose")
    clock = _Clock(rep)
    pg, rep.input_digest = _read(args.path)
    g = pg.graph
    clock.lap("parse")
    rec = recognize(g)
    rep.timings.update(rec.timings)
    clock.t = time.perf_counter()
    try:
        f = decompose(g, recognition=rec)
    except NotMedian as exc:
        rep.result = _named(pg, exc.verdict.to_json())
        rep.text = "rejected: not a median graph\n" + _witness_text(pg, exc.verdict.witness)
        rep.exit_code = EXIT_NO
        return rep
    rep.timings["decomposition"] = rec.timings.get("decomposition", 0.0)
    rep.result = _named(pg, f.to_json())
    lines = [f"{len(f)} factor(s){' (degenerate)' if f.degenerate else ''}"]
    for j, fac in enumerate(f.factors, start=1):
        glue = " ".join(pg.name(v) for v in fac.glue.vertices) if fac.glue else "-"
        lines.append(f"  {j}: {fac.kind} n={fac.graph.n} m={fac.graph.m} glue={glue}")
    if args.verify:
        t = time.perf_counter()
        check = _verify_factorization(f)
        rep.timings["verify"] = (time.perf_counter() - t) * 1000
        rep.result["verification"] = check
        ok = check["recompose_equal"] and check["valid"]
        lines.append("verified: " + ("ok" if ok else "FAILED " + "; ".join(check["problems"])))
        if not ok:
            rep.exit_code = EXIT_NO
    if args.forest and rec.forest is not None:
        rep.result["forest"] = rec.forest.to_json()
        lines.append(rec.forest.to_dot().rstrip())
    rep.text = "\n".join(lines)
    return rep


def cmd_verify(args) -> RunReport:
    """Cross-check every available route on one graph, plus an optional factorization file."""
    rep = RunReport("verify")
    clock = _Clock(rep)
    pg, rep.input_digest = _read(args.path)
    g = pg.graph
    clock.lap("parse")
    rec = recognize(g)
    rep.timings.update(rec.timings)
    clock.t = time.perf_counter()
    verdicts = {"forest": rec.verdict}
    if g.n <= TABLE_LIMIT:
        verdicts["characterization"] = _characterize(g, None, (4, 6))
    if g.n <= ORACLE_SOFT_LIMIT or args.oracle:
        verdicts["oracle"] = is_median_oracle(g)
    clock.lap("verify")
    answers = {k: v.is_median for k, v in verdicts.items()}
    witnesses_ok = all(v.witness.verify(g) for v in verdicts.values() if v.witness is not None)
    agree = len(set(answers.values())) == 1
    rep.result = {"median": answers, "agree": agree, "witnesses_verified": witnesses_ok}
    lines = [f"{k}: {'median' if a else 'not median'}" for k, a in answers.items()]
    ok = agree and witnesses_ok
    if args.factorization:
        try:
            data = json.loads(Path(args.factorization).read_text())
            f = Factorization.from_json(data, g)
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"cannot read factorization: {exc}") from None
        check = _verify_factorization(f)
        rep.result["factorization"] = check
        ok = ok and check["recompose_equal"] and check["valid"]
        lines.append(f"factorization: {'ok' if check['valid'] else '; '.join(check['problems'])}")
    lines.append("agreement: " + ("ok" if ok else "FAILED"))
    rep.text = "\n".join(lines)
    rep.exit_code = EXIT_OK if ok else EXIT_NO
    return rep


def cmd_gen(args) -> RunReport:
    rep = RunReport("gen")
    clock = _Clock(rep)
    if args.factors < 1:
        raise InputError("--factors must be at least 1")
    inst = generate_qs(args.seed, args.factors, max_n=args.max_n)
    clock.lap("generate")
    g = inst.graph
    edges = write_edge_list(g)
    rep.input_digest = None
    fac = inst.factorization.to_json()
    emb = inst.embedding.to_json()
    if args.out:
        out = Path(args.out)
        out.write_text(edges)
        Path(f"{out}.factors.json").write_text(json.dumps(fac, sort_keys=True, indent=1) + "\n")
        Path(f"{out}.embedding.json").write_text(json.dumps(emb, sort_keys=True) + "\n")
        rep.result = {"n": g.n, "m": g.m, "factors": len(inst.factorization), "files": [str(out), f"{out}.factors.json", f"{out}.embedding.json"]}
        rep.text = f"wrote {out} (n={g.n}, m={g.m}, {len(inst.factorization)} factors)"
    else:
        rep.result = {"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges()], "factorization": fac, "embedding": emb}
        rep.text = edges.rstrip("\n")
    return rep


def cmd_hull(args) -> RunReport:
    rep = RunReport("hull")
    clock = _Clock(rep)
    pg, rep.input_digest = _read(args.path)
    g = pg.graph
    clock.lap("parse")
    try:
        seed = [pg.lookup(t) for t in args.vertices]
        for v in seed:
            if v not in g:
                raise GraphError(f"unknown vertex {pg.name(v)}")
        h = convex_hull(g, None, seed)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    clock.lap("hull")
    rep.result = _named(pg, {"vertices": list(h.vertices), "edges": [list(e) for e in h.edges()]})
    rep.text = write_edge_list(h, pg.names).rstrip("\n")
    return rep


def cmd_stats(args) -> RunReport:
    rep = RunReport("stats")
    clock = _Clock(rep)
    pg, rep.input_digest = _read(args.path)
    g = pg.graph
    clock.lap("parse")
    e = planar_embed(g)
    clock.lap("planarity")
    squares = enumerate_squares(g)
    clock.lap("squares")
    depth = None
    if squares and is_connected(g) and squares_if_k23_free(g)[1] is None:
        try:
            depth = nesting_forest(g, e, squares).depth
        except StraddleError:
            depth = None
    elif not squares and is_connected(g):
        depth = -1
    clock.lap("forest")
    rep.result = {
        "n": g.n,
        "m": g.m,
        "squares": len(squares),
        "face_squares": face_square_count(e),
        "faces": len(e.faces),
        "forest_depth": depth,
    }
    rep.text = "\n".join(f"{k}: {v}" for k, v in rep.result.items())
    return rep


# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON run report")
    p = argparse.ArgumentParser(prog="planarmedian", description="Planar median graph recognition and decomposition.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="decide whether a graph is a planar median graph")
    c.add_argument("path", help="edge-list file, or - for stdin")
    c.add_argument("--oracle", action="store_true", help="use the brute-force median definition")
    c.add_argument("--cube-free", action="store_true", help="test for a cube-free median graph")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("decompose", parents=[common], help="ordered decomposition into basic QS-graphs")
    d.add_argument("path")
    d.add_argument("--verify", action="store_true", help="recompose and re-check every factor")
    d.add_argument("--forest", action="store_true", help="also emit the nesting forest")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", parents=[common], help="cross-check recognition routes")
    v.add_argument("path")
    v.add_argument("factorization", nargs="?", help="factorization JSON to validate against the graph")
    v.add_argument("--oracle", action="store_true", help="run the oracle even on large graphs")
    v.set_defaults(func=cmd_verify)

    gsub = sub.add_parser("gen", aliases=["generate"], parents=[common], help="random QS-graph")
    gsub.add_argument("--seed", type=int, default=0)
    gsub.add_argument("--factors", type=int, default=5, help="number of glued pieces")
    gsub.add_argument("--max-n", type=int, default=None, help="stop once this many vertices exist")
    gsub.add_argument("--out", help="write PATH, PATH.factors.json, PATH.embedding.json")
    gsub.set_defaults(func=cmd_gen)

    h = sub.add_parser("hull", parents=[common], help="convex hull of a vertex set")
    h.add_argument("path")
    h.add_argument("vertices", nargs="+")
    h.set_defaults(func=cmd_hull)

    s = sub.add_parser("stats", parents=[common], help="size, square and forest statistics")
    s.add_argument("path")
    s.set_defaults(func=cmd_stats)
    return p


def _emit(rep: RunReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rep.to_json(), sort_keys=True))
    elif rep.text:
        print(rep.text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    as_json = getattr(args, "json", False)
    try:
        rep = args.func(args)
    except InputError as exc:
        rep = RunReport(args.command, result={"error": str(exc)}, exit_code=EXIT_INPUT, text=f"error: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        if as_json:
            _emit(rep, True)
        return EXIT_INPUT
    except NotPlanar as exc:
        cert = exc.certificate
        payload = {"error": "not planar", "certificate": [list(e) for e in cert.edges()] if cert is not None else None}
        rep = RunReport(args.command, result=payload, exit_code=EXIT_NONPLANAR, text="not planar")
        if as_json:
            _emit(rep, True)
        else:
            print("not planar", file=sys.stderr)
        return EXIT_NONPLANAR
    _emit(rep, as_json)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
