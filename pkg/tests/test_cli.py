from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from planarmedian import families
from planarmedian.cli import main
from planarmedian.io import write_edge_list


def _file(tmp_path, g, name="g.txt"):
    p = tmp_path / name
    p.write_text(write_edge_list(g))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_examples(tmp_path, capsys):
    code, out, _ = run(capsys, "check", _file(tmp_path, families.cycle(4)), "--json")
    assert code == 0 and json.loads(out)["result"]["median"] is True
    code, out, _ = run(capsys, "check", _file(tmp_path, families.complete_bipartite(2, 3)), "--json")
    assert code == 1 and json.loads(out)["result"]["witness"]["kind"] == "k23"
    code, out, _ = run(capsys, "check", _file(tmp_path, families.cycle(8)), "--json")
    w = json.loads(out)["result"]["witness"]
    assert code == 1 and w["kind"] == "iso_cycle" and len(w["vertices"]) == 8


def test_check_flags(tmp_path, capsys):
    cube = _file(tmp_path, families.cube())
    assert run(capsys, "check", cube, "--oracle")[0] == 0
    code, out, _ = run(capsys, "check", cube, "--cube-free")
    assert code == 1 and "length 6" in out
    assert run(capsys, "check", _file(tmp_path, families.grid(3, 3)), "--cube-free")[0] == 0


def test_exit_codes_for_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 3\n")
    assert run(capsys, "check", str(bad))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.txt"))[0] == 2
    code, out, _ = run(capsys, "check", _file(tmp_path, families.complete(5)), "--json")
    assert code == 3 and json.loads(out)["result"]["certificate"]
    assert run(capsys, "gen", "--factors", "0")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_decompose(tmp_path, capsys):
    code, out, _ = run(capsys, "decompose", _file(tmp_path, families.cube()), "--json", "--verify", "--forest")
    data = json.loads(out)["result"]
    assert code == 0 and len(data["factors"]) == 1 and data["factors"][0]["kind"] == "cube"
    assert data["verification"]["valid"] and "forest" in data
    code, out, _ = run(capsys, "decompose", _file(tmp_path, families.path(4)), "--json")
    data = json.loads(out)["result"]
    assert data["degenerate"] and data["factors"][0]["kind"] == "tree"
    code, out, _ = run(capsys, "decompose", _file(tmp_path, families.cycle(6)))
    assert code == 1 and "witness" in out


def test_gen_writes_files_deterministically(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run(capsys, "gen", "--seed", "7", "--factors", "5", "--out", str(a))[0] == 0
    assert run(capsys, "generate", "--seed", "7", "--factors", "5", "--out", str(b))[0] == 0
    for suffix in ("", ".factors.json", ".embedding.json"):
        assert (tmp_path / f"a.txt{suffix}").read_bytes() == (tmp_path / f"b.txt{suffix}").read_bytes()
    code, out, _ = run(capsys, "verify", str(a), f"{a}.factors.json", "--json")
    assert code == 0 and json.loads(out)["result"]["factorization"]["valid"]
    code, out, _ = run(capsys, "check", str(a))
    assert code == 0


def test_gen_k50_is_accepted(tmp_path, capsys):
    p = tmp_path / "big.txt"
    run(capsys, "gen", "--seed", "1", "--factors", "50", "--out", str(p))
    assert run(capsys, "check", str(p))[0] == 0


def test_gen_pipe_decompose_verify(monkeypatch, capsys):
    for seed in range(100):
        code, out, _ = run(capsys, "gen", "--seed", str(seed), "--factors", str(1 + seed % 12))
        assert code == 0
        monkeypatch.setattr(sys, "stdin", io.StringIO(out))
        code, out, _ = run(capsys, "decompose", "-", "--verify", "--json")
        assert code == 0, out
        assert json.loads(out)["result"]["verification"]["recompose_equal"]


def test_hull(tmp_path, capsys):
    c6 = _file(tmp_path, families.cycle(6))
    code, out, _ = run(capsys, "hull", c6, "0", "3", "--json")
    assert code == 0 and len(json.loads(out)["result"]["vertices"]) == 6
    code, out, _ = run(capsys, "hull", _file(tmp_path, families.cube()), "1", "3", "2", "6", "4", "5", "--json")
    assert len(json.loads(out)["result"]["vertices"]) == 8
    code, out, _ = run(capsys, "hull", c6, "2", "--json")
    assert json.loads(out)["result"]["vertices"] == [2]
    assert run(capsys, "hull", c6, "77")[0] == 2


@pytest.mark.parametrize(
    "g, squares, face_squares",
    [(families.cube(), 6, 6), (families.domino(), 2, 2), (families.path(5), 0, 0)],
)
def test_stats(tmp_path, capsys, g, squares, face_squares):
    code, out, _ = run(capsys, "stats", _file(tmp_path, g), "--json")
    res = json.loads(out)["result"]
    assert code == 0 and res["squares"] == squares and res["face_squares"] == face_squares
    assert "planarity" in json.loads(out)["timings_ms"]


def test_named_vertices(tmp_path, capsys):
    p = tmp_path / "named.txt"
    p.write_text("a b\nb c\nc d\nd a\n")
    code, out, _ = run(capsys, "hull", str(p), "a", "c")
    assert code == 0 and "a b" in out


def test_module_entry_point(tmp_path):
    p = _file(tmp_path, families.cycle(4))
    out = subprocess.run([sys.executable, "-m", "planarmedian", "check", p], capture_output=True, text=True)
    assert out.returncode == 0 and "median: yes" in out.stdout
