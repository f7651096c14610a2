from __future__ import annotations

import io
import json

import pytest

from oddminor.cli import main
from oddminor.graph import Graph, to_graph6
from oddminor.sweep import generate, parse_range, process_graph, run_sweep, strip_timing

C5 = to_graph6(Graph.cycle(5))
C6 = to_graph6(Graph.cycle(6))
K4 = to_graph6(Graph.complete(4))


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_invariants(capsys, write):
    code, out = run(capsys, "invariants", "-i", write("c5.g6", C5))
    assert code == 0
    assert out == {"n": 5, "alpha": 2, "chi": 3, "omega": 2, "kappa": 2}
    code, out = run(capsys, "invariants", "-i", write("k4.g6", K4))
    assert out == {"n": 4, "alpha": 1, "chi": 4, "omega": 4, "kappa": 3}
    code, out = run(capsys, "invariants", "-i", write("c6.g6", C6))
    assert out["alpha"] == 3


def test_invariants_edge_list_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("5\n0 1\n1 2\n2 3\n3 4\n4 0\n"))
    code, out = run(capsys, "invariants", "-i", "-", "--format", "edges")
    assert code == 0 and out["chi"] == 3


def test_find_star(capsys, write):
    code, cert = run(capsys, "find", "-i", write("c5.g6", C5), "--pattern", "bipartite", "--ell", "1")
    assert code == 0
    assert cert["pattern"] == {"kind": "bipartite", "left": 1, "right": 2}
    assert [r["rule"] for r in cert["trace"]] == ["star"]
    assert cert["graph6"] == C5 and cert["special"] is True


def test_find_clique_and_verify_round_trip(capsys, write, tmp_path):
    graph = write("c5.g6", C5)
    cert_path = str(tmp_path / "cert.json")
    code, _ = run(capsys, "find", "-i", graph, "--pattern", "clique", "-o", cert_path)
    assert code == 0
    cert = json.loads(open(cert_path).read())
    assert cert["pattern"] == {"kind": "clique", "size": 3}
    assert cert["trace"][0]["rule"] == "cut-clique"
    code, out = run(capsys, "verify", "-i", graph, "-c", cert_path)
    assert code == 0 and out == {"ok": True, "violations": []}

    cert["colors"]["2"] = 1
    bad = write("bad.json", json.dumps(cert))
    code, out = run(capsys, "verify", "-i", graph, "-c", bad)
    assert code == 3
    assert "tree-edge-monochromatic" in {v["kind"] for v in out["violations"]}

    cert["branch_sets"][0]["vertices"] = [9]
    worse = write("worse.json", json.dumps(cert))
    code, out = run(capsys, "verify", "-i", graph, "-c", worse)
    assert code == 2 and out["reason"].startswith("schema")


def test_find_half_order(capsys, write):
    code, cert = run(capsys, "find", "-i", write("c5.g6", C5), "--pattern", "half-order", "--ell", "1")
    assert code == 0
    assert cert["pattern"]["kind"] == "bipartite_plus_clique"


def test_find_refuses_alpha3(capsys, write):
    code, out = run(capsys, "find", "-i", write("c6.g6", C6), "--pattern", "bipartite", "--ell", "1")
    assert code == 2
    assert out["error"] == "precondition" and out["reason"].startswith("alpha>2")


def test_find_bad_input(capsys, write):
    code, out = run(capsys, "find", "-i", write("junk.g6", "D!!"), "--ell", "1")
    assert code == 2
    code, out = run(capsys, "find", "-i", write("c5.g6", C5), "--pattern", "bipartite")
    assert code == 2


def test_oracle_command(capsys, write):
    graph = write("c5.g6", C5)
    code, out = run(capsys, "oracle", "-i", graph, "--pattern", "clique", "--size", "3")
    assert code == 0 and out["found"] is True
    code, out = run(capsys, "oracle", "-i", graph, "--pattern", "clique", "--size", "4")
    assert code == 1 and out["found"] is False
    code, out = run(capsys, "oracle", "-i", graph, "--pattern", "plus-clique", "--ell", "1", "--size", "3", "--special")
    assert code == 0


def test_sweep_exhaustive_n3(capsys, tmp_path):
    path = str(tmp_path / "r.json")
    code = main(["sweep", "--mode", "exhaustive", "--n", "3", "--oracle", "-o", path])
    assert code == 0
    report = json.loads(open(path).read())
    assert report["summary"]["graphs"] == 7
    assert report["summary"]["contradiction_events"] == 0
    assert report["summary"]["verified"] == report["summary"]["pairs"]


def test_sweep_stream(capsys, write, tmp_path):
    path = str(tmp_path / "r.json")
    stream = write("s.g6", "\n".join([C5, "D!!", to_graph6(Graph.complete(3))]) + "\n")
    code = main(["sweep", "--mode", "stream", "-i", stream, "-o", path])
    report = json.loads(open(path).read())
    assert code == 0
    assert report["summary"]["graphs"] == 1
    assert report["summary"]["stream_errors"] == 2


def test_sweep_exhaustive_guard(capsys):
    assert main(["sweep", "--mode", "exhaustive", "--n", "8"]) == 2


def test_sweep_random_deterministic():
    def once():
        graphs = generate("random", parse_range("9-10"), count=5, seed=3)
        return json.dumps(strip_timing(run_sweep(graphs, conjecture17=True)), sort_keys=True)

    assert once() == once()
    report = json.loads(once())
    assert report["summary"]["graphs"] == 10
    assert all("conjecture17" in r for r in report["records"])


def test_process_graph_isolates_failures():
    rec = process_graph("not graph6")
    assert "error" in rec
    rec = process_graph(C6)
    assert "alpha>2" in rec["error"]


def test_sweep_parallel_matches_serial():
    items = list(generate("random", [12], count=6, seed=1))
    a = strip_timing(run_sweep(items, jobs=1))
    b = strip_timing(run_sweep(items, jobs=2))
    assert a == b


def test_parse_range():
    assert list(parse_range("3-5")) == [3, 4, 5]
    assert list(parse_range("4")) == [4]
    with pytest.raises(ValueError):
        parse_range("5-3")
