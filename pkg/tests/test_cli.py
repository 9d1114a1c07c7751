import json
import subprocess
import sys

import pytest

from matchgeo import graphs as G, io
from matchgeo.cli import main


@pytest.fixture
def files(tmp_path):
    circ = tmp_path / "c.txt"
    circ.write_text("qubits 2\nH 0\nCZ 0 1\nRZ 1 0.25\n")
    graph = tmp_path / "g.json"
    graph.write_text(io.dumps_graph(G.star(6)))
    return tmp_path, circ, graph


def run(*args):
    return main([str(a) for a in args])


def test_compile_then_verify(files, capsys):
    d, circ, graph = files
    out = d / "s.txt"
    assert run("compile", "--circuit", circ, "--graph", graph, "--out", out) == 0
    assert "strategy: ChainCenterShuttle" in capsys.readouterr().out
    assert run("verify", "--circuit", circ, "--schedule", out) == 0
    assert "verdict: PASS" in capsys.readouterr().out


def test_named_strategy_and_compile_failure(files):
    d, circ, graph = files
    assert run("compile", "--circuit", circ, "--graph", graph, "--out", d / "s.txt",
               "--strategy", "WheelHub") == 3
    chain = d / "chain.json"
    chain.write_text(io.dumps_graph(G.chain(8)))
    three = d / "c3.txt"
    three.write_text("qubits 3\nH 0\n")
    assert run("compile", "--circuit", three, "--graph", chain, "--out", d / "s.txt") == 3


def test_parse_errors(files):
    d, circ, graph = files
    bad = d / "bad.txt"
    bad.write_text("qubits 2\nH 9\n")
    assert run("compile", "--circuit", bad, "--graph", graph, "--out", d / "s.txt") == 2
    assert run("compile", "--circuit", d / "missing.txt", "--graph", graph, "--out", d / "s.txt") == 2
    assert run("verify", "--circuit", circ, "--schedule", bad) == 2


def test_corrupted_schedule_fails_verification(files, capsys):
    d, circ, graph = files
    out = d / "s.txt"
    run("compile", "--circuit", circ, "--graph", graph, "--out", out)
    lines = out.read_text().splitlines()
    i = next(j for j, ln in enumerate(lines) if ln.startswith("G "))
    tok = lines[i].split()
    re_, im = tok[3].split(",")
    tok[3] = f"{float(re_) + 1e-2!r},{im}"
    lines[i] = " ".join(tok)
    out.write_text("\n".join(lines) + "\n")
    assert run("verify", "--circuit", circ, "--schedule", out) == 1
    assert run("verify", "--circuit", circ, "--schedule", out, "--tol", "1") == 0


def test_resource_limit(files, monkeypatch, capsys):
    d, circ, graph = files
    out = d / "s.txt"
    run("compile", "--circuit", circ, "--graph", graph, "--out", out)
    monkeypatch.setenv("MATCHGEO_MAX_QUBITS", "2")
    assert run("verify", "--circuit", circ, "--schedule", out) == 4
    assert "unverifiable at desk scale" in capsys.readouterr().err


def test_analyze(files, capsys):
    d, _, graph = files
    out = d / "certs.json"
    assert run("analyze", "--graph", graph, "--k", 2, "--out", out) == 0
    assert "AncillaConnectableSet" in capsys.readouterr().out
    assert json.loads(out.read_text())[0]["strategy"] == "StarHubBinaryTreeLeaves"
    assert run("analyze", "--graph", graph, "--k", 2, "--budget", 0) == 0
    assert "unknown (budget exhausted)" in capsys.readouterr().out
    assert run("analyze", "--graph", graph, "--k", 0) == 2


def test_module_entry_point(files):
    d, _, graph = files
    res = subprocess.run([sys.executable, "-m", "matchgeo", "analyze", "--graph", str(graph), "--k", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "AncillaConnectableSet" in res.stdout
