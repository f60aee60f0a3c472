import json
import subprocess
import sys

import pytest

from downposet.cli import run
from downposet.docs import emit_dot, parse_action, parse_poset, set_model_to_doc
from downposet.errors import UnknownElementError
from downposet.fixtures import chain, fig1, fig1_model, fig2_v


def _run(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


def test_parse_poset():
    assert parse_poset('{"elements":["c","d","e"],"covers":[["c","e"],["d","e"]]}') == fig2_v()
    assert len(parse_poset('{"elements":["a"],"covers":[]}')) == 1
    with pytest.raises(UnknownElementError, match="zz"):
        parse_poset('{"elements":["e"],"covers":[["e","zz"]]}')


def test_emit_dot():
    one = emit_dot(parse_poset('{"elements":["a"],"covers":[]}'))
    assert one.count("->") == 0 and '"a";' in one
    assert emit_dot(chain(2)).count("->") == 1
    dot = emit_dot(fig1())
    assert dot.count("->") == 6 and "rankdir=BT" in dot


def test_check_exit_codes(capsys):
    code, out = _run(capsys, "check", "--fixture", "fig1", "--format", "structured")
    assert code == 0 and json.loads(out)["is_down_poset"]
    code, out = _run(capsys, "check", "--fixture", "fig2_v", "--format", "structured")
    doc = json.loads(out)
    assert code == 1 and doc["failing_pair"] == ["c", "e"] and doc["trace"]["steps"]


def test_solve(capsys):
    code, out = _run(capsys, "solve", "--fixture", "fig1", "--from", "f", "--to", "d", "--format", "structured")
    assert code == 0 and json.loads(out)["map"]["f"] == "d"
    code, _ = _run(capsys, "solve", "--fixture", "fig1", "--from", "f", "--to", "g")
    assert code == 2


def test_usage_errors(capsys, tmp_path):
    assert run(["check"]) == 2
    assert run(["check", "--fixture", "nope"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements":["a","b"],"covers":[["a","b"],["b","a"]]}')
    assert run(["check", str(bad)]) == 2
    assert run(["frobnicate"]) == 2
    capsys.readouterr()


def test_verify_roundtrip(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    assert run(["check", "--fixture", "fig1", "--format", "structured", "-o", str(cert)]) == 0
    code, out = _run(capsys, "verify", "--fixture", "fig1", "--certificate", str(cert), "--format", "structured")
    assert code == 0 and json.loads(out)["valid"]
    doc = json.loads(cert.read_text())
    doc["certificate"].pop()
    cert.write_text(json.dumps(doc))
    code, out = _run(capsys, "verify", "--fixture", "fig1", "--certificate", str(cert))
    assert code == 1 and out.startswith("INVALID")


def test_induce_from_documents(capsys, tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(set_model_to_doc(fig1_model())))
    code, out = _run(capsys, "induce", str(path), "--format", "structured")
    assert code == 0
    assert parse_poset(out) == fig1()
    table = {
        "elements": ["1", "z"], "identity": "1",
        "table": {"1": {"1": "1", "z": "z"}, "z": {"1": "z", "z": "z"}},
        "states": ["1", "z"],
        "action_table": {"1": {"1": "1", "z": "z"}, "z": {"1": "z", "z": "z"}},
    }
    path.write_text(json.dumps(table))
    assert parse_action(path.read_text()).semilattice.identity == "1"
    code, out = _run(capsys, "induce", str(path), "--format", "structured")
    assert json.loads(out)["covers"] == [["z", "1"]]


def test_represent_and_canonical(capsys):
    code, out = _run(capsys, "represent", "--fixture", "fig1", "--format", "structured")
    assert code == 0 and json.loads(out)["states"]["f"] == ["c", "d", "e", "f"]
    code, _ = _run(capsys, "represent", "--fixture", "fig2_v")
    assert code == 1
    code, out = _run(capsys, "canonical", "--fixture", "fig2_v", "--format", "structured")
    assert json.loads(out)["covers"] == []


def test_small_commands(capsys):
    code, out = _run(capsys, "enumerate", "--fixture", "chain_2", "--format", "structured")
    assert json.loads(out)["count"] == 2
    code, out = _run(capsys, "oracle", "--fixture", "fig2_v", "--format", "structured")
    assert code == 1 and json.loads(out)["down_function_count"] == 1
    code, out = _run(capsys, "sweep", "--n", "3", "--format", "structured")
    assert code == 0 and json.loads(out)["results"][0]["posets"] == 19
    code, out = _run(capsys, "random", "--n", "4", "--density", "1", "--seed", "2", "--format", "structured")
    assert parse_poset(out) == chain(4)
    code, out = _run(capsys, "bench", "--sizes", "8", "--densities", "0.3", "--format", "structured")
    assert json.loads(out)["rows"][0]["n"] == 8
    code, out = _run(capsys, "check", "--fixture", "fig2_v", "--format", "dot")
    assert "color=red" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "downposet", "check", "--fixture", "fig3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1 and "sends i to h" in proc.stdout
