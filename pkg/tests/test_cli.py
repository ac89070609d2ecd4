import io
import json
import subprocess
import sys

import pytest

from tuttefourier.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_tutte_cycle():
    code, text = call("tutte", "--family", "cycle:3")
    assert code == 0
    assert json.loads(text) == {"coeffs": [[0, 1, "1"], [1, 0, "1"], [2, 0, "1"]]}


def test_tutte_methods_agree_and_evaluate():
    _, a = call("tutte", "--family", "k4", "--method", "dc", "--x", "1", "--y", "1")
    _, b = call("tutte", "--family", "k4", "--method", "subset", "--x", "1", "--y", "1")
    assert a == b and json.loads(a)["value"] == 16


def test_verify_alon_tarsi():
    code, text = call("verify", "alon-tarsi", "--family", "cycle:3", "--q", "3")
    rep = json.loads(text)
    assert code == 0 and rep["pass"] and rep["lhs"]["re"] == 6 and rep["rhs"]["re"] == 6


def test_size_guard_exit():
    code, text = call("expand", "--family", "cycle:99", "--q", "5", "--g", "1,-1,0,0,0", "--s", "1", "--t", "1")
    assert code == 2 and json.loads(text)["kind"] == "size-guard"


def test_input_errors(tmp_path):
    bad = tmp_path / "g.txt"
    bad.write_text("edge 0 1\n")
    assert call("stats", "--graph", str(bad))[0] == 1
    bad.write_text("vertices 2\nedge 0 7\n")
    code, text = call("stats", "--graph", str(bad))
    assert code == 1 and "line 2" in json.loads(text)["error"]
    assert call("stats")[0] == 1
    assert call("stats", "--family", "cycle:3", "--graph", str(bad))[0] == 1
    assert call("bogus")[0] == 1
    assert call("expand", "--family", "cycle:3", "--q", "3", "--g", "1,2")[0] == 1
    assert call("potts", "--family", "cycle:3", "--w", "1 + 2i", "--y", "1")[0] == 1


def test_graph_file(tmp_path):
    path = tmp_path / "k2.txt"
    path.write_text("# K2\nvertices 2\nedge 0 1\n")
    code, text = call("stats", "--graph", str(path))
    assert code == 0
    assert json.loads(text) == {"graph": "2:0-1", "vertices": 2, "edges": 1, "k": 1, "r": 1, "n": 0}


def test_verification_failure_exit():
    # a tolerance below zero makes every comparison fail
    code, text = call("verify", "tarsi", "--family", "cycle:3", "--q", "3", "--tol", "-1")
    assert code == 3 and json.loads(text)["pass"] is False


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv("TUTTEFOURIER_TOL", "-1")
    assert call("verify", "tarsi", "--family", "cycle:3", "--q", "3")[0] == 3


def test_flows_and_tensions():
    _, text = call("flows", "--family", "cycle:3", "--q", "2")
    assert json.loads(text)["vectors"] == [[0, 0, 0], [1, 1, 1]]
    _, text = call("flows", "--family", "cycle:3", "--q", "5", "--q1")
    assert json.loads(text)["count"] == 3
    _, text = call("tensions", "--family", "multiedge:1", "--q", "3")
    assert json.loads(text)["hamming"] == [2, 1]


def test_potts_and_probe():
    code, text = call("potts", "--family", "cycle:3", "--q", "3", "--w", "1", "--y", "0")
    out = json.loads(text)
    assert code == 0 and out["partition"]["re"] == 6 and out["closed"]["re"] == 6
    code, text = call("potts", "--family", "cycle:3", "--matrix", "1,2;3,1", "--probe", "4")
    out = json.loads(text)
    assert out["constant_diagonal"] is None
    assert out["probe"]["first_violation"].startswith("X_2^1")


def test_chromatic():
    _, text = call("chromatic", "--family", "k4", "--q", "4", "--y", "2")
    out = json.loads(text)
    assert out["value"] == 24


def test_expand_l2_coeff():
    _, text = call("expand", "--family", "multiedge:1", "--q", "3")
    assert json.loads(text)["l2_sq"] == 2
    _, text = call("l2", "--family", "cycle:3", "--q", "3")
    out = json.loads(text)
    assert abs(out["l2_sq"] - 6) < 1e-9 and out["tutte_evaluation"]["holds"]
    _, text = call("coeff", "--family", "cycle:3", "--q", "3", "--a", "1,1,1", "--kernel", "score")
    out = json.loads(text)
    assert out["direct"] == out["coset"]


def test_verify_variants():
    for argv in (
        ("verify", "prop-constant", "--family", "cycle:3", "--q", "3", "--y", "0", "--w", "1"),
        ("verify", "coeff-thm", "--family", "k4", "--q", "2", "--g", "0.5+1i,-2", "--s", "1", "--t", "0"),
        ("verify", "l2-thm", "--family", "cycle:3", "--q", "5", "--kernel", "score"),
        ("verify", "macwilliams", "--family", "multiedge:1", "--q", "3", "--g", "1,2,3"),
        ("verify", "penrose", "--family", "k4"),
        ("verify", "penrose", "--family", "prism:3"),
        ("verify", "corpus", "--max-vertices", "1", "--max-edges", "3"),
    ):
        code, text = call(*argv)
        assert code == 0, (argv, text)


def test_output_file(tmp_path):
    dest = tmp_path / "out.json"
    code, text = call("stats", "--family", "cycle:3", "--output", str(dest))
    assert code == 0 and text == ""
    assert json.loads(dest.read_text())["r"] == 2


def test_byte_determinism():
    argv = ("verify", "coeff-thm", "--family", "cycle:3", "--q", "3", "--g", "0.3-1i,2,1i", "--s", "2", "--t", "1")
    assert call(*argv) == call(*argv)
    argv = ("verify", "macwilliams", "--family", "k4", "--q", "3", "--seed", "5")
    assert call(*argv) == call(*argv)


@pytest.mark.parametrize("argv", [["stats", "--family", "cycle:3"]])
def test_module_entry_point(argv):
    proc = subprocess.run([sys.executable, "-m", "tuttefourier", *argv], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["k"] == 1
