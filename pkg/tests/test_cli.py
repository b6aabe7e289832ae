import json

import pytest

from quiverlab.cli import main
from quiverlab.fixtures import ALL
from quiverlab.matrix import IntMatrix
from quiverlab.quiver import Quiver


@pytest.fixture(scope="module")
def fx(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    assert main(["fixtures", str(d)]) == 0
    return d


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    try:
        return code, json.loads(out)
    except json.JSONDecodeError:
        return code, out


def test_fixtures_round_trip(fx):
    for name, q in ALL.items():
        loaded = Quiver.loads((fx / f"{name}.json").read_text())
        assert loaded == q
        assert Quiver.loads(loaded.dumps()) == loaded


def test_k0(capsys, fx):
    assert run(capsys, "k0", fx / "E.hat.json") == (0, {"freeRank": 6, "torsion": []})
    assert run(capsys, "k0", fx / "EPRIME.hat.json") == (0, {"freeRank": 8, "torsion": []})


def test_dim(capsys, fx):
    assert run(capsys, "dim", fx / "E.json", "--degree", 0) == (0, {"dim": 6})
    assert run(capsys, "dim", fx / "E.hat.json") == (0, {"dim": 30})
    assert run(capsys, "dim", fx / "E.json", "--cross") == (0, {"dim": 36})
    assert run(capsys, "dim", fx / "E.json", "--degree", 2, "--oracle")[0] == 0
    code, out = run(capsys, "dim", fx / "T.json")
    assert code == 3 and out["precondition"]


def test_gradediso(capsys, fx):
    code, out = run(capsys, "gradediso", fx / "HAZ1.hat.json", fx / "HAZ2.hat.json")
    assert code == 1 and out["gradedIso"] is False
    code, out = run(capsys, "gradediso", fx / "HAZ1.json", fx / "HAZ2.json")
    assert code == 0 and out["gradedIso"] is True
    assert run(capsys, "gradediso", fx / "E.json", fx / "E.json")[0] == 3


def test_quiver_outputs(capsys, fx, tmp_path):
    code, out = run(capsys, "kron", fx / "A2.json")
    assert code == 0 and len(out["vertices"]) == 4
    code, out = run(capsys, "kron", fx / "A2.json", fx / "LINE3.json")
    assert len(out["vertices"]) == 6
    part = tmp_path / "p.json"
    part.write_text(json.dumps({"v": [["f"], ["g"]], "w": [["h"]]}))
    code, out = run(capsys, "outsplit", fx / "E.json", "--partition", part)
    assert code == 0 and out["vertices"] == ["v1", "v2", "u", "w1"]
    code, out = run(capsys, "--dot", "kron", fx / "T.json")
    assert code == 0 and out.startswith("digraph")
    part.write_text(json.dumps({"v": [["f", "g"]]}))
    assert run(capsys, "outsplit", fx / "E.json", "--partition", part)[0] == 2


def test_structure_commands(capsys, fx):
    code, out = run(capsys, "decompose", fx / "CONV3.hat.json")
    assert code == 0 and sorted(s["size"] for s in out) == [1, 1, 1, 1, 5]
    code, out = run(capsys, "socle", fx / "T.hat.json")
    assert [s["size"] for s in out["summands"]] == ["inf"] * 3
    code, out = run(capsys, "gk", fx / "T.hat.json")
    assert out["gk"] == 2
    code, out = run(capsys, "gk", fx / "ROSE2.json")
    assert out["gk"] == "inf"
    code, out = run(capsys, "census", fx / "CONV3.hat.json")
    assert out["counts"]["isolated"] == 4
    code, out = run(capsys, "props", fx / "CONV3.hat.json")
    by_name = {p["predicate"]: p for p in out}
    assert by_name["downwardDirected"]["value"] is False and by_name["prime"]["value"] is False
    code, out = run(capsys, "conjecture", fx / "T.json")
    assert code == 0 and out["verdict"] == "StrongPass"
    code, out = run(capsys, "presentations", fx / "T.json")
    assert code == 0 and out["match"]
    code, out = run(capsys, "presentations", fx / "A2.json", "--text")
    assert "[e,e]* [e,e] = [v2,v2]" in out
    assert run(capsys, "validate", fx / "E.json") == (0, {"valid": True, "name": "E",
                                                          "vertices": 3, "edges": 3})


def test_shifteq(capsys, tmp_path):
    def mat(name, rows):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(IntMatrix.from_rows(rows).to_json()))
        return p

    a = mat("a", [[1, 1], [1, 1]])
    b = mat("b", [[2]])
    r = mat("r", [[1], [1]])
    s = mat("s", [[1, 1]])
    code, out = run(capsys, "shifteq", "--a", a, "--b", b, "--r", r, "--s", s, "--l", 1, "--lift")
    assert code == 0 and out["valid"] and out["liftedValid"]
    bad = mat("bad", [[2], [1]])
    code, out = run(capsys, "shifteq", "--a", a, "--b", b, "--r", bad, "--s", s)
    assert code == 1 and "A^l = RS" in out["failures"]
    code, _ = run(capsys, "shifteq", "--a", a, "--b", b, "--r", s, "--s", s)
    assert code == 2


def test_proptest(capsys, monkeypatch):
    code, out = run(capsys, "proptest", "--suite", "census", "--trials", 5, "--seed", 3)
    assert code == 0 and out["passes"] == 5 and out["seed"] == 3
    monkeypatch.setenv("QUIVERLAB_SEED", "41")
    code, out = run(capsys, "proptest", "--suite", "census", "--trials", 2)
    assert out["seed"] == 41
    assert run(capsys, "proptest", "--suite", "nope")[0] == 2
    monkeypatch.setenv("QUIVERLAB_SEED", "abc")
    assert run(capsys, "proptest", "--suite", "census")[0] == 2


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "k0", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "k0", bad)[0] == 2
    bad.write_text(json.dumps({"name": "x", "vertices": ["a"], "edges": [{"name": "e", "src": "a",
                                                                         "dst": "zz"}]}))
    assert run(capsys, "validate", bad)[0] == 2
    assert main(["frobnicate"]) == 2


def test_pretty_output(capsys, fx):
    assert main(["--pretty", "k0", str(fx / "E.hat.json")]) == 0
    assert "freeRank: 6" in capsys.readouterr().out


@pytest.mark.parametrize("cmd,fixture,code", [
    ("decompose", "T", 3), ("decompose", "E", 0), ("k0", "ROSE2", 0), ("socle", "ROSE2", 0),
    ("gk", "E", 0), ("conjecture", "E", 0), ("presentations", "E", 0), ("props", "T", 0),
])
def test_exit_code_matrix(capsys, fx, cmd, fixture, code):
    assert run(capsys, cmd, fx / f"{fixture}.json")[0] == code
