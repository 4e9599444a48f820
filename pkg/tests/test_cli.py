import json

import pytest

from symstoch.cli import CACHE_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hstar(capsys):
    code, out, _ = run(capsys, "hstar", "--family", "S", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert data["hstar"] == [1, 7, 4] and data["d"] == 3


def test_points_csv(capsys):
    code, out, _ = run(capsys, "points", "--n", "3", "--upto", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["m,count", "0,1", "1,11", "2,42", "3,106"]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "points", "--n", "2", "--m", "1", "--enumerate")
    assert code == 0 and len(json.loads(out)["points"]) == 3


def test_gorenstein(capsys):
    code, out, _ = run(capsys, "gorenstein", "--n", "5")
    assert code == 0 and json.loads(out)["witness"] is None
    code, out, _ = run(capsys, "gorenstein", "--n", "4")
    assert json.loads(out)["index"] == 2


def test_decompose(tmp_path, capsys):
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"n": 3, "rows": [[1, 1, 2], [1, 1, 2], [2, 2, 0]]}))
    code, out, _ = run(capsys, "decompose", "--in", str(f))
    assert code == 0 and len(json.loads(out)["summands"]) == 2


@pytest.mark.parametrize("payload", ['{"n": 3, "rows": [[1, 2], [2]]}', "not json", '{"n": 2, "rows": [[1, 0], [0, 1]]}'])
def test_decompose_bad_input(tmp_path, capsys, payload):
    f = tmp_path / "x.json"
    f.write_text(payload)
    code, _, err = run(capsys, "decompose", "--in", str(f))
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "hstar", "--n", "0")[0] == 2
    assert run(capsys, "simplex", "--n", "5")[0] == 2
    assert run(capsys, "hstar", "--n", "3", "--format", "csv")[0] == 0
    assert run(capsys, "gorenstein", "--n", "3", "--format", "csv")[0] == 2


def test_resource_limit(capsys):
    code, _, err = run(capsys, "groebner", "--n", "4")
    assert code == 3 and json.loads(err)["error"] == "resource-limit"
    assert run(capsys, "groebner", "--n", "3", "--max-basis", "2")[0] == 3


def test_groebner_and_thm13(capsys):
    code, out, _ = run(capsys, "groebner", "--n", "2", "--convention", "LiteralDef32")
    assert code == 0 and len(json.loads(out)["elements"]) == 1
    code, out, _ = run(capsys, "verify-thm13", "--n", "3")
    assert code == 0 and json.loads(out)["p3_holds_for"] == ["ProofConsistent"]
    code, out, _ = run(capsys, "verify-thm13", "--n", "3", "--only", "--convention", "LiteralDef32")
    assert code == 1


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "4.2", "--n", "2")
    assert code == 0 and json.loads(out)["verdict"] == "counterexample"
    code, out, _ = run(capsys, "conjecture", "4.1b", "--n", "3", "--convention", "LiteralDef32")
    assert code == 0 and json.loads(out)["verdict"] == "holds-at-this-n"


def test_cache(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    first = run(capsys, "quasi", "--n", "3")
    assert len(list(tmp_path.iterdir())) == 1
    second = run(capsys, "quasi", "--n", "3")
    assert first == second and first[0] == 0
    run(capsys, "quasi", "--n", "4")
    assert len(list(tmp_path.iterdir())) == 2


def test_other_commands(capsys):
    for argv in (["simplex", "--n", "6"], ["vertices", "--n", "3"], ["hstar", "--family", "P", "--n", "4"],
                 ["hstar", "--family", "Sigma", "--n", "3"], ["quasi", "--n", "2"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and json.loads(out)
