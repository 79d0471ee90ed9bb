import json
from pathlib import Path

import pytest

from qcivar.cli import main
from qcivar.modules import random_module
from qcivar.algebra import AlgebraSpec

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_algebra_info(capsys):
    code, out = run(capsys, "algebra", "--c", "2", "--a", "3", "--p", "7")
    data = json.loads(out)
    assert code == 0 and (data["dim"], data["a_bar"], data["q"]) == (9, 3, 2)
    code, out = run(capsys, "algebra", "--c", "3", "--a", "2", "--p", "5")
    data = json.loads(out)
    assert (data["dim"], data["a_bar"], data["q"]) == (8, 2, 4)


def test_algebra_degenerate_a_bar(capsys):
    code, out = run(capsys, "algebra", "--c", "2", "--a", "2", "--p", "2")
    data = json.loads(out)
    assert code == 2 and data["clause"] == "a_bar>1" and "a/gcd(a,p)" in data["message"]


def test_variety_commands(capsys):
    code, out = run(capsys, "variety", "--module", "cyclic:1,1")
    assert code == 0 and json.loads(out)["points"] == [[1, 1]]
    code, out = run(capsys, "variety", "--module", "free:1")
    data = json.loads(out)
    assert data["points"] == [] and data["trivial"] is True
    code, out = run(capsys, "variety", "--module", "k")
    assert json.loads(out)["points"] == [[0, 1], [1, 0], [1, 1], [1, 6]]


def test_variety_from_file(capsys, tmp_path):
    m = random_module(AlgebraSpec.create(2, 3, 7), 8, 4)
    path = tmp_path / "m.json"
    path.write_text(m.to_json())
    code, out = run(capsys, "variety", "--module", f"file:{path}")
    assert code == 0 and json.loads(out)["dim"] == m.dim


@pytest.mark.parametrize("designator", ["bogus", "free:x", "cyclic:0,0", "cyclic:1", "file:/nonexistent.json"])
def test_bad_designator(capsys, designator):
    code, out = run(capsys, "variety", "--module", designator)
    assert code == 2 and json.loads(out)["error"] == "BadDesignator"


def test_resolve_commands(capsys):
    code, out = run(capsys, "resolve", "--module", "k", "--depth", "8")
    data = json.loads(out)
    assert data["betti"] == list(range(1, 10)) and data["complexity"] == 2
    code, out = run(capsys, "resolve", "--module", "free:1")
    data = json.loads(out)
    assert data["betti"] == [1] + [0] * 10 and data["complexity"] == 0
    code, out = run(capsys, "resolve", "--module", "cyclic:1,1", "--depth", "8")
    data = json.loads(out)
    assert data["betti"] == [1] * 9 and data["complexity"] == 1


def test_counterexample_command(capsys):
    code, out = run(capsys, "counterexample")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "PASS"
    assert data["counterexample"]["V_M"]["points"] == [[1, 1]]
    assert data["counterexample"]["V_BM"]["points"] == [[1, 6]]
    assert out == (GOLDEN / "counterexample_default.json").read_text()


def test_counterexample_errors(capsys):
    code, out = run(capsys, "counterexample", "--mu", "1,1")
    assert code == 2 and json.loads(out)["clause"] == "mu-generic"
    code, out = run(capsys, "counterexample", "--p", "11", "--a", "3")
    assert code == 2 and json.loads(out)["error"] == "FieldUnsuitable"


def test_counterexample_not_confirmed_exit_1(capsys):
    code, out = run(capsys, "counterexample", "--lambda", "1,0")
    assert code == 1 and json.loads(out)["verdict"] == "FAIL"


def test_suite_command(capsys):
    code, out = run(capsys, "suite", "--cases", "10", "--seed", "3")
    assert code == 0 and json.loads(out)["passed"]
    code, out = run(capsys, "suite", "--cases", "10", "--fault", "rank-threshold")
    assert code == 1


def test_table_and_output_file(capsys, tmp_path):
    code, out = run(capsys, "counterexample", "--format", "table")
    assert code == 0 and "verdict" in out and "PASS" in out
    target = tmp_path / "rep.json"
    code, out = run(capsys, "variety", "--module", "k", "--output", str(target))
    assert out == "" and json.loads(target.read_text())["ambient"] == {"c": 2, "p": 7}


def test_byte_identical_reruns(capsys):
    for argv in (["counterexample"], ["suite", "--cases", "10", "--seed", "5"], ["resolve", "--module", "cyclic:1,2"]):
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second
