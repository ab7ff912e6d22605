import json

import pytest

from ordsys.cli import main
from ordsys.lss import FiniteLSS


@pytest.fixture
def files(tmp_path):
    def write(name, S):
        p = tmp_path / name
        p.write_text(json.dumps(S.to_json()))
        return str(p)
    return {
        "clock": write("clock12.json", FiniteLSS.clock(12)),
        "empty": write("empty.json", FiniteLSS([], {})),
        "peano": write("peano6.json", FiniteLSS.peano_window(6)),
        "bad": write("bad.json", FiniteLSS([0], {})).replace("bad.json", "missing.json"),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_closure_of_empty_system(capsys, files):
    assert run(capsys, "closure", files["empty"], "[]")[:2] == (0, "[]\n")


def test_closure_on_peano(capsys, files):
    code, out, _ = run(capsys, "closure", files["peano"], "[3]", "--json")
    assert code == 0 and json.loads(out)["closure"] == [0, 1, 2, 3]


def test_check_counting_exit_codes(capsys, files):
    assert run(capsys, "check-counting", files["clock"])[0] == 1
    assert run(capsys, "check-counting", files["peano"])[0] == 0


def test_initial_morphism_at_omega(capsys, files):
    code, out, _ = run(capsys, "initial-morphism", files["clock"], "w+3")
    assert code == 0 and "f(w) = 0" in out and "f(w+3) = 3" in out
    code, out, _ = run(capsys, "initial-morphism", files["clock"], "13", "--json")
    assert code == 0 and json.loads(out)["morphism"]["map"][-2:] == [0, 1]


def test_bad_inputs_exit_2(capsys, files, tmp_path):
    assert run(capsys, "closure", files["bad"], "[]")[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{")
    assert run(capsys, "check-counting", str(junk))[0] == 2
    assert run(capsys, "closure", files["peano"], "[9]")[0] == 2
    assert run(capsys, "check-ordinal", "weird:3")[0] == 2
    assert run(capsys, "search", "C1 C2")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2


def test_check_ordinal(capsys):
    assert run(capsys, "check-ordinal", "cnf:w*2+3")[0] == 0
    assert run(capsys, "check-ordinal", "cnf:w", "--universe", "FIN")[0] == 1
    assert run(capsys, "check-ordinal", "chain:5")[0] == 1
    code, out, _ = run(capsys, "check-ordinal", "nat:6", "--json")
    assert code == 0 and json.loads(out)["subject"].startswith("ordinal")


def test_spo_and_dot(capsys, files):
    dot = files["dir"] / "spo.dot"
    assert run(capsys, "spo", files["peano"], "--dot", str(dot))[0] == 0
    assert dot.read_text().startswith("digraph")
    assert run(capsys, "spo", files["clock"])[0] == 1


def test_recursion_uniqueness_peano(capsys, files):
    code, out, _ = run(capsys, "recursion", "cnf:w*2", files["clock"], "w+1")
    assert code == 0 and "f(w+1) = 1" in out
    assert run(capsys, "uniqueness", files["clock"], "5")[0] == 0
    assert run(capsys, "uniqueness", files["clock"], "5", "--pruned")[0] == 0
    assert run(capsys, "peano-check", files["peano"])[0] == 0
    assert run(capsys, "peano-check", files["clock"])[0] == 1


def test_search_and_universe(capsys, files):
    out_file = files["dir"] / "cat.jsonl"
    code, out, _ = run(capsys, "search", "n=3 C1 C2 C3 C4 C5 nonempty", "--out", str(out_file))
    assert code == 0 and out.startswith("0 systems")
    head = json.loads(out_file.read_text().splitlines()[0])
    assert head["entries"] == 0 and head["complete"]
    assert run(capsys, "check-universe-lemmas", "--cases", "20")[0] == 0
