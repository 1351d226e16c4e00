import json
import subprocess
import sys

import pytest

from treehopf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coproduct_golden(capsys):
    code, out, _ = run(capsys, "coproduct", "[[]]")
    assert code == 0
    assert out.strip() == "1 (x) [[]] + [[]] (x) 1 + [] (x) []"


def test_dims_table(capsys):
    code, out, _ = run(capsys, "dims", "8")
    assert code == 0
    row = out.splitlines()[2].split()
    assert row[1:] == ["1", "1", "1", "2", "3", "8", "16", "41"]


def test_structured_output_is_versioned(capsys):
    code, out, _ = run(capsys, "--format", "structured", "antipode", "[[]]")
    rec = json.loads(out)
    assert rec["format"] == "treehopf/1"
    assert rec["verb"] == "antipode"
    assert {"coefficient": "-1", "forest": "[[]]"} in rec["result"]


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "antipode", "[[x]]")
    assert code == 2
    assert "position 2" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2


def test_check_suite_passes(capsys):
    code, out, _ = run(capsys, "check", "hopf-axioms", "--max-weight", "5")
    assert code == 0
    assert "FAIL" not in out
    assert "seed 0" in out


def test_check_prints_seed(capsys):
    code, out, _ = run(capsys, "check", "comodule", "--max-weight", "2", "--seed", "11")
    assert code == 0
    assert "seed 11" in out


def test_verbs_smoke(capsys):
    assert run(capsys, "graft", "[]", "[]")[1].strip() == "[[]]"
    assert run(capsys, "pi1", "[] []")[1].strip() == "-2 [[]] + [] []"
    assert run(capsys, "degp", "[] [] []")[1].strip() == "3"
    assert run(capsys, "bracket", "[]", "[[]]")[1].strip() == "2 Z[[][]]"
    assert run(capsys, "pair", "[].[]", "[] []")[1].strip() == "2"
    assert "weight 4: 2 primitives" in run(capsys, "prim-basis", "4")[1]
    assert run(capsys, "shuffle", "p1.0", "p2.0")[1].strip() == "p1.0 T p2.0 + p2.0 T p1.0"
    assert "pi_3: 6 [[[]]]" in run(capsys, "decompose", "[] [] []")[1]
    out = run(capsys, "renorm", "[[[]]]")[1]
    assert out.startswith("x_{l3}(c) - [x_{l1}(c)]x_{l2}(c)")
    assert run(capsys, "renorm", "[[]]", "--form", "counterterm")[1].strip() == "x_{l2}(c) - [x_{l1}(c)]x_{l1}(c)"


def test_comodule_files(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"kind": "primitive", "n": 2, "entries": [
        {"i": 1, "j": 1, "element": "[]"}, {"i": 2, "j": 2, "element": "[[]] + -1/2 [] []"}]}))
    code, out, _ = run(capsys, "comodule", "build", str(p))
    assert code == 0
    q = tmp_path / "q.json"
    q.write_text(out)
    assert run(capsys, "comodule", "verify", str(q))[0] == 0
    code, out, _ = run(capsys, "comodule", "extract", str(q))
    assert json.loads(out) == json.loads(p.read_text())
    assert "flag type: (1, 1, 1)" in run(capsys, "comodule", "type", str(p))[1]
    assert "dims: 1 2 3" in run(capsys, "comodule", "flag", str(q))[1]
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"matrix": [[1, 0, 0], [0, 2, 0], [0, 0, 1]], "type": [1, 1, 1]}))
    out = run(capsys, "comodule", "act", str(p), "--group", str(g))[1]
    assert '"1/2 []"' in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "structure", "n": 1, "entries": [{"i": 1, "j": 0, "element": "[[]]"}]}))
    assert run(capsys, "comodule", "verify", str(bad))[0] == 1
    assert run(capsys, "comodule", "build", str(tmp_path / "missing.json"))[0] == 2


def test_endo_and_xi(tmp_path, capsys):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps({"[]": "[]", "[[]]": "[[]] + -1/2 [] []"}))
    code, out, _ = run(capsys, "endo", "apply", "[[]] []", "--family", str(fam))
    assert code == 0 and out.strip() == "2 [[]] [] + -1/2 [] [] []"
    images = tmp_path / "im.json"
    images.write_text(json.dumps({"[]": "2 []", "[[]]": "4 [[]]"}))
    assert run(capsys, "endo", "recover", "--images", str(images))[1].strip() == "P_[] = 2 []"
    code, out, _ = run(capsys, "xi", "--max-weight", "3", "--verify")
    assert code == 0 and "PASS coproduct compatible" in out


def test_deterministic_given_seed(capsys):
    a = run(capsys, "--format", "structured", "check", "comodule", "--max-weight", "2", "--seed", "4")[1]
    b = run(capsys, "--format", "structured", "check", "comodule", "--max-weight", "2", "--seed", "4")[1]
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "treehopf", "coproduct", "[]"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "1 (x) [] + [] (x) 1"
