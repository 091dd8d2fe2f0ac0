import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from torusinv.cli import decode, emit_csv, emit_json, encode, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classes_json(capsys):
    code, out, _ = run(capsys, "classes", "--family", "sp", "--n", "2", "--q", "3")
    assert code == 0
    report = json.loads(out)
    assert report["weyl_order"] == 8
    rows = {r["label"]: (r["centralizer_order"], r["torus_order"], r["epsilon"]) for r in report["classes"]}
    assert rows == {"2": (4, 8, -1), "1+1": (8, 4, 1), "1-1": (4, 8, -1), "-2": (4, 10, 1), "-1-1": (8, 16, 1)}


def test_classes_csv(capsys):
    code, out, _ = run(capsys, "classes", "--family", "sominus", "--n", "2", "--q", "3", "--format", "csv")
    assert code == 0
    assert "\r" not in out
    assert out.splitlines() == ["label,centralizer_order,torus_order,epsilon", "1-1,2,8,1", "-2,2,10,-1"]


def test_invalid_parameters_exit_2(capsys):
    code, _, err = run(capsys, "classes", "--family", "soodd", "--n", "3", "--q", "4")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "decompose", "--n", "3", "--q", "3", "--weight", "1")
    assert code == 2
    code, _, _ = run(capsys, "decompose", "--n", "3", "--q", "3", "--weight", "a,b")
    assert code == 2


def test_decompose_special(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "2", "--q", "3", "--weight", "2")
    assert code == 0
    report = json.loads(out)
    assert (report["case"], report["i"], report["d0"]) == ("special", 1, 1)
    assert {r["label"]: r["value"] for r in report["per_torus_values"]} == {"2": 1, "1+1": 3}
    coeffs = {r["label"]: Fraction(r["num"], r["den"]) for r in report["rt1_coeffs"]}
    assert coeffs == {"2": Fraction(-1, 2), "1+1": Fraction(3, 2)}


def test_decompose_csv(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "2", "--q", "3", "--weight", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "case,i,d0,label,value,num,den"
    assert "special,1,1,2,1,-1,2" in lines


def test_decompose_refusal(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "3", "--q", "3", "--weight", "2,2")
    assert code == 1
    report = json.loads(out)
    assert report["q"] == 3 and report["weight"] == [2, 2] and "digit" in report["violation"]


def test_decompose_generic_needs_d0(capsys):
    code, _, _ = run(capsys, "decompose", "--n", "2", "--q", "5", "--weight", "1")
    assert code == 2
    code, out, _ = run(capsys, "decompose", "--n", "2", "--q", "5", "--weight", "1", "--d0", "0")
    assert code == 0 and json.loads(out)["case"] == "generic"


def test_verify_json_and_out(capsys, tmp_path):
    target = tmp_path / "v.json"
    code, out, _ = run(capsys, "verify", "--theorem", "th1", "--max-n", "3", "--q-list", "2,3",
                       "--families", "gl,sp", "--out", str(target), "--threads", "1")
    assert code == 0 and out == ""
    report = json.loads(target.read_text())
    assert report["summary"]["FAIL"] == 0 and report["summary"]["PASS"] > 0
    assert report["grid"]["families"] == ["gl", "sp"]
    assert all(c["status"] == "PASS" for c in report["cells"])


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "pp3", "--max-n", "3", "--q-list", "2",
                       "--format", "csv", "--threads", "1")
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "theorem,params,status,expected,actual,note"
    assert all(line.startswith("pp3,") for line in lines[1:] if line)


def test_verify_output_is_deterministic(capsys):
    args = ("verify", "--theorem", "th1", "--max-n", "3", "--q-list", "3,4", "--families", "soplus,sl")
    _, first, _ = run(capsys, *args, "--threads", "1")
    _, second, _ = run(capsys, *args, "--threads", "2")
    assert first == second


def test_unknown_theorem_rejected():
    with pytest.raises(SystemExit):
        main(["verify", "--theorem", "nope"])


def test_emit_csv_fractions():
    text = emit_csv(["a", "b"], [[Fraction(-1, 2), {"x": 1}], [None, 3]])
    assert text == 'a,b\n-1/2,"{""x"":1}"\n,3\n'


rationals = st.fractions(max_denominator=50)
values = st.recursive(
    st.one_of(st.integers(-1000, 1000), rationals, st.text(max_size=5), st.booleans(), st.none()),
    lambda inner: st.one_of(st.lists(inner, max_size=4), st.dictionaries(st.text(max_size=4), inner, max_size=4)),
    max_leaves=20,
)


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x
    if isinstance(x, tuple):
        return [_normalize(v) for v in x]
    if isinstance(x, list):
        return [_normalize(v) for v in x]
    if isinstance(x, dict):
        return {k: _normalize(v) for k, v in x.items()}
    return x


@given(values)
def test_json_round_trip(value):
    assert decode(json.loads(emit_json(value))) == _normalize(value)
    assert encode(Fraction(3, 4)) == {"num": 3, "den": 4}
