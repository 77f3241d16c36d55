import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlvchain.cli import ParseError, chain_from_json, chain_to_json, main, parse_poly, poly_to_json
from mlvchain.exactnum import INF, RationalPoly, X

x = X
EISENSTEIN = {"p": 7, "base": {"a": "0", "gamma": "1/2"}, "steps": [{"kind": "ordinary", "phi": ["-7", "0", "1"], "gamma": "inf"}]}
SQRT2 = {
    "p": 7,
    "base": {"a": "0", "gamma": "0"},
    "steps": [{"kind": "limit", "phi": ["-2", "0", "1"], "gamma": "inf", "family": {"theta": "sqrt", "of": "2", "root": 3}}],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_eval_examples(capsys):
    gauss2 = json.dumps({"p": 2, "base": {"a": "0", "gamma": "0"}, "steps": []})
    assert run(capsys, "eval", "--chain", gauss2, "--poly", "x^2+2x+4")[:2] == (0, {"value": "0"})
    w = json.dumps({"p": 7, "base": {"a": "0", "gamma": "1/2"}, "steps": []})
    assert run(capsys, "eval", "--chain", w, "--poly", '["-7","0","1"]')[:2] == (0, {"value": "1"})
    assert run(capsys, "eval", "--chain", json.dumps(SQRT2), "--poly", "x-3")[:2] == (0, {"value": "1"})
    assert run(capsys, "eval", "--chain", json.dumps(SQRT2), "--poly", "x^2-2")[:2] == (0, {"value": "inf"})


def test_chain_file(tmp_path, capsys):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(EISENSTEIN))
    assert run(capsys, "eval", "--chain", str(path), "--poly", "x")[:2] == (0, {"value": "1/2"})


def test_extend_examples(capsys):
    code, out, _ = run(capsys, "extend", "--poly", "x^2+1", "--p", "5")
    assert code == 0 and [(l["e"], l["f"]) for l in out["leaves"]] == [(1, 1), (1, 1)] and out["sum_ef"] == 2
    code, out, _ = run(capsys, "extend", "--poly", "x^2+1", "--p", "2")
    assert [(l["e"], l["f"]) for l in out["leaves"]] == [(2, 1)] and out["leaves"][0]["slopes"] == ["1/2"]
    code, out, err = run(capsys, "extend", "--poly", "x^2", "--p", "2")
    assert code == 3 and json.loads(err)["error"] == "NotSquarefree"


def test_chain_invariants_and_graded(capsys):
    code, out, _ = run(capsys, "chain-invariants", "--chain", json.dumps(EISENSTEIN))
    assert code == 0
    assert out == {"m": [1, 2], "e": [2], "f": [1], "d": ["1"], "defect_ledger": {"e": 2, "f": 1, "d": "1"}}
    code, out, _ = run(capsys, "graded", "--chain", json.dumps(EISENSTEIN))
    assert out["relations"] == ["x0^2 = u0*z0"] and out["kappa_tower"] == ["y-1"]
    assert out["normalizers"] == {"u0": "p"}
    code, out, _ = run(capsys, "chain-invariants", "--chain", json.dumps(SQRT2))
    assert out["d"] == ["2"] and out["defect_ledger"] == {"e": 1, "f": 1, "d": "2"}


def test_compress_flag(capsys):
    raw = {"p": 7, "steps": [{"phi": "x-3", "gamma": "1"}, {"phi": "x-10", "gamma": "2"}]}
    code, _, err = run(capsys, "chain-invariants", "--chain", json.dumps(raw))
    assert code == 3 and json.loads(err)["error"] == "MLVViolation"
    code, out, _ = run(capsys, "chain-invariants", "--compress", "--chain", json.dumps(raw))
    assert code == 0 and out["m"] == [1] and out["defect_ledger"] is None


def test_is_key_and_residual(capsys):
    w = json.dumps({"p": 7, "base": {"a": "0", "gamma": "1/2"}})
    assert run(capsys, "is-key", "--chain", w, "--poly", "x^2-7")[:2] == (0, {"is_key": True})
    assert run(capsys, "is-key", "--chain", w, "--poly", "x^2-2")[:2] == (0, {"is_key": False})
    code, out, _ = run(capsys, "residual", "--chain", w, "--poly", "x^2-7")
    assert code == 0 and out["value"] == "1" and out["s0"] == 0


def test_limit_demo(capsys):
    code, out, _ = run(capsys, "limit-demo", "--p", "7", "--theta=-1/6")
    assert code == 0 and out["classification"] == "inessential" and out["witness"] == "x+1/6"
    code, out, _ = run(capsys, "limit-demo", "--spec", '{"p":7,"theta":"sqrt","of":"2"}')
    assert out["classification"] == "essential" and out["limit_key"] == "x^2-2"
    assert len(out["chain"]["steps"]) == 1
    assert out["invariants"]["m"] == [1, 2] and out["invariants"]["d"] == ["2"]


def test_exit_codes(capsys):
    assert run(capsys, "eval", "--chain", "{bad", "--poly", "x")[0] == 2
    assert run(capsys, "eval", "--chain", json.dumps(EISENSTEIN), "--poly", "x^^2")[0] == 2
    assert run(capsys, "eval", "--chain", json.dumps({"p": 7, "steps": [{"kind": "odd", "phi": "x", "gamma": "1"}]}), "--poly", "x")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "extend", "--poly", "2x^2+1", "--p", "3")[0] == 3


def test_byte_identical_reruns(capsys):
    outs = []
    for _ in range(2):
        main(["extend", "--poly", "x^4+x^2+7", "--p", "7"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "mlvchain", "eval", "--chain", json.dumps(EISENSTEIN), "--poly", "x^2-7"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and json.loads(res.stdout) == {"value": "inf"}


def test_grammar():
    assert parse_poly("x^2-7") == x**2 - 7
    assert parse_poly("2x(x+1)") == 2 * x**2 + 2 * x
    assert parse_poly("x/2 - 1/6") == x / 2 - Fraction(1, 6)
    assert parse_poly("-(x-1)^3") == -((x - 1) ** 3)
    assert parse_poly("3") == RationalPoly.const(3)
    assert parse_poly('["1/2", "-3", "1"]') == x**2 - 3 * x + Fraction(1, 2)
    for bad in ("x^", "x/x", "(x+1", "y", "x^-1", "1/0"):
        with pytest.raises(ParseError):
            parse_poly(bad)


coeff = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


@settings(max_examples=100, deadline=None)
@given(st.lists(coeff, max_size=8))
def test_poly_round_trip(cs):
    f = RationalPoly(cs)
    assert parse_poly(poly_to_json(f)) == f
    assert parse_poly(json.dumps(poly_to_json(f))) == f
    assert parse_poly(str(f)) == f


def test_chain_round_trip():
    for obj in (EISENSTEIN, SQRT2, {"p": 2, "base": {"a": "-3/5", "gamma": "7/3"}, "steps": []}):
        mu = chain_from_json(obj)
        assert chain_to_json(mu) == obj
        assert chain_from_json(chain_to_json(mu)) == mu
    obj = {"p": 7, "base": {"a": "0", "gamma": "0"},
           "steps": [{"kind": "limit", "phi": ["1", "0", "1"], "gamma": "5", "family": {"theta": "-1/6"}}]}
    assert chain_to_json(chain_from_json(obj)) == obj
