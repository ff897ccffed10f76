import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from lcfano.cli import main
from lcfano.rational import parse


def run(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = main(list(argv), out=out, err=err)
    finally:
        if stdin is not None:
            sys.stdin = old
    lines = [json.loads(x) for x in out.getvalue().splitlines() if x.strip()]
    return code, lines, err.getvalue()


def test_bound():
    code, [rep], err = run("bound", "--d", "3", "--q", "1")
    assert code == 0 and rep["results"]["bound"] == "72/1" and err.strip() == "72"
    assert list(rep) == ["command", "inputs", "theorem_tag", "results", "status"]
    code, [rep], _ = run("bound", "--d", "3", "--q", "2")
    assert parse(rep["results"]["bound"]) == Fraction(441, 2)


def test_extremal_then_weights(tmp_path):
    code, [rep], _ = run("extremal", "--d", "3", "--q", "1", "--kind", "example43")
    assert code == 0 and rep["theorem_tag"] == "Ex4.3"
    f = tmp_path / "s.json"
    f.write_text(json.dumps(rep))
    code, [w], err = run("weights", str(f))
    assert code == 0 and w["results"]["weights"] == [6, 4, 1, 1] and err.strip() == "6 4 1 1"
    f.write_text(json.dumps(rep["results"]["polytope"]))
    code, [v], _ = run("dual", str(f))
    assert code == 0 and parse(v["results"]["normalized_volume"]) == 72


@pytest.mark.parametrize("kind,tag", [("example43", "Ex4.3"), ("thm13", "Thm1.3"), ("dual", "Prop4.4")])
def test_extremal_kinds(kind, tag):
    code, [rep], _ = run("extremal", "--d", "4", "--q", "2", "--kind", kind)
    assert code == 0 and rep["theorem_tag"] == tag and rep["status"] == "verified"


def test_check_lc_violation():
    poly = json.dumps({"dim": 2, "vertices": [[1, 0], [0, 1], [-3, -3]]})
    code, [rep], err = run("check-lc", "-", "--q", "2", stdin=poly)
    assert code == 1 and rep["status"] == "violated"
    assert rep["counterexample"]["witness"] == [-1, -1]
    assert "witness" in err


def test_check_lc_rational_input_roundtrip():
    poly = json.dumps({"dim": 2, "vertices": [["1/1", "0"], [0, 1], [-2, -2]]})
    code, [rep], _ = run("check-lc", "-", "--q", "2", stdin=poly)
    assert code == 0 and rep["results"]["mld"] == "1/2"
    assert parse(rep["results"]["mld"]) == Fraction(1, 2)


def test_usage_errors():
    assert run("bound", "--d", "3")[0] == 3
    assert run("bound", "--d", "0", "--q", "1")[0] == 3
    assert run("approx-k", "--q", "1")[0] == 3
    assert run("verify-prop44", "--d", "2", "--q", "2")[0] == 3
    assert run("weights", "/nonexistent.json")[0] == 3
    assert run("nosuch")[0] == 3


def test_float_output():
    code, [rep], _ = run("approx-k", "--q", "2", "--float")
    assert code == 0
    assert rep["results_float"]["lower"] == pytest.approx(1.59791, abs=1e-5)
    lo, hi = parse(rep["results"]["lower"]), parse(rep["results"]["upper"])
    assert lo < hi and hi - lo <= Fraction(1, 10 ** 6)


def test_minimize_and_prop44():
    code, [rep], _ = run("minimize", "--d", "3", "--q", "2", "--target", "d")
    assert code == 0 and parse(rep["results"]["optimal_value"]) == Fraction(2, 441)
    code, [rep], _ = run("minimize", "--d", "2", "--q", "1", "--target", "d", "--oracle", "--step", "1/300")
    assert code == 0 and parse(rep["results"]["optimal_value"]) == Fraction(1, 9)
    code, [rep], _ = run("verify-prop44", "--d", "3", "--q", "2")
    assert code == 0 and rep["theorem_tag"] == "Prop4.4"


def test_sweep5_records():
    code, lines, _ = run("sweep5", "--dmax", "4", "--qmax", "3")
    assert code == 0
    *records, summary = lines
    assert all(list(r) == ["d", "q", "t", "d_list", "bound_value", "target", "strict"] for r in records)
    assert all(r["strict"] for r in records)
    assert summary["command"] == "sweep5" and summary["results"]["violations"] == 0


def test_decompose_square():
    poly = json.dumps({"dim": 2, "vertices": [[1, 0], [-1, 0], [0, 1], [0, -1]]})
    code, [rep], _ = run("decompose", "-", "--q", "1", stdin=poly)
    assert code == 0 and rep["results"]["d_list"] == [1, 1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lcfano", "useq", "--q", "1", "--n", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["command"] == "useq" and rep["theorem_tag"] == "Eq1-2"


def test_verify_all_small():
    code, lines, err = run("verify-all", "--dmax", "3", "--qmax", "2", "--samples", "50")
    assert code == 0 and len(lines) == 13
    assert lines[-1]["results"]["passed"] == 12
    assert err.count("[PASS]") == 12
