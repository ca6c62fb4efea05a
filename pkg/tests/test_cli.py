"""Command-line interface.

Claims:
    - quiver prints the census and writes DOT with one line per arrow;
      gcd violations exit 2
    - sequence prints CSV values matching a direct recurrence, symbolic
      terms, and backward terms
    - poset writes round-trippable JSON and a predicate report on stderr
    - fpoly prints the F-polynomials for both sides and from files
    - theta reports the NotSturdy failure of the simple at 2 with exit 1,
      echoes the input at zero steps, and reproduces S^(2)..S^(8)
    - verify passes for Somos-4 and Somos-5 and fails under a table fault
    - outputs are deterministic
"""

import io
import json
import subprocess
import sys

import pytest

from galerob.cli import main
from galerob.degreeset import DegreeSet, build_Sj, negate, order_filters
from galerob.laurent import LaurentPoly
from galerob.quiver import dot_edge_count

from conftest import SIMPLE2, SOMOS4, SOMOS5

S4 = ["--a", "1", "--c", "2", "--N", "4"]
S5 = ["--a", "1", "--c", "2", "--N", "5"]


# -- Helpers --


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def somos4_values(lo, hi):
    """Direct forward and backward Somos-4 recurrence from four ones."""
    x = {1: 1, 2: 1, 3: 1, 4: 1}
    for k in range(5, hi + 1):
        x[k] = (x[k - 1] * x[k - 3] + x[k - 2] ** 2) // x[k - 4]
    for k in range(0, lo - 1, -1):
        x[k] = (x[k + 1] * x[k + 3] + x[k + 2] ** 2) // x[k + 4]
    return [x[k] for k in range(lo, hi + 1)]


def csv_values(text):
    rows = text.strip().splitlines()
    assert rows[0] == "index,value"
    return [int(r.split(",")[1]) for r in rows[1:]]


def write_set(tmp_path, S, name="set.json"):
    path = tmp_path / name
    path.write_text(S.to_json())
    return str(path)


# -- quiver --


def test_quiver_dot(tmp_path):
    dot = tmp_path / "q.dot"
    code, text = run(["quiver", "--a", "1", "--c", "2", "--N", "6", "--dot", str(dot)])
    assert code == 0
    assert text.startswith("16 arrows on 6 vertices")
    assert dot_edge_count(dot.read_text()) == 16


def test_quiver_conifold():
    code, text = run(["quiver", "--a", "1", "--c", "1", "--N", "2"])
    assert code == 0
    assert text.startswith("4 arrows on 2 vertices")


def test_quiver_json_output(tmp_path):
    path = tmp_path / "q.json"
    assert run(["quiver", *S4, "-o", str(path)])[0] == 0
    data = json.loads(path.read_text())
    assert data["params"] == {"a": 1, "c": 2, "N": 4}


def test_quiver_gcd_error():
    assert run(["quiver", "--a", "2", "--c", "2", "--N", "4"])[0] == 2


def test_missing_params_is_usage_error():
    assert run(["quiver", "--a", "1"])[0] == 2


# -- sequence --


def test_sequence_csv():
    code, text = run(["sequence", *S4, "--lo", "1", "--hi", "10", "--spec", "1"])
    assert code == 0
    assert csv_values(text) == somos4_values(1, 10)
    assert csv_values(text)[4:8] == [2, 3, 7, 23]


def test_sequence_backward():
    code, text = run(["sequence", *S4, "--lo", "-2", "--hi", "4"])
    assert code == 0
    assert csv_values(text) == somos4_values(-2, 4)


def test_sequence_symbolic():
    code, text = run(["sequence", *S4, "--lo", "5", "--hi", "6", "--symbolic"])
    assert code == 0
    lines = text.strip().splitlines()
    assert [ln.split(" = ")[0] for ln in lines] == ["x5", "x6"]
    X = LaurentPoly.generators(4)
    x5 = LaurentPoly.parse(lines[0].split(" = ")[1], 4)
    assert x5 * X[0] == X[1] * X[3] + X[2] ** 2


def test_sequence_bad_spec():
    assert run(["sequence", *S4, "--hi", "6", "--spec", "1,2"])[0] == 2


# -- poset --


def test_poset_j(capsys):
    code = main(["poset", *S4, "--j", "3"])
    captured = capsys.readouterr()
    assert code == 0
    S = DegreeSet.from_json(captured.out)
    assert S == build_Sj(SOMOS4, 3)
    report = json.loads(captured.err)
    assert report["size"] == 5 and report["interval_closed"] and report["sturdy"]


def test_poset_cyclic(capsys):
    code = main(["poset", *S4, "--cyclic", "1", "1,2,3", "(-2,0,0,0)"])
    captured = capsys.readouterr()
    assert code == 0
    assert DegreeSet.from_json(captured.out) == negate(build_Sj(SOMOS4, 3))


def test_poset_bad_vertex(capsys):
    assert main(["poset", *S4, "--cyclic", "2", "1,3", "(0,0,0,0)"]) == 2


def test_poset_infinite(capsys):
    assert main(["poset", *S4, "--cyclic", "1", "1,2,3,4", "(0,0,0,0)", "--budget", "500"]) == 2


# -- fpoly --


def test_fpoly_pos():
    assert run(["fpoly", *S4, "--j", "1", "--side", "pos"]) == (0, "1 + y1\n")
    code, text = run(["fpoly", *S4, "--j", "3", "--side", "pos"])
    assert text.strip() == "1 + 2*y1 + y1^2 + y1^2*y3 + y1^2*y2*y3 + y1^3*y2*y3"


def test_fpoly_neg():
    code, text = run(["fpoly", *S4, "--j", "2", "--side", "neg"])
    assert code == 0
    S = build_Sj(SOMOS4, 2)
    expected = LaurentPoly.zero(4)
    for R in order_filters(S):
        dims = [0] * 4
        for lam in R:
            dims[SOMOS4.level(lam) - S.t - 1] += 1
        expected = expected + LaurentPoly.monomial(dims)
    assert LaurentPoly.parse(text.strip(), 4, "y") == expected
    assert text.strip() == "1 + y4 + y3*y4"


def test_fpoly_from_file(tmp_path):
    path = write_set(tmp_path, negate(build_Sj(SOMOS4, 3)))
    code, text = run(["fpoly", "--input", path, "--side", "filters"])
    assert code == 0
    assert text.strip() == "1 + 2*y1 + y1^2 + y1^2*y3 + y1^2*y2*y3 + y1^3*y2*y3"
    assert run(["fpoly", "--input", path, "--side", "pos"])[0] == 2


# -- theta --


def test_theta_simple2_fails_at_step_six(tmp_path):
    path = write_set(tmp_path, SIMPLE2)
    code, text = run(["theta", "--input", path, "--steps", "6", "--sequence", "2"])
    assert code == 1
    data = json.loads(text)
    assert len(data["steps"]) == 5
    assert data["failure"]["step"] == 6
    assert data["failure"]["predicate"] == "NotSturdy"
    assert data["failure"]["witness"] == [1, 0, 0, 0]
    assert data["mutation_sequences"][5] == [4, 3, 2, 1, 4, 3, 4]


def test_theta_zero_steps(tmp_path):
    path = write_set(tmp_path, SIMPLE2)
    code, text = run(["theta", "--input", path, "--steps", "0"])
    assert code == 0
    data = json.loads(text)
    assert DegreeSet.from_dict(data["start"]) == SIMPLE2
    assert data["steps"] == [] and data["failure"] is None


def test_theta_family(tmp_path):
    path = write_set(tmp_path, build_Sj(SOMOS4, 1))
    code, text = run(["theta", "--input", path, "--steps", "7"])
    assert code == 0
    steps = json.loads(text)["steps"]
    assert [DegreeSet.from_dict(s) for s in steps] == [build_Sj(SOMOS4, j) for j in range(2, 9)]


def test_theta_inverse(tmp_path):
    path = write_set(tmp_path, build_Sj(SOMOS4, 4))
    code, text = run(["theta", "--input", path, "--steps", "2", "--inverse"])
    assert code == 0
    steps = json.loads(text)["steps"]
    assert DegreeSet.from_dict(steps[-1]) == build_Sj(SOMOS4, 2)


def test_theta_missing_file():
    assert run(["theta", "--input", "/nonexistent/set.json", "--steps", "1"])[0] == 2


# -- verify --


@pytest.mark.parametrize("params", [S4, S5])
def test_verify_passes(params, capsys):
    out = io.StringIO()
    code = main(["verify", *params, "--jmax", "8"], out=out)
    assert code == 0
    data = json.loads(out.getvalue())
    assert all(c["status"] in ("pass", "skip") for c in data["checks"])


def test_verify_detects_table_fault(capsys):
    out = io.StringIO()
    code = main(["verify", *S4, "--jmax", "6", "--inject-table-fault", "1"], out=out)
    assert code == 1
    checks = {c["check"]: c for c in json.loads(out.getvalue())["checks"]}
    assert checks["table_vs_ranks"]["status"] == "fail"
    assert checks["table_vs_ranks"]["witnesses"]


# -- process-level behaviour --


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "galerob", "fpoly", *S4, "--j", "4", "--side", "pos"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True)
    second = subprocess.run(cmd, capture_output=True, text=True, check=True)
    assert first.stdout == second.stdout
    assert first.stdout.startswith("1 + ")


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "galerob", "quiver", "--a", "2", "--c", "2", "--N", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_outputs_round_trip(tmp_path):
    out = tmp_path / "s.json"
    assert run(["poset", *S5, "--j", "5", "-o", str(out)])[0] == 0
    S = DegreeSet.from_json(out.read_text())
    assert S == build_Sj(SOMOS5, 5)
    assert DegreeSet.from_json(S.to_json()).to_json() == S.to_json()
