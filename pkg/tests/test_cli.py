import json
import subprocess
import sys

import pytest

from _helpers import GOLDEN
from gllimits import serialize as ser
from gllimits.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_strength_quad(capsys):
    assert run(capsys, "strength-quad", "x1*x2 + x3*x4")[:2] == (0, "2\n")
    code, out, _ = run(capsys, "strength-quad", "x1^2", "--json")
    assert json.loads(out) == {"form": "x1^2", "rank": 1, "strength": 1}


def test_lnm_golden(capsys):
    code, out, _ = run(capsys, "lnm", "--map", str(GOLDEN / "fgh2.json"), "--n", "1", "--m", "1", "--json")
    assert code == 0
    assert out == (GOLDEN / "fgh2_lnm.json").read_text(encoding="utf-8")


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--form", "x1^2*x2", "--cert", str(GOLDEN / "waring.json"))
    assert code == 0 and out.startswith("accepted s=1")
    assert "P(t) = (x1^2*x2)*t + (x1*x2^2)*t^2 + (1/3*x2^3)*t^3" in out


def test_certify_rejected(capsys, tmp_path):
    doc = ser.loads((GOLDEN / "waring.json").read_text())
    doc["s"] = 0
    path = tmp_path / "c.json"
    path.write_text(ser.dumps(doc))
    code, out, _ = run(capsys, "certify", "--form", "x1^2*x2", "--cert", str(path), "--json")
    assert code == 1
    res = json.loads(out)
    assert res["reason"] == "WrongLimit" and res["limit"] == ["0"]


def test_limit(capsys, tmp_path):
    y = {"space": {"tuple": [[2]], "level": 2, "names": ["a"]}, "coeffs": {"-1": ["x1^2"], "0": ["x2^2"]}}
    path = tmp_path / "y.json"
    path.write_text(ser.dumps(y))
    code, out, _ = run(capsys, "limit", "--point", str(path))
    assert code == 1 and "pole of order 1" in out
    code, out, _ = run(capsys, "limit", "--point", str(path), "--shift", "-1")
    assert (code, out) == (0, "x1^2\n")
    # emitted documents re-parse
    code, out, _ = run(capsys, "limit", "--point", str(path), "--shift", "-1", "--json")
    assert json.loads(out) == {"limit": ["x1^2"]}


def test_implicitize(capsys, tmp_path):
    m = {"source": [[1]], "target": [[2]], "level": 2, "components": ["a^2"], "source_names": ["a"]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m))
    code, out, _ = run(capsys, "implicitize", "--map", str(path), "--json")
    doc = json.loads(out)
    assert code == 0 and len(doc["basis"]) == 1
    assert ser.dumps(ser.ideal_to_json(ser.ideal_from_json(doc))) == out


def test_sigma_search(capsys):
    code, out, _ = run(capsys, "sigma-search", "--form", "x1^2*x2", "--r", "1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "found" and doc["s"] == 0
    code, out, _ = run(capsys, "sigma-search", "--form", "x1*x2 + x3*x4", "--r", "1")
    assert code == 1 and out.startswith("inconclusive")


def test_line_curve(capsys):
    code, out, _ = run(capsys, "line-curve", "--degrees", "2", "--level", "2", "--x", "x1^2", "--y", "x2^2", "--t0", "1/2", "--json")
    y = ser.laurent_point_from_json(json.loads(out))
    assert code == 0 and y.coefficient(1).forms[0] == ser.parse_poly("x2^2 - x1^2")


@pytest.mark.parametrize(
    "argv",
    [
        ["strength-quad", "x1^2 + x2"],
        ["strength-quad", "1.5*x1^2"],
        ["lnm", "--map", "missing.json", "--n", "1", "--m", "1"],
        ["line-curve", "--degrees", "2", "--level", "2", "--x", "x1", "--y", "x2^2"],
    ],
)
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


@pytest.mark.parametrize("argv", [["frobnicate"], ["lnm", "--n", "1"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_budget_exit_code(capsys, tmp_path):
    m = {"source": [[1]], "target": [[3]], "level": 3, "components": ["a^3"], "source_names": ["a"]}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m))
    code, out, err = run(capsys, "implicitize", "--map", str(path), "--budget", "5")
    assert code == 3 and "resource limit" in err


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "gllimits.cli", "strength-quad", "x1*x2"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "1\n"
