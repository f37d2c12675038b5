import json
from fractions import Fraction
import subprocess
import sys

import pytest

from twistlap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_poly_examples(capsys):
    assert run(capsys, "poly", "--kappa", "-1", "--nu", "3", "-m", "1", "-n", "1") == (0, "5 z z̄ − 1\n", "")
    code, out, _ = run(capsys, "poly", "--kappa", "0", "--nu", "1", "-m", "1", "-n", "1", "--route", "hermite")
    assert (code, out) == (0, "2 z z̄ − 1\n")
    code, out, _ = run(capsys, "poly", "--kappa", "-1", "--nu", "3", "-m", "0", "-n", "4")
    assert out == "z⁴\n"


def test_poly_formats(capsys):
    code, out, _ = run(capsys, "poly", "--kappa", "-1/2", "--nu", "3", "-m", "1", "-n", "0", "--format", "json")
    assert code == 0 and json.loads(out) == [{"i": 0, "j": 1, "c": "5"}]
    code, out, _ = run(capsys, "poly", "--kappa", "-1", "--nu", "3", "-m", "1", "-n", "1", "--format", "csv")
    assert out == "i,j,c\n0,0,-1\n1,1,5\n"


def test_poly_errors(capsys):
    code, _, err = run(capsys, "poly", "--kappa", "1", "--nu", "7/10", "-m", "0", "-n", "0")
    assert code == 2 and "invalid parameters" in err
    assert run(capsys, "poly", "--kappa", "-1", "--nu", "3", "-m", "3", "-n", "0")[0] == 2
    assert run(capsys, "poly", "--kappa", "1", "--nu", "1", "-m", "1", "-n", "4", "--route", "mixed")[0] == 3
    assert run(capsys, "poly", "--kappa", "0.5", "--nu", "1", "-m", "0", "-n", "0")[0] == 2


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify", "--kappa", "-1", "--nu", "3")
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") >= 10


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--kappa", "1", "--nu", "1", "--suite", "routes", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert doc["crosscheck"]["kappa"] == "1"


def test_verify_range_error(capsys):
    assert run(capsys, "verify", "--kappa", "-1", "--nu", "3", "--m-max", "3")[0] == 2


def test_verify_jacobi_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "jacobi", "--jmax", "10")
    assert code == 0 and out.startswith("PASS")


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--kappa", "-1", "--nu", "3", "--format", "csv")
    assert out == "m,eigenvalue,level_dimension\n0,3,inf\n1,7,inf\n2,9,inf\n"
    code, out, _ = run(capsys, "spectrum", "--kappa", "0", "--nu", "1", "--m-max", "3", "--format", "json")
    assert [r["eigenvalue"] for r in json.loads(out)] == ["1", "3", "5", "7"]
    code, out, _ = run(capsys, "spectrum", "--kappa", "1", "--nu", "1", "--m-max", "2", "--format", "csv")
    assert [line.split(",")[2] for line in out.splitlines()[1:]] == ["3", "5", "7"]


def test_gram(capsys):
    code, out, _ = run(capsys, "gram", "--kappa", "-1", "--nu", "3", "--entries", "0,0;0,1;1,1")
    rows = [line.split() for line in out.splitlines()]
    assert [rows[i][i] for i in range(3)] == ["π/5", "π/30", "π/3"]
    assert all(rows[i][j] == "0" for i in range(3) for j in range(3) if i != j)
    code, out, _ = run(capsys, "gram", "--kappa", "-1", "--nu", "3", "--entries", "0,0", "--format", "json")
    assert json.loads(out) == [[{"pi_multiple": "1/5"}]]
    assert run(capsys, "gram", "--kappa", "1", "--nu", "1", "--entries", "0,3")[0] == 2


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--kappa", "-1", "--nu", "3", "-m", "0", "-n", "0",
                       "--xmin", "0", "--xmax", "0", "--ymin", "0", "--ymax", "0", "--nx", "1", "--ny", "1")
    assert out == "x,y,re,im,abs2\n0,0,1,0,1\n"
    code, _, err = run(capsys, "eval", "--kappa", "-1", "--nu", "3", "-m", "0", "-n", "0", "--xmax", "1.5")
    assert code == 2 and "disc" in err


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "--nu", "1", "-m", "1", "-n", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["match"]
    pts = doc["reports"][0]["points"]
    assert all(p["diff"] == abs(float(Fraction(p["kappa"]))) for p in pts)
    code, out, _ = run(capsys, "limit", "--nu", "1", "-m", "0", "-n", "0")
    assert "order=exact" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "levels.csv"
    code, out, _ = run(capsys, "spectrum", "--kappa", "-1", "--nu", "3", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8").startswith("m,eigenvalue")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twistlap", "poly", "--kappa", "-1", "--nu", "3", "-m", "1", "-n", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "4 z̄\n"


@pytest.mark.parametrize("argv", [
    ["verify", "--kappa", "-1", "--nu", "3", "--suite", "operators", "--seed", "5", "--format", "json"],
    ["eval", "--kappa", "1", "--nu", "1", "-m", "1", "-n", "2", "--nx", "4", "--ny", "3"],
    ["limit", "--nu", "1", "--m-max", "1", "--n-max", "1", "--seed", "3", "--format", "json"],
])
def test_outputs_are_byte_reproducible(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["--out", str(a)]) == main(argv + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
