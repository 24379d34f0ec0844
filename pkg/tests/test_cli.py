import csv
import io
import json
import subprocess
import sys

import pytest

from hyperforms.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_asymptotics_example(capsys):
    code, out, _ = call(capsys, "asymptotics", "--s", "40", "--digits", "60")
    assert code == 0
    data = json.loads(out)
    assert data["ln_g_x0"]["mid"].startswith("-40.54232882")
    assert data["ln_g_x0p_lt_ln_g_x0"] is True


def test_identity_pass(capsys):
    code, out, _ = call(capsys, "identity", "th-cat", "--n", "1", "--c", "3/2", "--d", "5/2", "--digits", "40")
    assert code == 0 and json.loads(out)["pass"] is True


@pytest.mark.parametrize("argv", [
    ["identity", "bogus"],
    ["frobnicate"],
    [],
    ["identity", "th-cat", "--n", "1", "--c", "3/2"],
    ["identity", "th-cat", "--n", "1", "--c", "3/2", "--d", "5/2", "--e", "1"],
    ["approx", "LOG2_R", "--digits", "5"],
    ["approx", "NOPE"],
    ["approx", "LOG2_R", "--n-range", "a:b"],
    ["group", "orbit"],
    ["zeta", "form", "--s", "7"],
    ["sweep", "TH_LN2", "--bogus"],
])
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert out == "" and err


def test_env_digits(capsys, monkeypatch):
    monkeypatch.setenv("HYPERFORMS_DIGITS", "25")
    code, out, _ = call(capsys, "approx", "LOG2_R", "--n-range", "1")
    assert code == 0 and json.loads(out)["digits"] == 25
    monkeypatch.setenv("HYPERFORMS_DIGITS", "lots")
    assert call(capsys, "approx", "LOG2_R", "--n-range", "1")[0] == 2


def test_approx_json(capsys):
    code, out, _ = call(capsys, "approx", "LOG2_R", "--n-range", "0:2", "--recurrence", "2,1", "--integrality")
    data = json.loads(out)
    assert code == 0
    assert data["results"][1]["form"] == {"basis": ["one", "log2"], "coeffs": ["-2/1", "3/1"]}
    assert data["recurrence"]["characteristic_polynomial"] == ["1/1", "-6/1", "1/1"]


def test_csv_and_pretty(capsys):
    code, out, _ = call(capsys, "approx", "CATALAN_WT", "--n-range", "0:2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["n"] for r in rows] == ["0", "1", "2"]
    code, out, _ = call(capsys, "group", "order", "--format", "pretty")
    assert code == 0 and "120" in out


def test_group_and_zeta(capsys):
    code, out, _ = call(capsys, "group", "matrix", "--record", "13,15,30")
    assert code == 0
    code, out, _ = call(capsys, "zeta", "integrality", "--n-range", "0:2")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = call(capsys, "zeta", "form", "--n-range", "1", "--variant", "WT", "--derivative")
    assert code == 0
    code, out, _ = call(capsys, "zeta", "theorem-table", "--format", "csv")
    assert code == 0 and "1/14" in out


def test_sweep_deterministic(capsys):
    argv = ["sweep", "TH_LN2", "--count", "4", "--seed", "11", "--digits", "25"]
    first = call(capsys, *argv)
    second = call(capsys, *argv)
    assert first[0] == 0 and first[1] == second[1]


def test_module_entry_point():
    argv = [sys.executable, "-m", "hyperforms", "zeta", "theorem-table"]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout
    bad = subprocess.run([sys.executable, "-m", "hyperforms", "identity", "bogus"], capture_output=True, text=True)
    assert bad.returncode == 2 and "bogus" in bad.stderr


def test_selftest(capsys):
    code, out, _ = call(capsys, "selftest")
    assert code == 0 and all(c["pass"] for c in json.loads(out)["checks"])
