import json
import subprocess
import sys

import pytest

from qea.algebra import a_n
from qea.cli import run


def test_verify_a1_all_passes(capsys):
    assert run(["verify", "--algebra", "a1", "--suite", "all"]) == 0
    assert capsys.readouterr().out.strip().endswith("overall: PASS")


@pytest.mark.parametrize("suite", ["relations", "ybe", "slice", "inverse", "qh", "perm"])
def test_verify_a2_suites_pass(suite, capsys):
    assert run(["verify", "--algebra", "a2", "--suite", suite]) == 0


def test_verify_catalog_a2_printed_fails_derived_passes(capsys):
    assert run(["verify", "--algebra", "a2", "--suite", "catalog"]) == 1
    out = capsys.readouterr().out
    assert "entry (3,1)" in out
    assert run(["verify", "--algebra", "a2", "--suite", "catalog", "--variant", "derived"]) == 0


def test_verify_g2_catalog_passes(capsys):
    assert run(["verify", "--algebra", "g2", "--suite", "catalog"]) == 0


def test_verify_json_format(capsys):
    assert run(["verify", "--algebra", "a1", "--suite", "qh", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]["ok"] is True


def test_usage_errors_exit_2(capsys):
    assert run(["verify", "--algebra", "b3"]) == 2
    assert run(["rmatrix", "--algebra", "a1", "--at", "w=2"]) == 2
    assert run(["rmatrix", "--algebra", "a1", "--at", "v=0"]) == 2
    assert run(["lop", "--algebra", "a1", "--kind", "minus", "--a", "3", "--b", "1"]) == 2
    assert run(["lop", "--algebra", "a1", "--kind", "minus", "--a", "1"]) == 2
    assert run(["rmatrix", "--format", "text"]) == 2
    assert run(["nonsense"]) == 2
    assert "error" in capsys.readouterr().err


def test_truncation_exit_2(monkeypatch, capsys):
    monkeypatch.setenv("QEA_MAX_BETA_HEIGHT", "3")
    assert run(["rmatrix", "--algebra", "g2"]) == 2
    assert "missing beta" in capsys.readouterr().err


def test_rmatrix_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["rmatrix", "--algebra", "a2", "-o", str(a)]) == 0
    assert run(["rmatrix", "--algebra", "a2", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["dim"] == 3


def test_rmatrix_at_point(capsys):
    assert run(["rmatrix", "--algebra", "a1", "--at", "v=2"]) == 0
    data = json.loads(capsys.readouterr().out)
    cells = {tuple(e[:4]): e[4] for e in data["entries"]}
    assert cells[(1, 2, 2, 1)] == "-15/2"


def test_lop_latex(capsys):
    assert run(["lop", "--algebra", "g2", "--kind", "minus", "--a", "5", "--b", "3", "--format", "latex"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "\\left(L^{-}\\right)^{5}_{~3} = \\omega_{2}^{2}q_{2}^{-1}e_{2}^{2}t_{2}^{-1}"


def test_lop_json_slice(capsys):
    assert run(["lop", "--algebra", "a1", "--kind", "plus", "--a", "1", "--b", "2", "--source", "slice"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["source"] == "slice" and data["expr"]


def test_eval_command(tmp_path, capsys):
    A1 = a_n(1)
    path = tmp_path / "x.json"
    path.write_text((A1.e(1) * A1.f(1)).dumps())
    assert run(["eval", "--algebra", "a1", "--expr", str(path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 2 and len(data["entries"]) == 1
    assert run(["eval", "--algebra", "a1", "--expr", str(path), "--rep", "tensor2", "--at", "v=2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 4


def test_eval_bad_file_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["eval", "--expr", str(bad)]) == 2
    assert run(["eval", "--expr", str(tmp_path / "missing.json")]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qea", "verify", "--algebra", "a1", "--suite", "qh"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "overall: PASS" in proc.stdout
