import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from zzpa.cli import main

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip().startswith("{") else None, err


def test_digit_poly_golden(capsys):
    code, rep, _ = run_json(capsys, "digit-poly", "2", "1/7")
    assert code == 0
    assert rep["digit_polynomial"]["coefficients"] == [1, -2, 0, 0, 0, 0, 0, -2, 1]
    assert rep["cross_check"] is True
    jsonschema.validate(rep, SCHEMA)


def test_salem_one(capsys):
    code, rep, _ = run_json(capsys, "salem", "1")
    assert code == 0
    assert rep["is_salem"] and rep["degenerate"]
    assert rep["lambda"]["decimal"] == "2.618033988750"
    jsonschema.validate(rep, SCHEMA)


@pytest.mark.parametrize("argv", [
    ("construct", "2", "2/2"),
    ("construct", "2", "2/4"),
    ("construct", "1", "1/3"),
    ("digit-poly", "2", "abc"),
    ("salem", "0"),
    ("salem", "--range", "3..1"),
    ("check-pa", "--poly", "1,0,-2,1", "--m", "1", "--sign", "1"),
    ("experiment", "2", "--bmax", "1"),
    ("no-such-command",),
])
def test_invalid_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert json.loads(err.strip().splitlines()[-1])["error"]["exit_code"] == 2


def test_undecided_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("ZZPA_MAX_BISECTIONS", "1")
    code, _, err = run(capsys, "construct", "7", "4/13")
    assert code == 3
    assert json.loads(err)["error"]["kind"] == "undecided"


def test_construct_roundtrip(capsys, tmp_path):
    svg = tmp_path / "graph.svg"
    code, rep, _ = run_json(capsys, "construct", "3", "2/5", "--svg", str(svg))
    assert code == 0
    assert rep["verdict"]["pA_type"] and rep["phi"] == "2/5"
    assert rep["singularity"]["euler_sum"] == 4
    assert svg.read_text().startswith("<svg")
    jsonschema.validate(rep, SCHEMA)
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(rep))
    code, out, _ = run_json(capsys, "reverify", str(path))
    assert code == 0 and out["passed"], out


def test_tampered_report_fails_reverification(capsys, tmp_path):
    code, rep, _ = run_json(capsys, "limit-set", "2", "1/4")
    assert code == 0
    rep["limit_set"]["rectangles"][0]["y_hi"]["num"][0] += 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(rep))
    code, out, _ = run_json(capsys, "reverify", str(path))
    assert code == 1 and not out["checks"]["rectangles_tile"]


def test_check_pa_polynomial_input(capsys, tmp_path):
    code, rep, _ = run_json(capsys, "check-pa", "--poly=-1,-2,1", "--m", "2", "--sign", "1")
    assert code == 0
    assert rep["verdict"]["pA_type"] is False
    assert rep["verdict"]["reasons"] == ["D_f(λ⁻¹) ≠ 0"]
    assert rep["verdict"]["witness"]["num"] == [8, -4]
    jsonschema.validate(rep, SCHEMA)
    path = tmp_path / "gpa.json"
    path.write_text(json.dumps(rep))
    assert run_json(capsys, "reverify", str(path))[0] == 0


def test_check_pa_fraction_input(capsys):
    code, rep, _ = run_json(capsys, "check-pa", "4", "1/3")
    assert code == 0 and rep["verdict"]["pA_type"]


def test_check_pa_non_rectangular(capsys):
    code, rep, _ = run_json(capsys, "check-pa", "--poly=1,-3,-3,-3,1", "--m", "3", "--sign", "1")
    assert code == 0
    assert rep["verdict"]["condition1"] and not rep["verdict"]["pA_type"]
    assert rep["limit_set"]["rectangular"] is False
    jsonschema.validate(rep, SCHEMA)


def test_limit_set_svg(capsys, tmp_path):
    svg = tmp_path / "ls.svg"
    code, rep, _ = run_json(capsys, "limit-set", "2", "1/4", "--svg", str(svg))
    assert code == 0
    assert len(rep["limit_set"]["lifts"]) == 6
    assert svg.read_text().count("<circle") == 6


def test_salem_range_csv_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "salem", "--range", "1..4")
    _, parallel, _ = run(capsys, "salem", "--range", "1..4", "--jobs", "2")
    assert serial == parallel
    rows = list(csv.DictReader(io.StringIO(serial)))
    assert [r["g"] for r in rows] == ["1", "2", "3", "4"]
    assert rows[0]["lambda_decimal"] == "2.618033988750"
    assert all(r["is_salem"] == "true" for r in rows)
    assert [r["genus"] for r in rows] == ["1", "2", "3", "4"]


def test_experiment_csv(capsys, tmp_path):
    summary = tmp_path / "summary.json"
    code, out, _ = run(capsys, "experiment", "3", "--bmax", "6", "--summary", str(summary))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "a", "b", "q_decimal", "lambda_decimal", "defining_polynomial"]
    assert len(rows) == 1 + 11
    data = json.loads(summary.read_text())
    assert data["pairs"] == 55 and 0 <= data["order_agreements"] <= 55


def test_timings_optional(capsys):
    _, rep, _ = run_json(capsys, "digit-poly", "2", "1/3")
    assert "timings" not in rep
    _, rep, _ = run_json(capsys, "--timings", "digit-poly", "2", "1/3")
    assert rep["timings"]["total_seconds"] >= 0


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zzpa.cli", "digit-poly", "2", "1/3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["digit_polynomial"]["coefficients"] == [1, -2, 0, -2, 1]
