from __future__ import annotations

import csv
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from falsetheta.cli import VerificationTask, build_points, main, parse_range, run
from falsetheta.cyclotomic import root_power
from falsetheta.report import report_schema, serialize_value


def run_json(tmp_path, *args):
    out = tmp_path / "report.json"
    code = main(["verify", *args, "--out", str(out)])
    return code, json.loads(out.read_text()) if out.exists() else None


def strip_times(records):
    for r in records:
        r.pop("wall_time")
    return records


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("5,1,3") == [1, 3, 5]
    assert parse_range("all") is None


def test_hikami_grid_passes(tmp_path):
    code, records = run_json(tmp_path, "--suite", "hikami", "--m", "2..3", "--N", "1..3")
    assert code == 0
    assert records and all(r["status"] == "equal" for r in records)
    # m=2: a=0; m=3: a=0,1; N=1..3 has 1+1+2 roots; two identities per point
    assert len(records) == 3 * 4 * 2


def test_single_point_record(tmp_path):
    code, records = run_json(tmp_path, "--suite", "hikami", "--m", "3", "--a", "1", "--N", "1", "--M", "1")
    assert code == 0
    thm = next(r for r in records if r["parameters"]["identity"] == "theorem")
    expected = serialize_value(2 * root_power(12, 1))
    assert thm["lhs"] == thm["rhs"] == expected
    assert thm["field_order"] == 12
    assert "printed" in thm["note"]


def test_malformed_grid_exit_code(tmp_path, capsys):
    code, records = run_json(tmp_path, "--suite", "hikami", "--m", "3", "--a", "2")
    assert code == 2 and records is None
    assert "outside" in capsys.readouterr().err


@pytest.mark.parametrize("args", [["--suite", "nope"], ["--suite", "hikami", "--N", "x..y"],
                                  ["--suite", "example1", "--a", "1"], ["--suite", "hikami", "--m", "1"]])
def test_usage_errors(args, tmp_path):
    assert main(["verify", *args, "--out", str(tmp_path / "r.json")]) == 2


def test_even_N_is_skipped_for_examples(tmp_path):
    code, records = run_json(tmp_path, "--suite", "example1", "--m", "2", "--N", "1..2")
    assert code == 0
    skipped = [r for r in records if r["status"] == "skipped"]
    assert skipped and all(r["parameters"]["N"] == 2 for r in skipped)
    assert all(r["lhs"] is None for r in skipped)


def test_mismatch_exit_code(tmp_path):
    code, records = run_json(tmp_path, "--suite", "radial", "--m", "2", "--N", "1", "--tolerance", "1e-40")
    assert code == 1
    assert any(r["status"] == "mismatch" for r in records)


def test_schema_validates_reports(tmp_path):
    schema = report_schema()
    for field in ("suite", "parameters", "status", "lhs", "rhs", "field_order"):
        assert field in schema["properties"]
    for suite, extra in (("hikami", []), ("example2", ["--N", "1..2"]), ("quantum", ["--N", "3"]),
                         ("series", ["--m", "2", "--order", "6"]), ("bailey", ["--m", "1", "--nmax", "1", "--order", "8"]),
                         ("radial", ["--m", "2", "--N", "1"])):
        code, records = run_json(tmp_path, "--suite", suite, *extra)
        assert code == 0, suite
        for r in records:
            jsonschema.validate(r, schema)


def test_schema_rejects_missing_status():
    record = {"suite": "hikami", "parameters": {}, "status": "equal", "lhs": None, "rhs": None,
              "field_order": None}
    jsonschema.validate(record, report_schema())
    del record["status"]
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(record, report_schema())


def test_schema_is_stable(capsys):
    assert main(["schema"]) == 0
    first = capsys.readouterr().out
    assert main(["schema"]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first) == report_schema()


def test_reports_are_deterministic(tmp_path):
    task = dict(suite="hikami", m=[2, 3], N=[1, 2, 3])
    _, serial = run(VerificationTask(**task, jobs=1))
    _, parallel = run(VerificationTask(**task, jobs=3))
    a = strip_times([r.to_dict() for r in serial])
    b = strip_times([r.to_dict() for r in parallel])
    assert a == b


def test_points_are_sorted_and_respect_hypotheses():
    pts = build_points(VerificationTask("quantum", m=[2, 3], N=[1, 3]))
    assert {p["kind"] for p in pts} == {"U", "V"}
    assert all(p["a"] == 0 for p in pts if p["kind"] == "U")
    assert all(0 <= p["a"] <= p["m"] - 2 for p in pts)


def test_csv_and_text_formats(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["verify", "--suite", "hikami", "--m", "2", "--N", "1..2", "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert rows and rows[0]["status"] == "equal"
    out = tmp_path / "r.txt"
    assert main(["verify", "--suite", "hikami", "--m", "2", "--N", "1", "--format", "text", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[-1] == "equal=2 mismatch=0 skipped=0"


def test_atomic_write_leaves_no_temp_files(tmp_path):
    run_json(tmp_path, "--suite", "hikami", "--m", "2", "--N", "1")
    assert sorted(os.listdir(tmp_path)) == ["report.json"]


def test_jobs_default_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("FALSETHETA_JOBS", "2")
    code, records = run_json(tmp_path, "--suite", "hikami", "--m", "2", "--N", "1..2")
    assert code == 0 and len(records) == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "falsetheta", "verify", "--suite", "hikami",
                           "--m", "2", "--N", "1", "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "equal=2" in proc.stdout
