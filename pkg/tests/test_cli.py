"""Command-line interface: scenarios, reports, exit codes, determinism."""
from __future__ import annotations

import json

import pytest

from equifix import cli
from equifix.suites import SCHEMA_VERSION


def write_scenario(tmp_path, data, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def minimal_scenario(**extra):
    data = {
        "schema_version": SCHEMA_VERSION,
        "id": "unit-minimal",
        "objects": {},
        "suites": [{"name": "bounds", "params": {}}],
    }
    data.update(extra)
    return data


# ----------------------------------------------------------------- run: happy

def test_run_minimal_scenario(tmp_path, capsys):
    path = write_scenario(tmp_path, minimal_scenario())
    assert cli.main(["run", path]) == 0
    out = capsys.readouterr().out
    assert "bounds: PASS" in out
    assert "unit-minimal: PASS" in out


def test_run_writes_deterministic_report(tmp_path, capsys):
    path = write_scenario(tmp_path, minimal_scenario())
    report_a = tmp_path / "a.json"
    report_b = tmp_path / "b.json"
    assert cli.main(["run", path, "--report", str(report_a)]) == 0
    assert cli.main(["run", path, "--report", str(report_b)]) == 0
    assert report_a.read_bytes() == report_b.read_bytes()
    data = json.loads(report_a.read_text())
    assert data["schema_version"] == SCHEMA_VERSION
    assert data["scenario_id"] == "unit-minimal"
    assert data["passed"] is True
    assert data["suites"][0]["name"] == "bounds"
    assert "work" in data["timing"]


def test_run_with_objects_and_suite_filter(tmp_path, capsys):
    rep = {
        "kind": "rep",
        "group": {"type": "abelian", "factors": [2]},
        "trivial_dim": 1,
        "sign_chars": [[1]],
        "rot_chars": [],
    }
    data = {
        "schema_version": SCHEMA_VERSION,
        "id": "unit-objects",
        "objects": {"reps": [rep]},
        "suites": [
            {"name": "borel", "params": {"objects": "reps"}},
            {"name": "bounds", "params": {}},
        ],
    }
    path = write_scenario(tmp_path, data)
    assert cli.main(["run", path, "--suite", "borel"]) == 0
    out = capsys.readouterr().out
    assert "borel: PASS" in out
    assert "bounds" not in out


def test_run_parallel_matches_serial(tmp_path):
    data = minimal_scenario()
    data["suites"] = [{"name": "bounds", "params": {}},
                      {"name": "minkowski", "params": {}}]
    path = write_scenario(tmp_path, data)
    serial = tmp_path / "serial.json"
    parallel = tmp_path / "parallel.json"
    assert cli.main(["run", path, "--report", str(serial)]) == 0
    assert cli.main(["run", path, "--report", str(parallel),
                     "--parallel", "2"]) == 0
    assert serial.read_bytes() == parallel.read_bytes()


# -------------------------------------------------------------- run: failures

def test_run_suite_failure_exits_one(tmp_path, capsys):
    # a non-elementary-abelian rep crashes the formula check: the suite
    # reports the failure and the process exits 1
    rep = {
        "kind": "rep",
        "group": {"type": "abelian", "factors": [4]},
        "trivial_dim": 1,
        "sign_chars": [[2]],
        "rot_chars": [],
    }
    data = {
        "schema_version": SCHEMA_VERSION,
        "id": "unit-fail",
        "objects": {"reps": [rep]},
        "suites": [{"name": "borel", "params": {"objects": "reps"}}],
    }
    path = write_scenario(tmp_path, data)
    report = tmp_path / "report.json"
    assert cli.main(["run", path, "--report", str(report)]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    payload = json.loads(report.read_text())
    assert payload["passed"] is False
    failures = payload["suites"][0]["failures"]
    assert failures
    assert "reproducer" in failures[0]


def test_failure_reproducer_is_runnable_and_no_larger(tmp_path):
    rep = {
        "kind": "rep",
        "group": {"type": "abelian", "factors": [4]},
        "trivial_dim": 1,
        "sign_chars": [[2]],
        "rot_chars": [],
    }
    data = {
        "schema_version": SCHEMA_VERSION,
        "id": "unit-repro",
        "objects": {"reps": [rep]},
        "suites": [{"name": "borel", "params": {"objects": "reps"}}],
    }
    path = write_scenario(tmp_path, data)
    report = tmp_path / "report.json"
    assert cli.main(["run", path, "--report", str(report)]) == 1
    payload = json.loads(report.read_text())
    repro = payload["suites"][0]["failures"][0]["reproducer"]
    assert len(json.dumps(repro)) <= len(json.dumps(data))
    # the reproducer is itself a valid scenario that reproduces the failure
    repro_path = write_scenario(tmp_path, repro, "repro.json")
    assert cli.main(["run", repro_path]) == 1


# ------------------------------------------------------------- run: bad input

def test_missing_file_exits_two(tmp_path):
    assert cli.main(["run", str(tmp_path / "absent.json")]) == 2


def test_malformed_json_exits_two(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert cli.main(["run", str(path)]) == 2


def test_missing_keys_exit_two(tmp_path):
    path = write_scenario(tmp_path, {"id": "x"})
    assert cli.main(["run", path]) == 2


def test_unknown_suite_exits_three(tmp_path):
    data = minimal_scenario()
    data["suites"] = [{"name": "not-a-suite", "params": {}}]
    path = write_scenario(tmp_path, data)
    assert cli.main(["run", path]) == 3


def test_wrong_schema_version_exits_three(tmp_path):
    data = minimal_scenario(schema_version=99)
    path = write_scenario(tmp_path, data)
    assert cli.main(["run", path]) == 3


def test_unknown_object_kind_exits_three(tmp_path):
    data = minimal_scenario()
    data["objects"] = {"stuff": [{"kind": "mystery"}]}
    path = write_scenario(tmp_path, data)
    assert cli.main(["run", path]) == 3


def test_filter_for_absent_suite_exits_three(tmp_path):
    path = write_scenario(tmp_path, minimal_scenario())
    assert cli.main(["run", path, "--suite", "sphere"]) == 3


# ------------------------------------------------------------------- generate

def test_generate_writes_deterministic_payload(tmp_path, capsys):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    assert cli.main(["generate", "--kind", "abelian-family", "--seed", "0",
                     "--out", str(out_a)]) == 0
    assert cli.main(["generate", "--kind", "abelian-family", "--seed", "0",
                     "--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    payload = json.loads(out_a.read_text())
    assert len(payload["objects"]) == 117
    stdout = capsys.readouterr().out
    assert "117 objects" in stdout


def test_generate_objects_feed_back_into_run(tmp_path):
    out = tmp_path / "reps.json"
    assert cli.main(["generate", "--kind", "random-rep", "--seed", "5",
                     "--size", "4", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    data = {
        "schema_version": SCHEMA_VERSION,
        "id": "unit-generated",
        "objects": {"models": payload["objects"]},
        "suites": [{"name": "disk", "params": {"objects": "models"}}],
    }
    path = write_scenario(tmp_path, data)
    assert cli.main(["run", path]) == 0


def test_generate_unknown_kind_exits_three(tmp_path):
    out = tmp_path / "x.json"
    assert cli.main(["generate", "--kind", "bogus", "--seed", "0",
                     "--out", str(out)]) == 3


# -------------------------------------------------------------------- explain

def test_explain_all_suites(capsys):
    assert cli.main(["explain"]) == 0
    out = capsys.readouterr().out
    for name in ["borel", "lefschetz", "smith", "power-core", "descent",
                 "disk", "sphere", "characteristic", "minkowski", "bounds",
                 "pipeline"]:
        assert name in out


def test_explain_single_suite(capsys):
    assert cli.main(["explain", "--suite", "borel"]) == 0
    out = capsys.readouterr().out
    assert "borel" in out
    assert "lefschetz" not in out
