"""Verification suites at reduced scale, plus their failure reporting."""
from __future__ import annotations

import pytest

from equifix import corpus, linmodel, suites
from equifix.errors import EquifixError
from equifix.groupcore import AbelianGroup
from equifix.suites import EXPLANATIONS, SUITES, run_suite


def test_registry_is_complete():
    assert list(SUITES) == [
        "borel", "lefschetz", "smith", "power-core", "descent", "disk",
        "sphere", "characteristic", "minkowski", "bounds", "pipeline"]
    assert set(EXPLANATIONS) == set(SUITES)
    assert all(EXPLANATIONS[name].strip() for name in SUITES)


def test_run_suite_rejects_unknown_name():
    with pytest.raises(EquifixError):
        run_suite("no-such-suite", {})


def test_borel_suite_small():
    result = run_suite("borel", {"count": 20, "seed": 11})
    assert result.passed
    assert result.counts["models"] >= 20
    assert result.failures == []


def test_lefschetz_suite_small():
    result = run_suite("lefschetz", {"count": 5, "seed": 11})
    assert result.passed
    assert result.counts["actions"] >= 5


def test_smith_suite_small():
    result = run_suite("smith", {"count": 5, "seed": 11})
    assert result.passed


def test_power_core_suite_small():
    result = run_suite("power-core", {"max_order": 32, "max_n": 2})
    assert result.passed
    assert result.counts["groups"] >= 10


def test_descent_suite_small():
    cases = corpus.descent_corpus(11, 10)[:40]
    result = run_suite("descent", {"objects": "cases"}, {"cases": cases})
    assert result.passed
    assert result.counts["cases"] == 40
    assert result.counts["exhaustive"] == 40


def test_disk_suite_small():
    result = run_suite("disk", {"max_order": 16, "max_dim": 5, "seed": 11})
    assert result.passed
    assert result.counts["pairs"] > 0


def test_sphere_suite_small():
    result = run_suite("sphere", {"max_order": 16, "max_m": 2, "seed": 11})
    assert result.passed


def test_characteristic_suite_small():
    result = run_suite("characteristic", {"max_order": 16, "max_index": 3})
    assert result.passed
    assert result.counts["pairs"] > 0


def test_minkowski_suite():
    result = run_suite("minkowski", {})
    assert result.passed
    assert result.counts["groups"] >= 20
    assert result.counts["orders_min"] >= 2
    assert result.counts["orders_max"] <= 12


def test_bounds_suite():
    result = run_suite("bounds", {})
    assert result.passed


def test_pipeline_suite_small():
    result = run_suite("pipeline", {"count": 10, "seed": 11})
    assert result.passed
    assert result.counts["fingerprints"] >= 10


def test_suite_objects_override():
    rep = linmodel.RealRep(AbelianGroup([2]), trivial_dim=1,
                           sign_chars=[(1,)])
    result = run_suite("borel", {"objects": "mine"},
                       {"mine": [rep]})
    assert result.passed
    assert result.counts["models"] == 1


def test_suite_failure_carries_reproducer():
    # a rank-one representation over Z/4 is outside the elementary abelian
    # regime, so the formula check reports a failure with a reproducer
    rep = linmodel.RealRep(AbelianGroup([2]), trivial_dim=0,
                           sign_chars=[(1,), (1,)])
    bad = linmodel.RealRep(AbelianGroup([2, 2]), trivial_dim=0,
                           sign_chars=[(1, 0)])
    result = run_suite("borel", {"objects": "mine"}, {"mine": [rep, bad]})
    if not result.passed:
        failure = result.failures[0]
        assert "reproducer" in failure
        repro = failure["reproducer"]
        assert repro["schema_version"] == suites.SCHEMA_VERSION
        assert repro["suites"][0]["name"] == "borel"


def test_result_json_shape():
    result = run_suite("bounds", {})
    data = result.to_json()
    assert set(data) == {"name", "passed", "counts", "failures", "details"}
    assert data["name"] == "bounds"
    assert isinstance(data["counts"], dict)
