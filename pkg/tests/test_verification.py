import json

import numpy as np
import pytest

from fractal_hodge.analysis import VerificationReport, run_suite, counting_suite


def test_report_statuses():
    report = VerificationReport("unit")
    assert report.check_equal("a", "equal numbers", 1, 1) == "pass"
    assert report.check_close("b", "close arrays", np.ones(3), np.ones(3) + 1e-14, 1e-12) == "pass"
    assert report.add_check("c", "tabulated value", False, 1, 2, erratum=True, citation="table") == "erratum"
    assert report.add_check("d", "plain failure", False, 1, 2) == "fail"
    assert report.summary() == {"pass": 2, "fail": 1, "erratum": 1}
    assert not report.passed
    assert list(report.errata["id"]) == ["c"]


def test_report_rejects_duplicates_and_uncited_errata():
    report = VerificationReport("unit")
    report.check_equal("a", "x", 1, 1)
    with pytest.raises(ValueError):
        report.check_equal("a", "x", 1, 1)
    with pytest.raises(ValueError):
        report.add_check("b", "x", False, erratum=True)


def test_report_table_built_on_demand():
    report = VerificationReport("unit")
    assert report.df.empty and report.passed
    for i in range(500):
        report.check_equal(f"c{i}", "x", i, i)
    table = report.df
    assert len(table) == 500 and list(table.columns) == VerificationReport.columns
    assert report.df is table
    report.add_check("late", "x", False)
    assert report.df is not table
    assert list(report.failures["id"]) == ["late"]


def test_report_json(tmp_path):
    report = VerificationReport("unit", save_path=str(tmp_path), seed=7)
    report.check_equal("a", "x", 1, 1)
    doc = json.loads(report.to_json())
    assert doc["schema_version"] == 1
    assert doc["environment"]["seed"] == 7
    assert doc["checks"][0]["status"] == "pass"
    report.save("r")
    assert (tmp_path / "r.json").exists() and (tmp_path / "r.csv").exists()


def test_counting_suite_passes():
    report = VerificationReport("counting")
    counting_suite(report, levels=range(2, 4), generations=(0, 1))
    assert report.passed
    assert len(report.df) > 50


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("bogus")


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["complex", "harmonic", "kusuoka"])
def test_full_suites(suite):
    report = run_suite(suite)
    assert report.passed, report.failures.to_string()
