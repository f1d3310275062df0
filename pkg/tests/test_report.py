"""
Tests for check reports.
"""
import json

from restrictcat.report import CheckReport, Status, Violation, combine


def test_status_follows_violations():
    """Test pass, fail, not-applicable and input-error statuses."""
    report = CheckReport(check="demo")
    assert report.status == Status.PASS
    report.applicable = False
    assert report.status == Status.NOT_APPLICABLE
    assert report.passed
    report.violate("R1", f="2")
    assert report.status == Status.FAIL
    assert not report.passed
    assert CheckReport.input_error("demo", "bad file").status == Status.INPUT_ERROR


def test_serialisation_is_sorted():
    """Test that violation order does not change the JSON output."""
    first = CheckReport(check="demo")
    first.violate("R3", f="1", g="2")
    first.violate("R1", f="4")
    second = CheckReport(check="demo")
    second.violate("R1", f="4")
    second.violate("R3", g="2", f="1")
    assert first.to_json() == second.to_json()
    assert first.digest() == second.digest()
    assert [v["law"] for v in json.loads(first.to_json())["violations"]] == ["R1", "R3"]


def test_text_rendering():
    """Test that the text form lists witnesses and notes."""
    report = CheckReport(check="demo", metadata={"checked": 3})
    report.violate("associativity", h="3", g="2", f="3")
    report.note("hypothesis-unmet")
    text = report.to_text()
    assert text.splitlines()[0] == "demo: fail"
    assert "[associativity] f=3, g=2, h=3" in text
    assert "note: hypothesis-unmet" in text


def test_merge_prefixes_laws():
    """Test that merged laws carry the sub-check prefix."""
    outer = CheckReport(check="outer")
    inner = CheckReport(check="inner")
    inner.violate("R2", f="1")
    inner.note("skipped")
    outer.merge(inner, prefix="inner")
    assert outer.laws() == ["inner:R2"]
    assert outer.notes == ["inner: skipped"]


def test_combine_records_sub_statuses():
    """Test combine over a passing and a failing report."""
    good = CheckReport(check="category")
    bad = CheckReport(check="restriction")
    bad.violate("R4", f="2", g="3")
    combined = combine("check", [good, bad])
    assert combined.metadata == {"category": "pass", "restriction": "fail"}
    assert combined.laws() == ["restriction:R4"]
    empty = combine("check", [CheckReport(check="x", applicable=False)])
    assert empty.status == Status.NOT_APPLICABLE


def test_violation_mentions():
    """Test witness lookups."""
    violation = Violation.of("extensive", member="delta", legs="a,b")
    assert violation.mentions("delta")
    assert not violation.mentions("iota1")
