"""Tests for scan, verification and benchmark reports."""

import json
from fractions import Fraction

from py_superali import __version__
from py_superali.constants import Classification, Closure
from py_superali.report import (
    BenchReport,
    CheckResult,
    ScanItem,
    ScanReport,
    VerificationReport,
    jsonable,
)


def make_report(timing=None) -> ScanReport:
    return ScanReport(
        command="span",
        spec="sl(2)",
        parameters={"kMax": 3, "seed": 0},
        items=[
            ScanItem(2, Classification.NONVANISHING, closure=Closure.LANDS),
            ScanItem(3, Classification.NONVANISHING, closure=Closure.LEAVES),
        ],
        summary={"nonvanishing": frozenset({2}), "constant": Fraction(-3, 2)},
        timing=timing or {},
    )


class TestJsonable:
    """Tests for JSON conversion of report values."""

    def test_fractions_become_p_over_q(self):
        """Test that rationals are written as strings."""
        assert jsonable({"c": Fraction(1, 3)}) == {"c": "1/3"}

    def test_sets_are_sorted_lists(self):
        """Test that sets serialize deterministically."""
        assert jsonable(frozenset({5, 2, 3})) == [2, 3, 5]

    def test_keys_become_strings(self):
        """Test that integer keys are stringified."""
        assert jsonable({4: (1, 2)}) == {"4": [1, 2]}


class TestScanReport:
    """Tests for ScanReport."""

    def test_key_order(self):
        """Test the fixed top-level key order."""
        payload = json.loads(make_report().to_json())
        assert list(payload) == [
            "command", "spec", "version", "parameters", "summary", "results", "timing"
        ]
        assert payload["version"] == __version__

    def test_summary_values_serialized(self):
        """Test sets and rationals inside the summary."""
        payload = json.loads(make_report().to_json())
        assert payload["summary"] == {"nonvanishing": [2], "constant": "-3/2"}

    def test_optional_item_fields_omitted(self):
        """Test that unset order and note do not appear."""
        item = ScanItem(4, Classification.ZERO).to_dict()
        assert item == {"index": 4, "classification": "zero"}

    def test_digest_ignores_timing(self):
        """Test that reports differing only in timing hash equally."""
        fast = make_report({"2": 1.0})
        slow = make_report({"2": 900.0})
        assert fast.digest() == slow.digest()

    def test_digest_depends_on_results(self):
        """Test that different classifications hash differently."""
        other = make_report()
        other.items[1] = ScanItem(3, Classification.ZERO)
        assert other.digest() != make_report().digest()

    def test_item_lookup(self):
        """Test item() by index."""
        report = make_report()
        assert report.item(3).closure == Closure.LEAVES
        assert report.classifications() == {2: "nonvanishing", 3: "nonvanishing"}

    def test_text_format(self):
        """Test the human-readable rendering."""
        text = make_report().to_text()
        assert text.splitlines()[0] == "span sl(2)"
        assert "  3: nonvanishing (leaves-spec)" in text


class TestVerificationReport:
    """Tests for VerificationReport."""

    def test_passed_needs_every_check(self):
        """Test pass/fail aggregation."""
        report = VerificationReport(
            suite="span",
            checks=[CheckResult("a", True), CheckResult("b", False, "mismatch")],
        )
        assert not report.passed
        assert [check.name for check in report.failures()] == ["b"]

    def test_payload(self):
        """Test the serialized verification report."""
        report = VerificationReport(suite="span", checks=[CheckResult("a", True)])
        payload = json.loads(report.to_json())
        assert payload["command"] == "verify"
        assert payload["passed"] is True
        assert payload["checks"] == [{"name": "a", "passed": True, "detail": ""}]

    def test_text_marks_failures(self):
        """Test the FAIL marker in text output."""
        report = VerificationReport(suite="x", checks=[CheckResult("b", False, "mismatch")])
        assert report.to_text().splitlines() == ["verify x: FAIL", "  [FAIL] b - mismatch"]


class TestBenchReport:
    """Tests for BenchReport."""

    def test_elapsed_rounded(self):
        """Test that elapsed_ms is rounded to microseconds."""
        report = BenchReport("gl(2)", "generic", 3, 4, 27, 12, False, 1.23456)
        payload = report.to_dict()
        assert payload["elapsed_ms"] == 1.235
        assert payload["command"] == "bench"
        assert "nonzero" in report.to_text()
