"""Tests for AcceptanceSuites."""

import pytest

from py_superali.exceptions import DomainMismatchError, ValidationError
from py_superali.report import CheckResult
from py_superali.suites import AcceptanceSuites


@pytest.fixture
def suites(constant_store) -> AcceptanceSuites:
    return AcceptanceSuites(store=constant_store, workers=1, seed=0)


class TestRun:
    """Tests for suite selection."""

    def test_unknown_suite(self, suites):
        """Test that unknown names are rejected."""
        with pytest.raises(ValidationError, match="Unknown suite 'nope'"):
            suites.run("nope")

    def test_sign_cocycle_passes(self, suites):
        """Test the permutation sign suite end to end."""
        report = suites.run("sign-cocycle")

        assert report.suite == "sign-cocycle"
        assert report.passed
        assert len(report.checks) == 4
        assert set(report.timing) == {check.name for check in report.checks}

    def test_all_skips_long(self, suites, mocker):
        """Test that "all" runs every suite except the long one."""
        # Arrange
        names = [n for n in AcceptanceSuites.NAMES if n != "all"]
        patched = {
            name: mocker.patch.object(
                AcceptanceSuites,
                "_suite_" + name.replace("-", "_"),
                return_value=[CheckResult(name, True)],
            )
            for name in names
        }

        # Act
        report = suites.run("all")

        # Assert
        patched["long"].assert_not_called()
        assert [check.name for check in report.checks] == [n for n in names if n != "long"]
        assert report.passed

    def test_failures_collected(self, suites, mocker):
        """Test that one failing check fails the report."""
        mocker.patch.object(
            AcceptanceSuites,
            "_suite_span",
            return_value=[CheckResult("good", True), CheckResult("bad", False, "nope")],
        )

        report = suites.run("span")

        assert not report.passed
        assert [check.name for check in report.failures()] == ["bad"]


class TestCheck:
    """Tests for the single-check wrapper."""

    def test_tuple_outcome_carries_detail(self, suites):
        """Test (passed, detail) outcomes."""
        result = suites._check("pair", lambda: (False, "a_4 != 0"))
        assert result == CheckResult("pair", False, "a_4 != 0")

    def test_library_errors_become_failures(self, suites):
        """Test that a raised SuperAliError fails the check instead of the run."""

        def broken():
            raise DomainMismatchError("fields live on different domains")

        result = suites._check("broken", broken)

        assert not result.passed
        assert result.detail == "error: fields live on different domains"

    def test_other_errors_propagate(self, suites):
        """Test that programming errors are not swallowed."""
        with pytest.raises(ZeroDivisionError):
            suites._check("div", lambda: 1 / 0)
