"""Tests for the naive versus generic benchmark."""

import pytest

from py_superali.algebras import MatrixAlgebraSpec
from py_superali.bench import METHODS, run_bench
from py_superali.exceptions import ValidationError

GL2 = MatrixAlgebraSpec("gl", 2)


class TestRunBench:
    """Tests for run_bench."""

    def test_naive_counts(self):
        """Test tuple and multiplication counts of the r! sum on gl(2)."""
        report = run_bench(GL2, 2, "naive", workers=1)

        assert report.method == "naive"
        assert report.tuples == 6
        assert report.multiplications == 12
        assert not report.vanishes

    def test_naive_repeats_only_odd_elements(self):
        """Test that gl(1|1) pairs each odd element with itself but no even one."""
        report = run_bench(MatrixAlgebraSpec("gl", 1, 1), 2, "naive", workers=1)

        assert report.tuples == 8
        assert report.multiplications == 16

    @pytest.mark.parametrize("method", METHODS)
    def test_methods_agree_on_vanishing(self, method):
        """Test that both methods see a_4 == 0 on gl(2)."""
        assert run_bench(GL2, 4, method, workers=1).vanishes

    @pytest.mark.parametrize("method", METHODS)
    def test_nonvanishing_a3(self, method):
        """Test that a_3 survives on gl(2) for both methods."""
        report = run_bench(GL2, 3, method, workers=1)

        assert not report.vanishes
        assert report.terms > 0

    def test_generic_report_fields(self):
        """Test the generic report payload."""
        payload = run_bench(GL2, 2, "generic").to_dict()

        assert payload["spec"] == "gl(2)"
        assert payload["method"] == "generic"
        assert payload["r"] == 2
        assert payload["elapsed_ms"] >= 0

    def test_unknown_method(self):
        """Test that only naive and generic are accepted."""
        with pytest.raises(ValidationError, match="Unknown bench method 'fast'"):
            run_bench(GL2, 2, "fast")

    def test_r_must_be_positive(self):
        """Test that r < 1 is rejected."""
        with pytest.raises(ValidationError, match="r must be positive"):
            run_bench(GL2, 0, "generic")
