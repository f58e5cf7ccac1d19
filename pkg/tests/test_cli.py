"""Tests for the superali command line."""

import json

import pytest

from py_superali import __version__
from py_superali.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, main
from py_superali.report import CheckResult, VerificationReport


@pytest.fixture(autouse=True)
def no_threads(monkeypatch):
    monkeypatch.delenv("SUPERALI_THREADS", raising=False)


class TestParser:
    """Tests for argument parsing."""

    def test_defaults(self):
        """Test the shared option defaults."""
        args = build_parser().parse_args(["span", "--algebra", "sl(2)", "--kmax", "4"])

        assert (args.format, args.seed, args.no_cache, args.verbose) == ("json", 0, False, 0)

    def test_verify_defaults_to_all(self):
        """Test the default suite."""
        assert build_parser().parse_args(["verify"]).suite == "all"

    def test_command_required(self, capsys):
        """Test that a bare invocation is a usage error."""
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == EXIT_USAGE

    def test_unknown_method_rejected(self):
        """Test argparse choices for --method."""
        with pytest.raises(SystemExit) as exc:
            main(["bench", "--algebra", "gl(2)", "--r", "2", "--method", "fast"])
        assert exc.value.code == EXIT_USAGE

    def test_version(self, capsys):
        """Test --version output."""
        with pytest.raises(SystemExit) as exc:
            main(["--version"])

        assert exc.value.code == 0
        assert __version__ in capsys.readouterr().out


class TestCommands:
    """Tests for command output and exit status."""

    def test_matrix_identity_json(self, capsys):
        """Test JSON output of matrix-identity."""
        code = main(["matrix-identity", "--algebra", "gl(2)", "--r", "4", "--no-cache"])

        payload = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert payload["command"] == "matrix-identity"
        assert payload["summary"] == {"identity": True}

    def test_span_text(self, capsys):
        """Test text output of span."""
        code = main(["span", "--algebra", "sl(2)", "--kmax", "3", "--format", "text", "--no-cache"])

        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert out.startswith("span sl(2)")
        assert "  2: nonvanishing (lands-in-spec)" in out

    def test_subcritical(self, capsys, tmp_path):
        """Test the subcritical command on a field file."""
        path = tmp_path / "fields.txt"
        path.write_text("d/dx\nx*d/dx\nx^2*d/dx\n")

        code = main(["subcritical", "--fields", str(path), "--no-cache"])

        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["summary"]["matches"] is True

    def test_bad_algebra_is_usage_error(self, capsys):
        """Test that input errors print to stderr and exit 2."""
        code = main(["span", "--algebra", "sl(1)", "--kmax", "4", "--no-cache"])

        captured = capsys.readouterr()
        assert code == EXIT_USAGE
        assert captured.out == ""
        assert captured.err.startswith("superali: error: ")

    def test_failed_suite_exits_one(self, capsys, mocker):
        """Test that a failing verification suite exits 1."""
        report = VerificationReport(suite="span", checks=[CheckResult("x", False, "boom")])
        mocker.patch("py_superali.cli.SuperAliAPI.verify", return_value=report)

        code = main(["verify", "--suite", "span", "--no-cache", "--format", "text"])

        assert code == EXIT_FAILED
        assert "verify span: FAIL" in capsys.readouterr().out

    def test_passing_suite_exits_zero(self, capsys):
        """Test a real suite run."""
        code = main(["verify", "--suite", "sign-cocycle", "--no-cache"])

        payload = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert payload["passed"] is True

    def test_repeated_runs_are_byte_identical(self, capsys, mocker):
        """Test that identical argv and seed print identical JSON."""
        # Arrange
        clock = mocker.patch("py_superali.antisym.time")
        clock.perf_counter.return_value = 0.0
        argv = ["span", "--algebra", "sl(2|1)", "--kmax", "4", "--seed", "5", "--no-cache"]

        # Act
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out

        # Assert
        assert first == second
        assert json.loads(first)["summary"]
