"""Command-line front end: ``superali <command> ...``.

Reports go to stdout, logs to stderr. Exit status is 0 on success, 1 when a
verification suite fails and 2 on usage or input errors.
"""

import argparse
import logging
import sys
from collections.abc import Sequence

from . import __version__
from .bench import METHODS
from .constants import Grammar
from .exceptions import SuperAliError
from .report import BenchReport, ScanReport, VerificationReport
from .suites import AcceptanceSuites
from .superali_api import SuperAliAPI

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

Report = ScanReport | VerificationReport | BenchReport


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs"
    )
    common.add_argument("--seed", type=int, default=0, help="Sampling seed (default 0)")
    common.add_argument(
        "--no-cache", action="store_true", help="Do not read or write cached constants"
    )
    common.add_argument(
        "--format", choices=("json", "text"), default="json", help="Report format"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="superali",
        description="Antisymmetrizer identities on matrix Lie superalgebras "
        "and N-commutators on vectorial Lie algebras.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    span = commands.add_parser(
        "span", parents=[common], help="Which a_k are nonvanishing on a matrix algebra"
    )
    span.add_argument("--algebra", required=True, help=f"One of: {Grammar.MATRIX}")
    span.add_argument("--kmax", type=int, required=True, help="Largest k to scan")

    identity = commands.add_parser(
        "matrix-identity", parents=[common], help="Whether a_r vanishes on a matrix algebra"
    )
    identity.add_argument("--algebra", required=True, help=f"One of: {Grammar.MATRIX}")
    identity.add_argument("--r", type=int, required=True, help="Number of arguments")

    critical = commands.add_parser(
        "vect-critical", parents=[common], help="Classify D^N on a vectorial algebra"
    )
    critical.add_argument("--algebra", required=True, help=f"One of: {Grammar.VECTORIAL}")
    critical.add_argument("--degree", type=int, help="Coefficient truncation degree")
    critical.add_argument("--nmin", type=int, required=True)
    critical.add_argument("--nmax", type=int, required=True)
    critical.add_argument("--long", action="store_true", help="Allow long-running scans")
    critical.add_argument(
        "--reverify", action="store_true", help="Recheck zero results at degree + 1"
    )

    subcritical = commands.add_parser(
        "subcritical",
        parents=[common],
        help="A_3(ad X_1, ad X_2, ad X_3)(Y) on vect(1)",
        description="Field file: one field per line, each a "
        f"{Grammar.FIELD_LINE}. Lines 1-3 are X_1..X_3, an optional line 4 is Y "
        "(default d/dx). Text after '#' is ignored.",
    )
    subcritical.add_argument("--fields", required=True, help="Path to the field file")

    verify = commands.add_parser("verify", parents=[common], help="Run an acceptance suite")
    verify.add_argument("--suite", choices=AcceptanceSuites.NAMES, default="all")

    bench = commands.add_parser(
        "bench", parents=[common], help="Time the naive sum against the generic element"
    )
    bench.add_argument("--algebra", required=True, help=f"One of: {Grammar.MATRIX}")
    bench.add_argument("--r", type=int, required=True)
    bench.add_argument("--method", choices=METHODS, required=True)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _dispatch(api: SuperAliAPI, args: argparse.Namespace) -> Report:
    match args.command:
        case "span":
            return api.span(args.algebra, args.kmax)
        case "matrix-identity":
            return api.matrix_identity(args.algebra, args.r)
        case "vect-critical":
            return api.vect_critical(
                args.algebra,
                args.nmin,
                args.nmax,
                degree=args.degree,
                allow_long=args.long,
                reverify=args.reverify,
            )
        case "subcritical":
            return api.subcritical(args.fields)
        case "verify":
            return api.verify(args.suite)
        case _:
            return api.bench(args.algebra, args.r, args.method)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        api = SuperAliAPI(seed=args.seed, use_cache=not args.no_cache)
        report = _dispatch(api, args)
    except SuperAliError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"superali: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_json() if args.format == "json" else report.to_text())
    if isinstance(report, VerificationReport) and not report.passed:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
