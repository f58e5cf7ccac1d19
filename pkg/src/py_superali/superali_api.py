"""py-superali facade interface."""

import logging
from pathlib import Path

from .algebras import MatrixAlgebraSpec
from .antisym import antisymmetrize_generic, closure_of, span_scan
from .bench import run_bench
from .commutator_formulas import h5_constant
from .constant_store import ConstantStore, default_constants_file
from .constants import Classification, DefaultDegrees
from .field_file import FieldFile, load_field_file
from .report import BenchReport, ScanItem, ScanReport, VerificationReport
from .superscalar import Rational
from .suites import AcceptanceSuites
from .vectorfields import VectorialSpec, critical_scan, subcritical_eval
from .workers import resolve_worker_count

logger = logging.getLogger(__name__)


def default_degree(spec: VectorialSpec) -> int:
    """Acceptance truncation degree for the family."""
    if spec.family == "vect":
        return DefaultDegrees.VECT1 if spec.n == 1 else DefaultDegrees.VECT2
    if spec.family == "svect":
        return DefaultDegrees.SVECT2
    return DefaultDegrees.H2


class SuperAliAPI:
    """Main interface for antisymmetrizer and N-commutator computations.

    Example:
        >>> api = SuperAliAPI(seed=0)
        >>> api.span("sl(3)", k_max=8).summary["nonvanishing"]
        [2, 4]
        >>> api.matrix_identity("gl(2)", r=4).item(4).classification
        'zero'
    """

    def __init__(
        self,
        workers: int | None = None,
        seed: int = 0,
        constants_file: str | None = None,
        use_cache: bool = True,
        store: ConstantStore | None = None,
    ) -> None:
        self.workers = resolve_worker_count(workers)
        self.seed = seed
        if store is None and use_cache:
            store = ConstantStore(constants_file or default_constants_file())
        self._store = store
        self._suites = AcceptanceSuites(store=self._store, workers=self.workers, seed=seed)
        logger.debug(f"SuperAliAPI with {self.workers} workers, seed {seed}")

    def span(self, algebra: str, k_max: int) -> ScanReport:
        """Which a_2..a_kMax are nonvanishing on the algebra."""
        spec = MatrixAlgebraSpec.parse(algebra)
        report = span_scan(spec, k_max, workers=self.workers).to_scan_report()
        report.parameters["seed"] = self.seed
        return report

    def matrix_identity(self, algebra: str, r: int) -> ScanReport:
        """Whether a_r vanishes identically on the algebra."""
        spec = MatrixAlgebraSpec.parse(algebra)
        power = antisymmetrize_generic(spec, r)
        item = ScanItem(
            index=r,
            classification=Classification.ZERO if power.is_zero else Classification.NONVANISHING,
            closure=closure_of(spec, power),
        )
        return ScanReport(
            command="matrix-identity",
            spec=str(spec),
            parameters={"r": r},
            summary={"identity": power.is_zero},
            items=[item],
        )

    def vect_critical(
        self,
        algebra: str,
        n_min: int,
        n_max: int,
        degree: int | None = None,
        allow_long: bool = False,
        reverify: bool = False,
    ) -> ScanReport:
        """Classify D^N on a truncated vectorial algebra."""
        spec = VectorialSpec.parse(algebra, 0)
        spec = spec.with_degree(default_degree(spec) if degree is None else degree)
        return critical_scan(
            spec, n_min, n_max, reverify=reverify, allow_long=allow_long, workers=self.workers
        )

    def subcritical(self, fields: str | Path | FieldFile) -> ScanReport:
        """A_3(ad X_1, ad X_2, ad X_3)(Y) on vect(1) fields read from a file."""
        parsed = fields if isinstance(fields, FieldFile) else load_field_file(fields)
        result = subcritical_eval(parsed.fields, parsed.y)
        return ScanReport(
            command="subcritical",
            spec="vect(1)",
            parameters={"fields": [str(field) for field in parsed.fields], "y": str(parsed.y)},
            summary={
                "multiplier": str(result.multiplier),
                "wronskian": str(result.wronskian),
                "value": str(result.value),
                "matches": result.matches,
            },
            items=[],
        )

    def verify(self, suite: str = "all") -> VerificationReport:
        """Run a named acceptance suite."""
        return self._suites.run(suite)

    def bench(self, algebra: str, r: int, method: str) -> BenchReport:
        """Time a_r on the algebra with the naive or generic method."""
        return run_bench(MatrixAlgebraSpec.parse(algebra), r, method, workers=self.workers)

    def h5_constant(self) -> Rational:
        """The Hamiltonian 5-commutator constant, cached unless caching is off."""
        return h5_constant(self._store)
