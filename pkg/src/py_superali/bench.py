"""Naive r! sum versus the generic-element path on one matrix algebra."""

import logging
import math
import time
from itertools import combinations_with_replacement

from .algebras import MatrixAlgebraSpec, basis, generic_element
from .antisym import OperatorTuple, antisymmetrize_naive
from .exceptions import ValidationError
from .report import BenchReport
from .types import BenchMethod
from .validators import validate_naive_order, validate_positive
from .workers import ordered_map, resolve_worker_count

logger = logging.getLogger(__name__)

METHODS: tuple[BenchMethod, ...] = ("naive", "generic")


def _bench_naive(spec: MatrixAlgebraSpec, r: int, workers: int) -> BenchReport:
    validate_naive_order(r)
    elements = basis(spec)
    # only odd arguments may repeat without killing the antisymmetrizer
    tuples = [
        indices
        for indices in combinations_with_replacement(range(len(elements)), r)
        if all(elements[i].parity for i, j in zip(indices, indices[1:]) if i == j)
    ]

    def evaluate(indices: tuple[int, ...]) -> int:
        value = antisymmetrize_naive(OperatorTuple.of(elements[i] for i in indices))
        return sum(1 for row in value.rows for entry in row if not entry.is_zero)

    start = time.perf_counter()
    counts = ordered_map(evaluate, tuples, workers)
    elapsed = (time.perf_counter() - start) * 1000
    return BenchReport(
        spec=str(spec),
        method="naive",
        r=r,
        tuples=len(tuples),
        multiplications=len(tuples) * math.factorial(r) * (r - 1),
        terms=sum(counts),
        vanishes=not any(counts),
        elapsed_ms=elapsed,
    )


def _bench_generic(spec: MatrixAlgebraSpec, r: int) -> BenchReport:
    start = time.perf_counter()
    x = generic_element(spec)
    power = x
    # uncached, unlike generic_power
    for _ in range(r - 1):
        if power.is_zero:
            break
        power = power @ x
    monomials = power.split(range(len(x.table)))
    elapsed = (time.perf_counter() - start) * 1000
    terms = sum(len(entry) for row in power.rows for entry in row)
    return BenchReport(
        spec=str(spec),
        method="generic",
        r=r,
        tuples=len(monomials),
        multiplications=(r - 1) * x.size**3,
        terms=terms,
        vanishes=power.is_zero,
        elapsed_ms=elapsed,
    )


def run_bench(
    spec: MatrixAlgebraSpec, r: int, method: str, workers: int | None = None
) -> BenchReport:
    """Time a_r on spec with the chosen method.

    Raises:
        ValidationError: If the method is unknown or r is out of range
    """
    validate_positive(r, "r")
    if method not in METHODS:
        raise ValidationError(f"Unknown bench method {method!r}; choose from {', '.join(METHODS)}")
    logger.info(f"Benchmarking {spec}, r={r}, method={method}")
    if method == "naive":
        report = _bench_naive(spec, r, resolve_worker_count(workers))
    else:
        report = _bench_generic(spec, r)
    logger.info(f"{spec} r={r} {method}: {report.elapsed_ms:.1f} ms")
    return report
