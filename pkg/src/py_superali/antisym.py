"""Antisymmetrizers: the naive r! sum, the generic-element path, scans.

The naive sum uses the super antisymmetrizer sign sign(s) * sign(s'); swapping
adjacent arguments i, i+1 multiplies the value by -(-1)^(p_i p_(i+1)). The
generic element reproduces it up to ``generic_sign`` of the parity pattern.
"""

from __future__ import annotations

import logging
import operator
import random
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, combinations_with_replacement
from typing import TYPE_CHECKING, Union

from .algebras import (
    MatrixAlgebraSpec,
    basis,
    extract_antisymmetrizers,
    generic_power,
    generic_table,
    membership,
)
from .constants import Classification, Closure
from .exceptions import ParityError, ValidationError
from .permutations import Permutation, antisymmetrizer_sign
from .report import ScanItem, ScanReport
from .supermat import SuperMatrix
from .validators import validate_naive_order
from .workers import ordered_map, resolve_worker_count

if TYPE_CHECKING:
    from .diffop import DiffOp

logger = logging.getLogger(__name__)

Operator = Union[SuperMatrix, "DiffOp"]


@dataclass(frozen=True)
class OperatorTuple:
    """Arguments X_1..X_r of an antisymmetrizer with their parities."""

    ops: tuple[Operator, ...]
    parities: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "parities", tuple(self.parities))
        if not self.ops:
            raise ValidationError("Operator tuple is empty")
        if len(self.ops) != len(self.parities):
            raise ValidationError(
                f"{len(self.ops)} operators but {len(self.parities)} parities"
            )
        kinds = {type(op) for op in self.ops}
        if len(kinds) > 1:
            raise ValidationError(
                f"Mixed operator kinds: {sorted(kind.__name__ for kind in kinds)}"
            )
        for position, (op, declared) in enumerate(zip(self.ops, self.parities)):
            if not op.is_zero and op.parity != declared:
                raise ParityError(
                    f"Operator {position} has parity {op.parity}, declared {declared}"
                )

    @classmethod
    def of(cls, ops: Iterable[Operator]) -> OperatorTuple:
        """Build a tuple, reading each parity off its operator."""
        ops = tuple(ops)
        return cls(ops, tuple(op.parity for op in ops))

    def __len__(self) -> int:
        return len(self.ops)

    def select(self, positions: Sequence[int]) -> OperatorTuple:
        return OperatorTuple(
            tuple(self.ops[i] for i in positions), tuple(self.parities[i] for i in positions)
        )


def antisymmetrize_naive(t: OperatorTuple) -> Operator:
    """Sum over s in S_r of sign(s) sign(s') X_s(1) ... X_s(r).

    Raises:
        ValidationError: If r exceeds the naive cap
    """
    validate_naive_order(len(t))
    total = t.ops[0].zero_like()
    for s in Permutation.all(len(t)):
        product = reduce(operator.matmul, (t.ops[i - 1] for i in s.images))
        if antisymmetrizer_sign(s, t.parities) > 0:
            total = total + product
        else:
            total = total - product
    return total


def antisymmetrize_generic(spec: MatrixAlgebraSpec, r: int) -> SuperMatrix:
    """X^r for the generic element; zero iff a_r vanishes on the whole algebra."""
    if r < 1:
        raise ValidationError(f"r must be positive, got {r}")
    return generic_power(spec, r)


@dataclass(frozen=True)
class SpanReport:
    """Which a_k survive on an algebra and whether they land back in it."""

    spec: MatrixAlgebraSpec
    k_max: int
    nonvanishing: frozenset[int]
    closure: dict[int, str]
    minimal_identity: int | None
    nonzero_powers: frozenset[int]
    timing_ms: dict[int, float] = field(default_factory=dict, compare=False)

    def to_scan_report(self) -> ScanReport:
        items = []
        for k in range(2, self.k_max + 1):
            nonzero = k in self.nonzero_powers
            items.append(
                ScanItem(
                    index=k,
                    classification=Classification.NONVANISHING if nonzero else Classification.ZERO,
                    closure=self.closure[k],
                )
            )
        return ScanReport(
            command="span",
            spec=str(self.spec),
            parameters={"kMax": self.k_max},
            summary={
                "nonvanishing": sorted(self.nonvanishing),
                "nonzeroPowers": sorted(self.nonzero_powers),
                "minimalIdentity": self.minimal_identity,
            },
            items=items,
            timing={str(k): ms for k, ms in sorted(self.timing_ms.items())},
        )


def closure_of(spec: MatrixAlgebraSpec, power: SuperMatrix) -> str:
    """lands-in-spec if every theta-coefficient of a power of X lies in spec."""
    if power.is_zero:
        return Closure.LANDS
    ids = range(len(generic_table(spec)))
    for mono, coefficient in power.split(ids).items():
        if not membership(spec, coefficient.twisted(mono.parity)):
            return Closure.LEAVES
    return Closure.LANDS


def span_scan(spec: MatrixAlgebraSpec, k_max: int, workers: int | None = None) -> SpanReport:
    """Scan a_2..a_kMax on spec via powers of the generic element.

    nonvanishing collects the k with a_k nonzero and landing in spec.
    """
    if k_max < 2:
        raise ValidationError(f"kMax must be at least 2, got {k_max}")
    logger.info(f"Span scan of {spec} up to k={k_max}")
    power_ms: dict[int, float] = {}
    powers: dict[int, SuperMatrix] = {}
    for k in range(1, k_max + 1):
        start = time.perf_counter()
        powers[k] = generic_power(spec, k)
        power_ms[k] = (time.perf_counter() - start) * 1000

    def examine(k: int) -> tuple[str, float]:
        start = time.perf_counter()
        flag = closure_of(spec, powers[k])
        return flag, (time.perf_counter() - start) * 1000

    ks = list(range(2, k_max + 1))
    outcomes = ordered_map(examine, ks, resolve_worker_count(workers))
    closure = {k: flag for k, (flag, _) in zip(ks, outcomes)}
    timing = {k: power_ms[k] + ms for k, (_, ms) in zip(ks, outcomes)}
    nonzero = frozenset(k for k in ks if not powers[k].is_zero)
    minimal = next((k for k in ks if k not in nonzero), None)
    report = SpanReport(
        spec=spec,
        k_max=k_max,
        nonvanishing=frozenset(k for k in nonzero if closure[k] == Closure.LANDS),
        closure=closure,
        minimal_identity=minimal,
        nonzero_powers=nonzero,
        timing_ms=timing,
    )
    logger.info(
        f"{spec}: nonvanishing {sorted(report.nonvanishing)}, minimal identity {minimal}"
    )
    return report


def star_product_eval(k: int, l: int, t: OperatorTuple) -> Operator:
    """(a_k * a_l)(X_1..X_(k+l-1)) as the signed shuffle sum.

    Raises:
        ValidationError: If the tuple has the wrong length or odd members
    """
    if k < 1 or l < 1:
        raise ValidationError(f"k and l must be positive, got ({k}, {l})")
    size = k + l - 1
    if len(t) != size:
        raise ValidationError(f"Star product a_{k} * a_{l} needs {size} operators, got {len(t)}")
    if any(t.parities):
        raise ValidationError("Star product is only defined for even operators")
    total = t.ops[0].zero_like()
    for chosen in combinations(range(size), l):
        rest = [i for i in range(size) if i not in chosen]
        sigma = Permutation(tuple(i + 1 for i in (*chosen, *rest)))
        inner = antisymmetrize_naive(t.select(chosen))
        outer = OperatorTuple((inner, *(t.ops[i] for i in rest)), (0,) * k)
        value = antisymmetrize_naive(outer)
        total = total + value if sigma.sign > 0 else total - value
    return total


def oracle_equivalence_check(
    spec: MatrixAlgebraSpec,
    r: int,
    samples: int | None = None,
    seed: int = 0,
    workers: int | None = None,
) -> bool:
    """Compare theta-coefficients of X^r with the naive sum on basis multisets.

    samples=None checks every multiset; otherwise a seeded sample of that size.
    """
    validate_naive_order(r)
    elements = basis(spec)
    tuples = list(combinations_with_replacement(range(len(elements)), r))
    if samples is not None and samples < len(tuples):
        tuples = sorted(random.Random(seed).sample(tuples, samples))
    extracted = extract_antisymmetrizers(spec, r)
    zero = SuperMatrix.zeros(spec.fmt)

    def agrees(indices: tuple[int, ...]) -> bool:
        naive = antisymmetrize_naive(OperatorTuple.of(elements[i] for i in indices))
        return naive == extracted.get(indices, zero)

    results = ordered_map(agrees, tuples, resolve_worker_count(workers))
    mismatches = [indices for indices, ok in zip(tuples, results) if not ok]
    if mismatches:
        logger.warning(f"{spec}, r={r}: {len(mismatches)} mismatches, first {mismatches[0]}")
    else:
        logger.info(f"{spec}, r={r}: generic and naive agree on {len(tuples)} tuples")
    return not mismatches
