"""Vectorial Lie algebras vect, svect and h; N-commutators and their scans.

The generic odd derivation D = sum eta_b b over a basis of fields with
coefficient degree <= d turns N-commutators into powers: the coefficient of
eta_(i_1)...eta_(i_N) in D^N is a_N(b_(i_1), ..., b_(i_N)). All identity
claims therefore hold "at truncation degree d".
"""

from __future__ import annotations

import logging
import math
import random
import re
import time
from collections.abc import Sequence
from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import NamedTuple

import sympy

from .antisym import OperatorTuple, antisymmetrize_naive
from .constants import Classification, Closure, Grammar, Limits
from .diffop import DiffOp, SuperDomain, commutator, divergence
from .exceptions import ParityError, SpecSyntaxError, ValidationError
from .hamiltonian import hamiltonian_field, is_hamiltonian, symplectic_domain
from .report import ScanItem, ScanReport
from .superscalar import Monomial, SuperScalar, iter_bits
from .supermat import determinant
from .types import CommutatorMethod
from .validators import validate_degree, validate_positive
from .workers import ordered_map, resolve_worker_count

logger = logging.getLogger(__name__)

_SPEC_PATTERN = re.compile(r"^\s*(vect|svect|h)\s*\(\s*(\d+)\s*\)\s*$")
FAMILIES = ("vect", "svect", "h")


@dataclass(frozen=True)
class VectorialSpec:
    """A vectorial Lie algebra truncated at coefficient degree ``degree``.

    ``n`` counts the even coordinates, so h(2) has n=2. For h the degree caps
    the field coefficients; generating functions go up to degree + 1.
    """

    family: str
    n: int
    degree: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise SpecSyntaxError(str(self), Grammar.VECTORIAL)
        validate_degree(self.degree)
        match self.family:
            case "vect":
                valid = self.n >= 1
            case "svect":
                valid = self.n >= 2
            case _:
                valid = self.n >= 2 and self.n % 2 == 0
        if not valid:
            raise ValidationError(f"Invalid size for {self}; grammar: {Grammar.VECTORIAL}")

    @classmethod
    def parse(cls, text: str, degree: int) -> VectorialSpec:
        """Parse 'vect(n)', 'svect(n)' or 'h(2n)'.

        Raises:
            SpecSyntaxError: If text does not match the grammar
            ValidationError: If the size or degree is invalid
        """
        match = _SPEC_PATTERN.match(text)
        if match is None:
            raise SpecSyntaxError(text, Grammar.VECTORIAL)
        return cls(match.group(1), int(match.group(2)), degree)

    def __str__(self) -> str:
        return f"{self.family}({self.n})"

    def with_degree(self, degree: int) -> VectorialSpec:
        return replace(self, degree=degree)

    @property
    def domain(self) -> SuperDomain:
        return coordinate_domain(self.family, self.n)

    @property
    def is_long_running(self) -> bool:
        """Three or more even coordinates: vect(3), svect(3), h(4) and up."""
        return self.n >= 3


@lru_cache(maxsize=16)
def coordinate_domain(family: str, n: int) -> SuperDomain:
    """Coordinates t for n = 1, (q, p) for h(2), x[1..n] otherwise."""
    if family == "h":
        return symplectic_domain(n // 2)
    if n == 1:
        return SuperDomain.create(1, even_names=("t",))
    return SuperDomain.create(n)


def monomial_exponents(n: int, low: int, high: int) -> list[tuple[int, ...]]:
    """Exponent vectors alpha with low <= |alpha| <= high, graded then lexicographic."""
    out = []
    for total in range(low, high + 1):
        for combo in combinations_with_replacement(range(n), total):
            out.append(tuple(combo.count(i) for i in range(n)))
    return out


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


def _divergence_free_basis(domain: SuperDomain, degree: int) -> list[DiffOp]:
    n = domain.n_even
    fields = [DiffOp.partial(domain, i) for i in range(n)]
    for total in range(1, degree + 1):
        unknowns = [(alpha, i) for alpha in monomial_exponents(n, total, total) for i in range(n)]
        lower = monomial_exponents(n, total - 1, total - 1)
        targets = {alpha: row for row, alpha in enumerate(lower)}
        system = sympy.zeros(len(targets), len(unknowns))
        for column, (alpha, i) in enumerate(unknowns):
            if alpha[i]:
                lowered = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
                system[targets[lowered], column] = alpha[i]
        for vector in system.nullspace():
            scale = math.lcm(*(int(sympy.Rational(v).q) for v in vector))
            terms: dict = {}
            for column, value in enumerate(vector * scale):
                if value != 0:
                    alpha, i = unknowns[column]
                    terms[(_unit(n, i), 0)] = terms.get((_unit(n, i), 0), 0) + domain.monomial(
                        alpha, int(value)
                    )
            fields.append(DiffOp(domain, terms))
    return fields


@lru_cache(maxsize=32)
def basis(spec: VectorialSpec) -> tuple[DiffOp, ...]:
    """Basis of the fields with coefficient degree <= spec.degree, in a fixed order."""
    domain = spec.domain
    n = spec.n
    match spec.family:
        case "vect":
            elements = [
                DiffOp.vector_field(
                    domain,
                    [domain.monomial(alpha) if k == i else 0 for k in range(n)],
                )
                for alpha in monomial_exponents(n, 0, spec.degree)
                for i in range(n)
            ]
        case "svect":
            elements = _divergence_free_basis(domain, spec.degree)
        case _:
            elements = [
                hamiltonian_field(domain, domain.monomial(alpha))
                for alpha in monomial_exponents(n, 1, spec.degree + 1)
            ]
    logger.debug(f"basis({spec}, d={spec.degree}) has {len(elements)} fields")
    return tuple(elements)


def lands_in(spec: VectorialSpec, op: DiffOp) -> bool:
    """Whether op is a field of the family (no degree cap applied)."""
    if not op.is_vector_field:
        return False
    match spec.family:
        case "vect":
            return True
        case "svect":
            return divergence(op).is_zero
    return is_hamiltonian(op)


@lru_cache(maxsize=32)
def generic_odd_derivation(spec: VectorialSpec) -> DiffOp:
    """D = sum eta_k b_k with one odd auxiliary generator eta[k] per basis field."""
    elements = basis(spec)
    domain = spec.domain.with_auxiliary(("eta", (k,), 1) for k in range(len(elements)))
    total = DiffOp.zero(domain)
    for k, field in enumerate(elements):
        eta = SuperScalar.generator(domain.table, domain.auxiliary_ids[k])
        total = total + eta * field.lift(domain)
    return total


@lru_cache(maxsize=64)
def derivation_power(spec: VectorialSpec, power: int) -> DiffOp:
    """D^power, built incrementally and memoized."""
    validate_positive(power, "power")
    d = generic_odd_derivation(spec)
    if power == 1:
        return d
    previous = derivation_power(spec, power - 1)
    if previous.is_zero:
        return previous
    start = time.perf_counter()
    result = previous @ d
    logger.debug(
        f"{spec} d={spec.degree}: D^{power} has {len(list(result.items()))} terms "
        f"({(time.perf_counter() - start) * 1000:.0f} ms)"
    )
    return result


def extract_commutators(spec: VectorialSpec, power: int) -> dict[tuple[int, ...], DiffOp]:
    """Read a_N on basis subsets off the eta-coefficients of D^N.

    Keys are increasing basis-index tuples; missing subsets have a_N = 0.
    """
    value = derivation_power(spec, power)
    domain = value.domain
    offset = domain.auxiliary_ids.start
    out = {}
    for mono, coefficient in value.split(domain.auxiliary_ids).items():
        indices = tuple(gid - offset for gid in iter_bits(mono.odd))
        out[indices] = coefficient.lift(spec.domain)
    return out


def power_closure(spec: VectorialSpec, value: DiffOp) -> str:
    """lands-in-spec if every eta-coefficient of value is a field of the family."""
    if value.is_zero:
        return Closure.LANDS
    for coefficient in value.split(value.domain.auxiliary_ids).values():
        if not lands_in(spec, coefficient):
            return Closure.LEAVES
    return Closure.LANDS


def classify_power(spec: VectorialSpec, value: DiffOp) -> ScanItem:
    """Classification of D^N without its index (index is filled by the caller)."""
    if value.is_zero:
        return ScanItem(0, Classification.ZERO, closure=Closure.LANDS)
    order = value.order
    kind = Classification.COMMUTATOR if order <= 1 else Classification.HIGHER_ORDER
    return ScanItem(0, kind, order=order, closure=power_closure(spec, value))


def critical_scan(
    spec: VectorialSpec,
    n_min: int,
    n_max: int,
    reverify: bool = False,
    allow_long: bool = False,
    workers: int | None = None,
) -> ScanReport:
    """Classify D^N for N in [n_min, n_max] at truncation degree spec.degree.

    With reverify, every N found zero is recomputed at degree + 1 and the
    higher-degree verdict wins.

    Raises:
        ValidationError: If the range is empty or a long-running scan is not allowed
    """
    validate_positive(n_min, "nmin")
    if n_max < n_min:
        raise ValidationError(f"Empty range: nmin={n_min} > nmax={n_max}")
    if spec.is_long_running and not allow_long:
        raise ValidationError(f"Scans on {spec} are long-running; enable them with --long")
    logger.info(f"Critical scan of {spec} at degree {spec.degree}, N={n_min}..{n_max}")

    indices = list(range(n_min, n_max + 1))
    powers: dict[int, DiffOp] = {}
    timing: dict[str, float] = {}
    for index in range(1, n_max + 1):
        start = time.perf_counter()
        powers[index] = derivation_power(spec, index)
        if index >= n_min:
            timing[str(index)] = (time.perf_counter() - start) * 1000

    def examine(index: int) -> ScanItem:
        found = classify_power(spec, powers[index])
        return replace(found, index=index)

    items = ordered_map(examine, indices, resolve_worker_count(workers))
    if reverify:
        higher = spec.with_degree(spec.degree + 1)
        for position, item in enumerate(items):
            if item.classification != Classification.ZERO:
                continue
            recheck = classify_power(higher, derivation_power(higher, item.index))
            if recheck.classification == Classification.ZERO:
                items[position] = replace(item, note=f"re-verified at degree {higher.degree}")
            else:
                logger.warning(
                    f"{spec}: D^{item.index} vanishes at degree {spec.degree} "
                    f"but not at {higher.degree}"
                )
                items[position] = replace(
                    recheck, index=item.index, note=f"nonzero at degree {higher.degree}"
                )

    commutators = [
        item.index
        for item in items
        if item.classification == Classification.COMMUTATOR and item.closure == Closure.LANDS
    ]
    zeros = (item.index for item in items if item.classification == Classification.ZERO)
    minimal = next(zeros, None)
    return ScanReport(
        command="vect-critical",
        spec=str(spec),
        parameters={"degree": spec.degree, "nMin": n_min, "nMax": n_max, "reverify": reverify},
        items=items,
        summary={
            "truncation": f"at truncation degree {spec.degree}",
            "commutators": commutators,
            "minimalIdentity": minimal,
        },
        timing=timing,
    )


def _require_even_fields(fields: Sequence[DiffOp]) -> None:
    for position, field in enumerate(fields):
        if not field.is_homogeneous or field.parity:
            raise ParityError(f"Operator {position} is not even")


def _generic_commutator(fields: Sequence[DiffOp]) -> DiffOp:
    base = fields[0].domain
    start = len(base.table)
    domain = base.with_auxiliary(("zeta", (start + i,), 1) for i in range(len(fields)))
    zetas = domain.auxiliary_ids[-len(fields) :]
    combined = DiffOp.zero(domain)
    for gid, field in zip(zetas, fields):
        combined = combined + SuperScalar.generator(domain.table, gid) * field.lift(domain)
    power = combined
    for _ in range(len(fields) - 1):
        power = power @ combined
    top = Monomial((), sum(1 << gid for gid in zetas))
    part = power.split(zetas).get(top)
    if part is None:
        return DiffOp.zero(base)
    return part.lift(base)


def n_commutator(
    fields: OperatorTuple | Sequence[DiffOp],
    n: int | None = None,
    method: CommutatorMethod = "auto",
) -> DiffOp:
    """a_N(X_1, ..., X_N) as a full differential operator.

    ``generic`` reads a_N off (sum zeta_i X_i)^N with fresh odd zeta_i and
    needs even fields; ``naive`` sums over S_N; ``auto`` picks generic for
    even fields when N >= 4.

    Raises:
        ValidationError: If the field count differs from n or the method is unknown
        ParityError: If the generic method gets an odd field
    """
    ops = tuple(fields.ops) if isinstance(fields, OperatorTuple) else tuple(fields)
    if n is not None and len(ops) != n:
        raise ValidationError(f"Expected {n} fields, got {len(ops)}")
    if method == "auto":
        even = all(op.is_homogeneous and not op.parity for op in ops)
        method = "generic" if even and len(ops) >= 4 else "naive"
    match method:
        case "naive":
            tuple_ = fields if isinstance(fields, OperatorTuple) else OperatorTuple.of(ops)
            return antisymmetrize_naive(tuple_)  # type: ignore[return-value]
        case "generic":
            _require_even_fields(ops)
            return _generic_commutator(ops)
    raise ValidationError(f"Unknown method {method!r}")


def adjoint_antisymmetrizer(xs: Sequence[DiffOp], y: DiffOp) -> DiffOp:
    """A_k(ad x_1, ..., ad x_k)(y) for even x_i, by expansion over subsets.

    G(S) = sum over j in S of (-1)^(position of j in S) [x_j, G(S - j)].
    """
    _require_even_fields(xs)
    k = len(xs)
    level: dict[int, DiffOp] = {0: y}
    for size in range(1, k + 1):
        following: dict[int, DiffOp] = {}
        for members in combinations(range(k), size):
            mask = sum(1 << j for j in members)
            total = y.zero_like()
            for position, j in enumerate(members):
                rest = level[mask ^ (1 << j)]
                if rest.is_zero:
                    continue
                term = commutator(xs[j], rest)
                total = total + term if position % 2 == 0 else total - term
            following[mask] = total
        level = following
    return level[(1 << k) - 1]


def random_combination(elements: Sequence[DiffOp], rng: random.Random, bound: int = 3) -> DiffOp:
    """sum c_b b with c_b drawn uniformly from [-bound, bound]."""
    total = elements[0].zero_like()
    for element in elements:
        factor = rng.randint(-bound, bound)
        if factor:
            total = total + element.scale(factor)
    return total


def adjoint_identity_check(
    spec: VectorialSpec,
    k: int,
    samples: int | None = None,
    seed: int = 0,
    workers: int | None = None,
) -> bool:
    """Whether A_k(ad X_1..ad X_k)(Y) vanishes on the truncated algebra.

    Exhaustive over basis k-subsets and basis Y when that is small enough and
    samples is None; otherwise samples random integer combinations.
    """
    validate_positive(k, "k")
    elements = basis(spec)
    count = math.comb(len(elements), k) * len(elements)
    if samples is None and count <= Limits.EXHAUSTIVE_ADJOINT_LIMIT:
        cases = [
            (tuple(elements[i] for i in chosen), y)
            for chosen in combinations(range(len(elements)), k)
            for y in elements
        ]
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        cases = [
            (
                tuple(random_combination(elements, rng) for _ in range(k)),
                random_combination(elements, rng),
            )
            for _ in range(samples or 20)
        ]
        mode = "sampled"

    results = ordered_map(
        lambda case: adjoint_antisymmetrizer(*case).is_zero,
        cases,
        resolve_worker_count(workers),
    )
    vanishes = all(results)
    logger.info(
        f"{spec} d={spec.degree}: A_{k} on the adjoint {'vanishes' if vanishes else 'is nonzero'} "
        f"({mode}, {len(cases)} cases)"
    )
    return vanishes


class SubcriticalResult(NamedTuple):
    """A_3(ad X_1, ad X_2, ad X_3) on vect(1) as multiplication by a function."""

    multiplier: SuperScalar
    wronskian: SuperScalar
    value: DiffOp
    operator: DiffOp
    matches: bool


def wronskian(fields: Sequence[DiffOp]) -> SuperScalar:
    """det(d^i x_j) for the coefficients x_j of fields x_j d_t, i = 0..k-1."""
    domain = fields[0].domain
    coefficients = [field.field_coefficients()[0][0] for field in fields]
    rows = []
    current = coefficients
    for _ in range(len(fields)):
        rows.append(current)
        current = [c.derivative(0) for c in current]
    return determinant(rows, domain.table)


def subcritical_eval(fields: Sequence[DiffOp], y: DiffOp) -> SubcriticalResult:
    """Evaluate A_3(ad X_1, ad X_2, ad X_3)(Y) on vect(1).

    The multiplier is read off Y = d_t; matches records whether it equals
    -2 times the Wronskian and the value on Y equals multiplier * Y.

    Raises:
        ValidationError: If the fields are not three vect(1) fields
    """
    if len(fields) != 3:
        raise ValidationError(f"subcritical_eval takes 3 fields, got {len(fields)}")
    domain = y.domain
    if (domain.n_even, domain.n_odd) != (1, 0):
        raise ValidationError("subcritical_eval works on vect(1)")
    for op in (*fields, y):
        if op.domain != domain:
            raise ValidationError("Fields must share the domain of Y")
        if not op.is_vector_field:
            raise ValidationError(f"{op} is not a vector field")
    unit = adjoint_antisymmetrizer(fields, DiffOp.partial(domain, 0))
    multiplier = unit.field_coefficients()[0][0] if unit else SuperScalar.zero(domain.table)
    value = adjoint_antisymmetrizer(fields, y)
    w = wronskian(fields)
    matches = multiplier == w.scale(-2) and value == multiplier * y
    operator = DiffOp.multiplication(domain, multiplier)
    return SubcriticalResult(multiplier, w, value, operator, matches)


@dataclass(frozen=True)
class GenericFieldFamily:
    """Fields X_i = sum_j u_(i,j) d_j with u_(i,j) = sum_(|alpha|<=d) u[i,j,alpha] x^alpha.

    The coefficient generators u[...] are even, so the fields stay even and
    their determinants commute.
    """

    n: int
    count: int
    degree: int

    def __post_init__(self) -> None:
        validate_positive(self.n, "n")
        validate_positive(self.count, "count")
        validate_degree(self.degree)

    @property
    def exponents(self) -> list[tuple[int, ...]]:
        return monomial_exponents(self.n, 0, self.degree)

    @property
    def domain(self) -> SuperDomain:
        return _family_domain(self)

    def coefficient(self, i: int, j: int) -> SuperScalar:
        """u_(i,j) for 0-based field i and direction j."""
        domain = self.domain
        total = SuperScalar.zero(domain.table)
        for alpha in self.exponents:
            gen = domain.table.gen("u", (i + 1, j + 1, *alpha))
            total = total + gen * domain.monomial(alpha)
        return total

    def fields(self) -> tuple[DiffOp, ...]:
        domain = self.domain
        return tuple(
            DiffOp.vector_field(domain, [self.coefficient(i, j) for j in range(self.n)])
            for i in range(self.count)
        )


@lru_cache(maxsize=16)
def _family_domain(family: GenericFieldFamily) -> SuperDomain:
    base = coordinate_domain("vect", family.n)
    return base.with_auxiliary(
        ("u", (i + 1, j + 1, *alpha), 0)
        for i in range(family.count)
        for j in range(family.n)
        for alpha in family.exponents
    )


def sample_fields(
    domain: SuperDomain, count: int, degree: int, rng: random.Random, bound: int = 3
) -> tuple[DiffOp, ...]:
    """count fields with random integer coefficients of degree <= degree."""
    exponents = monomial_exponents(domain.n_even, 0, degree)
    fields = []
    for _ in range(count):
        coefficients = []
        for _ in range(domain.n_even):
            total = SuperScalar.zero(domain.table)
            for alpha in exponents:
                value = rng.randint(-bound, bound)
                if value:
                    total = total + domain.monomial(alpha, value)
            coefficients.append(total)
        fields.append(DiffOp.vector_field(domain, coefficients))
    return tuple(fields)


class OrderDrop(NamedTuple):
    """Order of D^(N-1) when D^N vanishes."""

    n: int
    vanishes: bool
    previous_order: int | None


def exploratory_order_drop(spec: VectorialSpec, n: int) -> OrderDrop:
    """Report order(D^(N-1)) whenever D^N = 0; nothing is asserted about it."""
    if n < 2:
        raise ValidationError(f"N must be at least 2, got {n}")
    vanishes = derivation_power(spec, n).is_zero
    previous = derivation_power(spec, n - 1).order if vanishes else None
    verdict = "= 0" if vanishes else "!= 0"
    logger.info(f"{spec} d={spec.degree}: D^{n} {verdict}, previous order {previous}")
    return OrderDrop(n, vanishes, previous)
