"""Closed determinant formulas for N-commutators and checks against direct evaluation.

A row (a, b) of a determinant stands for the entries d^b u_(j,a), j = 1..k,
where u_(j,a) is the d_a-coefficient of the j-th field.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple

from .constants import HamiltonianConvention
from .constant_store import ConstantStore
from .diffop import DiffOp, SuperDomain, divergence
from .exceptions import SuperAliError, ValidationError
from .hamiltonian import h5_determinant, hamiltonian_field, symplectic_domain
from .superscalar import Rational, SuperScalar, as_rational
from .supermat import determinant
from .vectorfields import GenericFieldFamily, monomial_exponents, n_commutator, sample_fields

logger = logging.getLogger(__name__)

Row = tuple[int, tuple[int, ...]]


class _Entries:
    """Memoized d^b u_(j,a) for a fixed tuple of fields."""

    def __init__(self, fields: Sequence[DiffOp]):
        self.domain = fields[0].domain
        self.coefficients = [field.field_coefficients()[0] for field in fields]
        self._memo: dict[tuple[int, int, tuple[int, ...]], SuperScalar] = {}

    def get(self, j: int, a: int, b: tuple[int, ...]) -> SuperScalar:
        key = (j, a, b)
        if key not in self._memo:
            value = self.coefficients[j][a]
            for i, times in enumerate(b):
                for _ in range(times):
                    value = value.derivative(i)
            self._memo[key] = value
        return self._memo[key]

    def det(self, rows: Sequence[Row]) -> SuperScalar:
        grid = [[self.get(j, a, b) for j in range(len(rows))] for a, b in rows]
        return determinant(grid, self.domain.table)


def _sorted_with_sign(rows: list[Row]) -> tuple[tuple[Row, ...], int]:
    inversions = sum(1 for i, j in combinations(range(len(rows)), 2) if rows[i] > rows[j])
    return tuple(sorted(rows)), -1 if inversions % 2 else 1


def _fields_of(fields: GenericFieldFamily | Sequence[DiffOp], k: int | None) -> tuple[DiffOp, ...]:
    ops = fields.fields() if isinstance(fields, GenericFieldFamily) else tuple(fields)
    if k is not None and len(ops) != k:
        raise ValidationError(f"Expected {k} fields, got {len(ops)}")
    if len(ops) < 2:
        raise ValidationError("The k-commutator formula needs k >= 2")
    for op in ops:
        if op.domain.n_odd or not op.is_vector_field:
            raise ValidationError(f"{op} is not an even-coordinate vector field")
    return ops


def kcomm_first_order(
    fields: GenericFieldFamily | Sequence[DiffOp], k: int | None = None
) -> DiffOp:
    """Order-1 component of a_k(X_1..X_k) as a sum of determinants.

    Sums over a in [n]^k and s_i in (i, k]: row r is (a_r, sum of e_(a_i) over
    s_i = r), and the determinant contributes to d_(a_k).
    """
    ops = _fields_of(fields, k)
    k = len(ops)
    domain = ops[0].domain
    n = domain.n_even
    entries = _Entries(ops)
    dets: dict[tuple[Row, ...], SuperScalar] = {}
    totals = [SuperScalar.zero(domain.table) for _ in range(n)]
    targets = [range(i + 1, k) for i in range(k - 1)]
    for a in product(range(n), repeat=k):
        for s in product(*targets):
            exponents = [[0] * n for _ in range(k)]
            for i, target in enumerate(s):
                exponents[target][a[i]] += 1
            rows = [(a[r], tuple(exponents[r])) for r in range(k)]
            if len(set(rows)) < k:
                continue
            key, sign = _sorted_with_sign(rows)
            if key not in dets:
                dets[key] = entries.det(key)
            value = dets[key]
            if value:
                totals[a[-1]] = totals[a[-1]] + (value if sign > 0 else -value)
    logger.debug(f"k={k}, n={n}: {len(dets)} distinct determinants")
    return DiffOp.vector_field(domain, totals)


def _row(b: tuple[int, int], a: int) -> Row:
    return (a, b)


_U1, _U2 = _row((0, 0), 0), _row((0, 0), 1)
_D1U1, _D2U1 = _row((1, 0), 0), _row((0, 1), 0)
_D1U2, _D2U2 = _row((1, 0), 1), _row((0, 1), 1)
_D11U1, _D22U1, _D12U1 = _row((2, 0), 0), _row((0, 2), 0), _row((1, 1), 0)
_D22U2, _D12U2 = _row((0, 2), 1), _row((1, 1), 1)

# d_1-coefficient of the 6-commutator on vect(2)
VECT6_TERMS: tuple[tuple[int, tuple[Row, ...]], ...] = (
    (1, (_U1, _U2, _D2U1, _D1U2, _D2U2, _D22U2)),
    (1, (_U1, _U2, _D1U1, _D2U1, _D2U2, _D11U1)),
    (1, (_U1, _U2, _D1U1, _D2U1, _D1U2, _D22U2)),
    (-2, (_U1, _U2, _D2U1, _D1U2, _D2U2, _D12U1)),
    (-2, (_U1, _U2, _D1U1, _D2U1, _D1U2, _D12U1)),
    (3, (_U1, _U2, _D1U1, _D1U2, _D2U2, _D22U1)),
    (-2, (_U1, _U2, _D1U1, _D2U1, _D2U2, _D12U2)),
)


def mirror_row(row: Row) -> Row:
    """Swap the derivative subscripts 1 and 2 and the second subscript of u."""
    a, (b1, b2) = row
    return (1 - a, (b2, b1))


def vect6_formula(fields: Sequence[DiffOp]) -> DiffOp:
    """(sum w det) d_1 + (mirrored sum) d_2 for six fields on vect(2)."""
    ops = _fields_of(fields, 6)
    domain = ops[0].domain
    if domain.n_even != 2:
        raise ValidationError("vect6_formula works on vect(2)")
    entries = _Entries(ops)
    first = SuperScalar.zero(domain.table)
    second = SuperScalar.zero(domain.table)
    for weight, rows in VECT6_TERMS:
        first = first + entries.det(rows).scale(weight)
        second = second + entries.det([mirror_row(row) for row in rows]).scale(weight)
    return DiffOp.vector_field(domain, [first, second])


def scalar_ratio(pairs: Sequence[tuple[SuperScalar, SuperScalar]]) -> tuple[bool, Rational | None]:
    """Common c with a = c e over all (a, e) pairs: (proportional, c).

    c is None when every e vanishes; then proportional means every a vanishes.
    """
    constant: Rational | None = None
    for a, e in pairs:
        if e.is_zero:
            continue
        mono, value = e.terms()[0]
        constant = as_rational(Fraction(a.coefficient(mono)) / Fraction(value))
        break
    for a, e in pairs:
        expected = e.scale(constant) if constant is not None else e.scale(0)
        if a != expected:
            return False, constant
    return True, constant


def operator_ratio(a: DiffOp, e: DiffOp) -> Rational | None:
    """c with a = c e, or None when e is zero or a is not a multiple of e."""
    if e.is_zero:
        return None
    (key, coefficient), *_ = e.terms()
    mono, value = coefficient.terms()[0]
    c = as_rational(Fraction(a.coefficient(*key).coefficient(mono)) / Fraction(value))
    return c if a == e.scale(c) else None


class Vect6Agreement(NamedTuple):
    """Proportionality of the order-1 part of a_6 to the determinant combination."""

    samples: int
    d1_proportional: bool
    d1_constant: Rational | None
    d2_proportional: bool
    d2_constant: Rational | None

    @property
    def mirror_consistent(self) -> bool:
        return (
            self.d1_proportional
            and self.d2_proportional
            and self.d1_constant == self.d2_constant
        )


def vect6_agreement(samples: int = 10, seed: int = 0, degree: int = 2) -> Vect6Agreement:
    """Compare a_6 on sampled integer vect(2) fields with vect6_formula, row by row."""
    domain = SuperDomain.create(2)
    rng = random.Random(seed)
    first: list[tuple[SuperScalar, SuperScalar]] = []
    second: list[tuple[SuperScalar, SuperScalar]] = []
    for index in range(samples):
        fields = sample_fields(domain, 6, degree, rng)
        direct = n_commutator(fields, 6, method="generic").component(1).field_coefficients()[0]
        formula = vect6_formula(fields).field_coefficients()[0]
        first.append((direct[0], formula[0]))
        second.append((direct[1], formula[1]))
        logger.debug(f"vect6 sample {index + 1}/{samples} done")
    d1_ok, d1 = scalar_ratio(first)
    d2_ok, d2 = scalar_ratio(second)
    result = Vect6Agreement(samples, d1_ok, d1, d2_ok, d2)
    logger.info(f"vect6 agreement: {result}")
    return result


def vect6_symbolic_ratio(degree: int = 2) -> Rational | None:
    """c with (order-1 part of a_6) = c vect6_formula on generic vect(2) fields.

    None when the two operators are not proportional.
    """
    fields = GenericFieldFamily(2, 6, degree).fields()
    direct = n_commutator(fields, 6, method="generic").component(1)
    ratio = operator_ratio(direct, vect6_formula(fields))
    logger.info(f"vect6 symbolic ratio at degree {degree}: {ratio}")
    return ratio


def kcomm_agreement(n: int, k: int, samples: int = 10, seed: int = 0, degree: int = 2) -> bool:
    """kcomm_first_order equals the order-1 part of a_k on sampled integer fields."""
    domain = SuperDomain.create(n, even_names=("t",)) if n == 1 else SuperDomain.create(n)
    rng = random.Random(seed)
    for _ in range(samples):
        fields = sample_fields(domain, k, degree, rng)
        if kcomm_first_order(fields) != n_commutator(fields, k).component(1):
            return False
    return True


def _hamiltonian_fields(
    domain: SuperDomain, functions: Sequence[SuperScalar]
) -> tuple[DiffOp, ...]:
    return tuple(hamiltonian_field(domain, f) for f in functions)


def compute_h5_constant(max_degree: int = 3) -> Rational:
    """c with a_5(X_f1..X_f5) = c X_det on the first monomial 5-tuple where X_det != 0.

    Raises:
        SuperAliError: If no monomial tuple up to max_degree determines c
    """
    domain = symplectic_domain(1)
    monomials = [domain.monomial(alpha) for alpha in monomial_exponents(2, 1, max_degree)]
    for chosen in combinations(monomials, 5):
        target = hamiltonian_field(domain, h5_determinant(domain, chosen))
        if target.is_zero:
            continue
        value = n_commutator(_hamiltonian_fields(domain, chosen), 5, method="generic")
        c = operator_ratio(value, target)
        if c is None:
            raise SuperAliError(
                f"a_5 on {[str(f) for f in chosen]} is not a multiple of X_det"
            )
        logger.info(f"h5 constant under {HamiltonianConvention.NAME}: {c}")
        return c
    raise SuperAliError(f"No monomial tuple of degree <= {max_degree} fixes the h5 constant")


def h5_constant(store: ConstantStore | None = None) -> Rational:
    """The h5 constant, read from and written to the store when one is given."""
    if store is not None:
        cached = store.get(HamiltonianConvention.STORE_KEY)
        if cached is not None:
            logger.debug(f"Using cached h5 constant {cached}")
            return cached
    value = compute_h5_constant()
    if store is not None:
        store.put(HamiltonianConvention.STORE_KEY, value)
    return value


class H5Check(NamedTuple):
    constant: Rational
    samples: int
    proportional: bool
    divergence_free: bool


def random_generating_function(
    domain: SuperDomain, rng: random.Random, max_degree: int = 3, bound: int = 3
) -> SuperScalar:
    total = SuperScalar.zero(domain.table)
    for alpha in monomial_exponents(domain.n_even, 1, max_degree):
        value = rng.randint(-bound, bound)
        if value:
            total = total + domain.monomial(alpha, value)
    return total


def h5_check(
    samples: int = 20, seed: int = 0, store: ConstantStore | None = None
) -> H5Check:
    """a_5 of sampled Hamiltonian fields against c X_det, plus zero divergence."""
    constant = h5_constant(store)
    domain = symplectic_domain(1)
    rng = random.Random(seed)
    proportional = True
    divergence_free = True
    for _ in range(samples):
        functions = [random_generating_function(domain, rng) for _ in range(5)]
        value = n_commutator(_hamiltonian_fields(domain, functions), 5, method="generic")
        expected = hamiltonian_field(domain, h5_determinant(domain, functions)).scale(constant)
        proportional = proportional and value == expected
        divergence_free = divergence_free and (value.is_zero or divergence(value).is_zero)
    return H5Check(constant, samples, proportional, divergence_free)
