"""Superdifferential operators with polynomial coefficients.

Operators are kept in normal form: each term is coefficient * d^beta d_gamma
with every derivative to the right of the coefficient. beta is a multi-index
over the even coordinates and gamma an increasing product of odd-coordinate
derivatives stored as a bitmask.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .exceptions import DomainMismatchError, ParityError, ValidationError
from .superscalar import (
    GeneratorSpec,
    GeneratorTable,
    Monomial,
    Rational,
    SuperScalar,
    as_rational,
    iter_bits,
    merge_sign,
)

logger = logging.getLogger(__name__)

Key = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class SuperDomain:
    """Coordinates x_1..x_n (even), xi_1..xi_m (odd), then auxiliary generators.

    The coordinate generators occupy the first n + m ids of ``table``.
    """

    n_even: int
    n_odd: int
    table: GeneratorTable

    def __post_init__(self) -> None:
        if self.n_even < 0 or self.n_odd < 0:
            raise ValidationError("Coordinate counts must be nonnegative")
        if len(self.table) < self.n_even + self.n_odd:
            raise ValidationError("Generator table is shorter than the coordinate list")
        for gid in range(self.n_even + self.n_odd):
            if self.table.parity(gid) != int(gid >= self.n_even):
                raise ValidationError(f"Coordinate {self.table[gid].label} has the wrong parity")

    @classmethod
    def create(
        cls,
        n_even: int,
        n_odd: int = 0,
        even_names: Sequence[str] | None = None,
        auxiliary: Iterable[GeneratorSpec] = (),
    ) -> SuperDomain:
        """Domain with coordinates x[1..n] (or the given names) and xi[1..m]."""
        if even_names is not None and len(even_names) != n_even:
            raise ValidationError(f"Expected {n_even} coordinate names, got {len(even_names)}")
        generators: list[GeneratorSpec] = []
        for i in range(n_even):
            if even_names is not None:
                generators.append((even_names[i], (), 0))
            else:
                generators.append(("x", (i + 1,), 0))
        generators.extend(("xi", (j + 1,), 1) for j in range(n_odd))
        generators.extend(auxiliary)
        return cls(n_even, n_odd, GeneratorTable(generators))

    def with_auxiliary(self, generators: Iterable[GeneratorSpec]) -> SuperDomain:
        return SuperDomain(self.n_even, self.n_odd, self.table.extend(generators))

    @property
    def odd_ids(self) -> range:
        return range(self.n_even, self.n_even + self.n_odd)

    @property
    def auxiliary_ids(self) -> range:
        return range(self.n_even + self.n_odd, len(self.table))

    def coordinate(self, i: int) -> SuperScalar:
        """Even coordinate x_(i+1) (0-based i)."""
        if not 0 <= i < self.n_even:
            raise ValidationError(f"No even coordinate {i}")
        return SuperScalar.generator(self.table, i)

    def odd_coordinate(self, j: int) -> SuperScalar:
        if not 0 <= j < self.n_odd:
            raise ValidationError(f"No odd coordinate {j}")
        return SuperScalar.generator(self.table, self.n_even + j)

    def monomial(self, alpha: Sequence[int], coefficient: Rational = 1) -> SuperScalar:
        """coefficient * x^alpha."""
        if len(alpha) != self.n_even:
            raise ValidationError(f"Multi-index {tuple(alpha)} needs {self.n_even} entries")
        even = tuple((i, a) for i, a in enumerate(alpha) if a)
        return SuperScalar(self.table, {Monomial(even, 0): coefficient})

    def constant(self, value: Rational) -> SuperScalar:
        return SuperScalar.constant(value, self.table)

    def same_coordinates(self, other: SuperDomain) -> bool:
        return (self.n_even, self.n_odd) == (other.n_even, other.n_odd) and (
            self.table.is_prefix_of(other.table) or other.table.is_prefix_of(self.table)
        )


def _derivative_label(domain: SuperDomain, key: Key) -> str:
    beta, gamma = key
    parts = []
    for i, b in enumerate(beta):
        if b:
            name = domain.table[i].label
            parts.append(f"d_{name}" if b == 1 else f"d_{name}^{b}")
    for j in iter_bits(gamma):
        parts.append(f"d_{domain.table[domain.n_even + j].label}")
    return "*".join(parts) if parts else "1"


def _sort_key(key: Key) -> tuple[int, tuple[int, ...], int]:
    beta, gamma = key
    return (sum(beta) + gamma.bit_count(), beta, gamma)


class DiffOp:
    """Superdifferential operator on a SuperDomain, immutable, in normal form."""

    __slots__ = ("domain", "_terms")

    domain: SuperDomain
    _terms: dict[Key, SuperScalar]

    def __init__(
        self,
        domain: SuperDomain,
        terms: Mapping[Key, SuperScalar | Rational] | None = None,
    ):
        self.domain = domain
        clean: dict[Key, SuperScalar] = {}
        for (beta, gamma), coeff in (terms or {}).items():
            beta = tuple(beta)
            if len(beta) != domain.n_even or any(b < 0 for b in beta):
                raise ValidationError(f"Bad derivative multi-index {beta}")
            if gamma < 0 or gamma >> domain.n_odd:
                raise ValidationError(f"Bad odd derivative mask {bin(gamma)}")
            scalar = SuperScalar.coerce(coeff, domain.table).with_table(domain.table)
            key = (beta, gamma)
            clean[key] = clean[key] + scalar if key in clean else scalar
        self._terms = {key: value for key, value in clean.items() if value}

    @classmethod
    def _wrap(cls, domain: SuperDomain, terms: dict[Key, SuperScalar]) -> DiffOp:
        obj = cls.__new__(cls)
        obj.domain = domain
        obj._terms = terms
        return obj

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, domain: SuperDomain) -> DiffOp:
        return cls._wrap(domain, {})

    @classmethod
    def multiplication(cls, domain: SuperDomain, f: SuperScalar | Rational) -> DiffOp:
        """The order-0 operator g -> f g."""
        return cls(domain, {((0,) * domain.n_even, 0): f})

    @classmethod
    def identity(cls, domain: SuperDomain) -> DiffOp:
        return cls.multiplication(domain, 1)

    @classmethod
    def partial(cls, domain: SuperDomain, i: int) -> DiffOp:
        """d/dx_(i+1)."""
        beta = tuple(int(k == i) for k in range(domain.n_even))
        return cls(domain, {(beta, 0): 1})

    @classmethod
    def odd_partial(cls, domain: SuperDomain, j: int) -> DiffOp:
        """d/dxi_(j+1)."""
        return cls(domain, {((0,) * domain.n_even, 1 << j): 1})

    @classmethod
    def vector_field(
        cls,
        domain: SuperDomain,
        coefficients: Sequence[SuperScalar | Rational],
        odd_coefficients: Sequence[SuperScalar | Rational] = (),
    ) -> DiffOp:
        """sum u_i d_i + sum v_j d_xi_j."""
        if len(coefficients) != domain.n_even or len(odd_coefficients) not in (0, domain.n_odd):
            raise ValidationError("Coefficient count does not match the domain")
        terms: dict[Key, SuperScalar | Rational] = {}
        for i, u in enumerate(coefficients):
            terms[(tuple(int(k == i) for k in range(domain.n_even)), 0)] = u
        for j, v in enumerate(odd_coefficients):
            terms[((0,) * domain.n_even, 1 << j)] = v
        return cls(domain, terms)

    def zero_like(self) -> DiffOp:
        return DiffOp.zero(self.domain)

    # --- inspection -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterable[tuple[Key, SuperScalar]]:
        return self._terms.items()

    def terms(self) -> list[tuple[Key, SuperScalar]]:
        """Terms sorted by (order, beta, gamma)."""
        return sorted(self._terms.items(), key=lambda item: _sort_key(item[0]))

    def coefficient(self, beta: Sequence[int], gamma: int = 0) -> SuperScalar:
        return self._terms.get((tuple(beta), gamma), SuperScalar.zero(self.domain.table))

    @property
    def order(self) -> int:
        """Largest |beta| + |gamma| over the terms; -1 for the zero operator."""
        return max((sum(beta) + gamma.bit_count() for beta, gamma in self._terms), default=-1)

    def component(self, order: int) -> DiffOp:
        """The terms of exactly the given order."""
        return DiffOp._wrap(
            self.domain,
            {
                key: value
                for key, value in self._terms.items()
                if sum(key[0]) + key[1].bit_count() == order
            },
        )

    def _term_parities(self) -> set[int | None]:
        found: set[int | None] = set()
        for (_, gamma), coeff in self._terms.items():
            p = coeff.parity
            found.add(None if p is None else (p + gamma.bit_count()) % 2)
        return found

    @property
    def is_homogeneous(self) -> bool:
        found = self._term_parities()
        return None not in found and len(found) <= 1

    @property
    def parity(self) -> int:
        """Parity of a homogeneous operator (zero counts as even).

        Raises:
            ParityError: If the operator is inhomogeneous
        """
        found = self._term_parities()
        if None in found or len(found) > 1:
            raise ParityError("Differential operator is not parity-homogeneous")
        return found.pop() if found else 0

    def homogeneous_parts(self) -> tuple[DiffOp, DiffOp]:
        """Split into (even part, odd part)."""
        parts: tuple[dict[Key, SuperScalar], dict[Key, SuperScalar]] = ({}, {})
        for key, coeff in self._terms.items():
            even, odd = coeff.homogeneous_parts()
            shift = key[1].bit_count() % 2
            for parity, piece in ((0, even), (1, odd)):
                if piece:
                    parts[(parity + shift) % 2][key] = piece
        return DiffOp._wrap(self.domain, parts[0]), DiffOp._wrap(self.domain, parts[1])

    @property
    def is_vector_field(self) -> bool:
        """Every term has exactly one derivative."""
        return all(sum(beta) + gamma.bit_count() == 1 for beta, gamma in self._terms)

    def field_coefficients(self) -> tuple[tuple[SuperScalar, ...], tuple[SuperScalar, ...]]:
        """(u_1..u_n, v_1..v_m) of sum u_i d_i + sum v_j d_xi_j.

        Raises:
            ValidationError: If the operator is not a vector field
        """
        if not self.is_vector_field:
            raise ValidationError(f"Not a vector field (order {self.order})")
        n = self.domain.n_even
        evens = tuple(
            self.coefficient(tuple(int(k == i) for k in range(n))) for i in range(n)
        )
        odds = tuple(
            self.coefficient((0,) * n, 1 << j) for j in range(self.domain.n_odd)
        )
        return evens, odds

    # --- arithmetic -------------------------------------------------------

    def _check_domain(self, other: DiffOp) -> None:
        if self.domain != other.domain:
            raise DomainMismatchError("Differential operators live on different domains")

    def __add__(self, other: DiffOp) -> DiffOp:
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check_domain(other)
        terms = dict(self._terms)
        for key, value in other._terms.items():
            total = terms[key] + value if key in terms else value
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return DiffOp._wrap(self.domain, terms)

    def __neg__(self) -> DiffOp:
        return DiffOp._wrap(self.domain, {key: -value for key, value in self._terms.items()})

    def __sub__(self, other: DiffOp) -> DiffOp:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Rational) -> DiffOp:
        factor = as_rational(factor)
        if not factor:
            return self.zero_like()
        return DiffOp._wrap(
            self.domain, {key: value.scale(factor) for key, value in self._terms.items()}
        )

    def __mul__(self, other: object) -> DiffOp:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> DiffOp:
        """Rational scaling, or left multiplication f * T by a function."""
        if isinstance(other, SuperScalar):
            terms = {key: other * value for key, value in self._terms.items()}
            return DiffOp._wrap(self.domain, {k: v for k, v in terms.items() if v})
        return self.__mul__(other)

    def __matmul__(self, other: DiffOp) -> DiffOp:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.domain.same_coordinates(other.domain) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # --- evaluation and restructuring -------------------------------------

    def apply(self, f: SuperScalar | Rational) -> SuperScalar:
        """T(f): coefficient times the derivatives of f."""
        f = SuperScalar.coerce(f, self.domain.table)
        result = SuperScalar.zero(self.domain.table)
        for (beta, gamma), coeff in self._terms.items():
            g = f
            for j in reversed(tuple(iter_bits(gamma))):
                g = g.derivative(self.domain.n_even + j)
            for i, b in enumerate(beta):
                for _ in range(b):
                    g = g.derivative(i)
                    if g.is_zero:
                        break
            if g:
                result = result + coeff * g
        return result

    def split(self, gids: Iterable[int]) -> dict[Monomial, DiffOp]:
        """Decompose by monomials in auxiliary generators: self = sum m * T_m."""
        selected = tuple(gids)
        parts: dict[Monomial, dict[Key, SuperScalar]] = {}
        for key, coeff in self._terms.items():
            for head, rest in coeff.split(selected).items():
                parts.setdefault(head, {})[key] = rest
        return {head: DiffOp._wrap(self.domain, terms) for head, terms in parts.items()}

    def lift(self, domain: SuperDomain) -> DiffOp:
        """Move onto a domain with the same coordinates and an extended or trimmed table."""
        if not self.domain.same_coordinates(domain):
            raise DomainMismatchError("Target domain has different coordinates")
        return DiffOp._wrap(
            domain, {key: value.with_table(domain.table) for key, value in self._terms.items()}
        )

    def to_json(self) -> list[list[object]]:
        return [
            [_derivative_label(self.domain, key), coeff.to_json()] for key, coeff in self.terms()
        ]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(
            f"({coeff})*{_derivative_label(self.domain, key)}" for key, coeff in self.terms()
        )

    def __repr__(self) -> str:
        return f"DiffOp({self})"


def _odd_pushes(
    domain: SuperDomain, gamma: int, coeff: SuperScalar
) -> list[tuple[SuperScalar, int]]:
    """d_gamma o coeff = sum f * d_mask, by the super Leibniz rule."""
    pieces = [(coeff, 0)]
    for j in reversed(tuple(iter_bits(gamma))):
        gid = domain.n_even + j
        following = []
        for f, mask in pieces:
            derived = f.derivative(gid)
            if derived:
                following.append((derived, mask))
            even, odd = f.homogeneous_parts()
            passed = even - odd
            if passed:
                following.append((passed, mask | (1 << j)))
        pieces = following
    return pieces


def _partials_upto(f: SuperScalar, beta: tuple[int, ...]) -> dict[tuple[int, ...], SuperScalar]:
    """d^mu f for every mu <= beta."""
    out: dict[tuple[int, ...], SuperScalar] = {}
    for mu in product(*(range(b + 1) for b in beta)):
        last = max((i for i, m in enumerate(mu) if m), default=None)
        if last is None:
            out[mu] = f
            continue
        previous = out[mu[:last] + (mu[last] - 1,) + mu[last + 1 :]]
        out[mu] = previous.derivative(last) if previous else previous
    return out


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """Normal form of a o b.

    Raises:
        DomainMismatchError: If the operators live on different domains
    """
    a._check_domain(b)
    domain = a.domain
    out: dict[Key, SuperScalar] = {}
    for (beta, gamma), ca in a._terms.items():
        for (delta, eps), cb in b._terms.items():
            for f, mask in _odd_pushes(domain, gamma, cb):
                if mask & eps:
                    continue
                sign = merge_sign(mask, eps)
                for mu, df in _partials_upto(f, beta).items():
                    if not df:
                        continue
                    weight = sign * math.prod(math.comb(x, y) for x, y in zip(beta, mu))
                    value = ca * df
                    if weight != 1:
                        value = value.scale(weight)
                    key = (tuple(x - y + z for x, y, z in zip(beta, mu, delta)), mask | eps)
                    out[key] = out[key] + value if key in out else value
    return DiffOp._wrap(domain, {key: value for key, value in out.items() if value})


def commutator(x: DiffOp, y: DiffOp) -> DiffOp:
    """[X, Y] = X o Y - (-1)^(p(X)p(Y)) Y o X, extended bilinearly."""
    x._check_domain(y)
    if not (x.is_homogeneous and y.is_homogeneous):
        total = x.zero_like()
        for part_x in x.homogeneous_parts():
            for part_y in y.homogeneous_parts():
                if part_x and part_y:
                    total = total + commutator(part_x, part_y)
        return total
    if x.parity and y.parity:
        return x @ y + y @ x
    return x @ y - y @ x


def divergence(x: DiffOp) -> SuperScalar:
    """Div(sum f_i d_i) = sum (-1)^(p(f_i) p(i)) d_i f_i.

    Raises:
        ValidationError: If x is not a vector field
    """
    evens, odds = x.field_coefficients()
    domain = x.domain
    total = SuperScalar.zero(domain.table)
    for i, u in enumerate(evens):
        total = total + u.derivative(i)
    for j, v in enumerate(odds):
        even, odd = v.homogeneous_parts()
        gid = domain.n_even + j
        total = total + even.derivative(gid) - odd.derivative(gid)
    return total


class Density(NamedTuple):
    """A coefficient f of the weighted volume vol^weight."""

    value: SuperScalar
    weight: Rational


def lambda_density_action(x: DiffOp, f: SuperScalar | Rational, weight: Rational) -> Density:
    """X(f vol^weight) = (X(f) + weight f Div X) vol^weight."""
    f = SuperScalar.coerce(f, x.domain.table)
    weight = as_rational(weight)
    value = x.apply(f)
    if weight:
        value = value + (f * divergence(x)).scale(weight)
    return Density(value, weight)
