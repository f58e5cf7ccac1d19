"""Exact arithmetic in free supercommutative algebras over the rationals.

A SuperScalar is a sparse map from canonical monomials to nonzero rationals.
Even generators are stored as sorted (id, exponent) pairs and odd generators as
a bitmask, so the sign of a product is a popcount over the two masks.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import NamedTuple

from .exceptions import NotInvertibleError, TableMismatchError, ValidationError
from .validators import validate_parity

logger = logging.getLogger(__name__)

Rational = int | Fraction


def as_rational(value: object) -> Rational:
    """Normalize an int or Fraction; integral fractions collapse to int.

    Raises:
        TypeError: If value is not an exact rational
    """
    if isinstance(value, bool):
        raise TypeError("bool is not accepted as a coefficient")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"Expected int or Fraction, got {type(value).__name__}")


def format_rational(value: Rational) -> str:
    """Serialize a rational as a 'num/den' string."""
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


def _norm(value: Rational) -> Rational:
    if type(value) is int:
        return value
    return value.numerator if value.denominator == 1 else value  # type: ignore[union-attr]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def merge_sign(left: int, right: int) -> int:
    """Sign of reordering the odd product left*right into increasing id order.

    Both arguments are odd-generator bitmasks; they must be disjoint.
    """
    flips = 0
    for gid in iter_bits(right):
        flips += (left >> (gid + 1)).bit_count()
    return -1 if flips & 1 else 1


@dataclass(frozen=True)
class Generator:
    """A named generator of fixed parity."""

    name: str
    index: tuple[int, ...]
    parity: int

    @property
    def label(self) -> str:
        if not self.index:
            return self.name
        return f"{self.name}[{','.join(str(i) for i in self.index)}]"


GeneratorSpec = Generator | tuple[str, tuple[int, ...], int]


class GeneratorTable:
    """Ordered generator declarations with dense ids in declaration order."""

    __slots__ = ("_generators", "_ids", "_odd_mask")

    def __init__(self, generators: Iterable[GeneratorSpec] = ()):
        declared: list[Generator] = []
        ids: dict[tuple[str, tuple[int, ...]], int] = {}
        odd_mask = 0
        for entry in generators:
            if isinstance(entry, Generator):
                gen = entry
            else:
                name, index, parity = entry
                gen = Generator(name, tuple(index), parity)
            validate_parity(gen.parity, f"parity of {gen.label}")
            key = (gen.name, gen.index)
            if key in ids:
                raise ValidationError(f"Duplicate generator {gen.label}")
            ids[key] = len(declared)
            if gen.parity:
                odd_mask |= 1 << len(declared)
            declared.append(gen)
        self._generators = tuple(declared)
        self._ids = ids
        self._odd_mask = odd_mask

    def __len__(self) -> int:
        return len(self._generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self._generators)

    def __getitem__(self, gid: int) -> Generator:
        return self._generators[gid]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, GeneratorTable):
            return NotImplemented
        return self._generators == other._generators

    def __hash__(self) -> int:
        return hash(self._generators)

    def __repr__(self) -> str:
        return f"GeneratorTable({[g.label for g in self._generators]})"

    @property
    def odd_mask(self) -> int:
        """Bitmask of all odd generator ids."""
        return self._odd_mask

    def id_of(self, name: str, index: tuple[int, ...] = ()) -> int:
        """Look up a generator id.

        Raises:
            ValidationError: If (name, index) was never declared
        """
        try:
            return self._ids[(name, tuple(index))]
        except KeyError:
            raise ValidationError(f"Unknown generator {name}{list(index) or ''}") from None

    def parity(self, gid: int) -> int:
        return (self._odd_mask >> gid) & 1

    def ids_named(self, name: str) -> tuple[int, ...]:
        return tuple(gid for gid, gen in enumerate(self._generators) if gen.name == name)

    def extend(self, generators: Iterable[GeneratorSpec]) -> GeneratorTable:
        """Return a new table with extra generators appended (ids preserved)."""
        return GeneratorTable((*self._generators, *generators))

    def is_prefix_of(self, other: GeneratorTable) -> bool:
        return other._generators[: len(self._generators)] == self._generators

    def gen(self, name: str, index: tuple[int, ...] = ()) -> SuperScalar:
        """The generator (name, index) as a SuperScalar."""
        return SuperScalar.generator(self, self.id_of(name, index))


EMPTY_TABLE = GeneratorTable()


class Monomial(NamedTuple):
    """Canonical monomial: sorted (even id, exponent) pairs and an odd-id bitmask."""

    even: tuple[tuple[int, int], ...] = ()
    odd: int = 0

    @property
    def odd_ids(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.odd))

    @property
    def degree(self) -> int:
        return sum(exp for _, exp in self.even) + self.odd.bit_count()

    @property
    def parity(self) -> int:
        return self.odd.bit_count() & 1

    def generator_ids(self) -> tuple[int, ...]:
        """All generator ids with multiplicity, sorted."""
        ids = [gid for gid, exp in self.even for _ in range(exp)]
        ids.extend(iter_bits(self.odd))
        ids.sort()
        return tuple(ids)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Graded lexicographic key by generator id."""
        ids = self.generator_ids()
        return (len(ids), ids)

    def label(self, table: GeneratorTable) -> str:
        """Render as generator-name^exponent products in id order."""
        parts: dict[int, str] = {}
        for gid, exp in self.even:
            name = table[gid].label
            parts[gid] = name if exp == 1 else f"{name}^{exp}"
        for gid in iter_bits(self.odd):
            parts[gid] = table[gid].label
        if not parts:
            return "1"
        return "*".join(parts[gid] for gid in sorted(parts))


ONE = Monomial()
_monomial = partial(tuple.__new__, Monomial)


def parity_of(monomial: Monomial) -> int:
    """Parity of a canonical monomial (sum of generator parities mod 2)."""
    return monomial.parity


def _merge_even(
    left: tuple[tuple[int, int], ...], right: tuple[tuple[int, int], ...]
) -> tuple[tuple[int, int], ...]:
    if not left:
        return right
    if not right:
        return left
    merged = dict(left)
    for gid, exp in right:
        merged[gid] = merged.get(gid, 0) + exp
    return tuple(sorted(merged.items()))


def multiply_monomials(left: Monomial, right: Monomial) -> tuple[int, Monomial] | None:
    """Product of two canonical monomials as (sign, monomial), or None if zero."""
    if left.odd & right.odd:
        return None
    return merge_sign(left.odd, right.odd), _monomial(
        (_merge_even(left.even, right.even), left.odd | right.odd)
    )


def _common_table(left: SuperScalar, right: SuperScalar) -> GeneratorTable:
    if left.table is right.table or left.table == right.table:
        return left.table
    if left.is_constant:
        return right.table
    if right.is_constant:
        return left.table
    raise TableMismatchError(
        f"Operands use different generator tables: {left.table!r} vs {right.table!r}"
    )


class SuperScalar:
    """Element of the free supercommutative algebra over a GeneratorTable.

    Values are immutable. The empty term map is the unique zero. A value whose
    only term is the empty monomial is a constant and combines with values over
    any table.
    """

    __slots__ = ("table", "_terms")

    table: GeneratorTable
    _terms: dict[Monomial, Rational]

    def __init__(
        self,
        table: GeneratorTable = EMPTY_TABLE,
        terms: Mapping[Monomial, Rational] | None = None,
    ):
        self.table = table
        clean: dict[Monomial, Rational] = {}
        for mono, coeff in (terms or {}).items():
            mono = _monomial((tuple(mono[0]), mono[1]))
            self._check_monomial(mono)
            value = as_rational(coeff)
            if value:
                clean[mono] = clean.get(mono, 0) + value
        self._terms = {m: _norm(c) for m, c in clean.items() if c}

    def _check_monomial(self, mono: Monomial) -> None:
        size = len(self.table)
        previous = -1
        for gid, exp in mono.even:
            if not previous < gid < size or exp < 1 or self.table.parity(gid):
                raise ValidationError(f"Invalid even part {mono.even} for {self.table!r}")
            previous = gid
        if mono.odd < 0 or mono.odd & ~self.table.odd_mask:
            raise ValidationError(f"Invalid odd part {bin(mono.odd)} for {self.table!r}")

    @classmethod
    def _wrap(cls, table: GeneratorTable, terms: dict[Monomial, Rational]) -> SuperScalar:
        obj = cls.__new__(cls)
        obj.table = table
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, value: Rational, table: GeneratorTable = EMPTY_TABLE) -> SuperScalar:
        value = as_rational(value)
        return cls._wrap(table, {ONE: value} if value else {})

    @classmethod
    def zero(cls, table: GeneratorTable = EMPTY_TABLE) -> SuperScalar:
        return cls._wrap(table, {})

    @classmethod
    def generator(cls, table: GeneratorTable, gid: int) -> SuperScalar:
        if not 0 <= gid < len(table):
            raise ValidationError(f"Generator id {gid} outside table of size {len(table)}")
        if table.parity(gid):
            return cls._wrap(table, {_monomial(((), 1 << gid)): 1})
        return cls._wrap(table, {_monomial((((gid, 1),), 0)): 1})

    @classmethod
    def coerce(
        cls, value: SuperScalar | Rational, table: GeneratorTable = EMPTY_TABLE
    ) -> SuperScalar:
        if isinstance(value, SuperScalar):
            return value
        return cls.constant(value, table)

    # --- inspection -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE in self._terms)

    @property
    def constant_term(self) -> Rational:
        return self._terms.get(ONE, 0)

    @property
    def parity(self) -> int | None:
        """Parity if homogeneous (zero counts as even), None otherwise."""
        parities = {mono.odd.bit_count() & 1 for mono in self._terms}
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def homogeneous_parts(self) -> tuple[SuperScalar, SuperScalar]:
        """Split into (even part, odd part)."""
        even: dict[Monomial, Rational] = {}
        odd: dict[Monomial, Rational] = {}
        for mono, coeff in self._terms.items():
            (odd if mono.odd.bit_count() & 1 else even)[mono] = coeff
        return SuperScalar._wrap(self.table, even), SuperScalar._wrap(self.table, odd)

    def items(self) -> Iterable[tuple[Monomial, Rational]]:
        return self._terms.items()

    def terms(self) -> list[tuple[Monomial, Rational]]:
        """Terms in canonical (graded lexicographic) order."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, monomial: Monomial) -> Rational:
        return self._terms.get(monomial, 0)

    def support_ids(self) -> set[int]:
        ids: set[int] = set()
        for mono in self._terms:
            ids.update(gid for gid, _ in mono.even)
            ids.update(iter_bits(mono.odd))
        return ids

    # --- arithmetic -------------------------------------------------------

    def _operand(self, other: object) -> SuperScalar | None:
        if isinstance(other, SuperScalar):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SuperScalar.constant(other, self.table)
        return None

    def __add__(self, other: object) -> SuperScalar:
        rhs = self._operand(other)
        if rhs is None:
            return NotImplemented
        table = _common_table(self, rhs)
        if not rhs._terms:
            return SuperScalar._wrap(table, self._terms)
        terms = dict(self._terms)
        for mono, coeff in rhs._terms.items():
            value = terms.get(mono, 0) + coeff
            if value:
                terms[mono] = _norm(value)
            else:
                terms.pop(mono, None)
        return SuperScalar._wrap(table, terms)

    __radd__ = __add__

    def __neg__(self) -> SuperScalar:
        return SuperScalar._wrap(self.table, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> SuperScalar:
        rhs = self._operand(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> SuperScalar:
        lhs = self._operand(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def scale(self, factor: Rational) -> SuperScalar:
        factor = as_rational(factor)
        if not factor:
            return SuperScalar.zero(self.table)
        return SuperScalar._wrap(
            self.table, {m: _norm(c * factor) for m, c in self._terms.items()}
        )

    def __mul__(self, other: object) -> SuperScalar:
        if isinstance(other, SuperScalar):
            return scalar_mul(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> SuperScalar:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> SuperScalar:
        if exponent < 0:
            raise ValidationError("Negative powers need invert_unipotent")
        result = SuperScalar.constant(1, self.table)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._operand(other)
        if rhs is None:
            return NotImplemented
        if self._terms != rhs._terms:
            return False
        return self.is_constant or self.table == rhs.table

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # --- calculus and restructuring -----------------------------------------

    def derivative(self, gid: int) -> SuperScalar:
        """Left partial derivative with respect to generator gid."""
        out: dict[Monomial, Rational] = {}
        if self.table.parity(gid):
            bit = 1 << gid
            below = bit - 1
            for mono, coeff in self._terms.items():
                if mono.odd & bit:
                    sign = -1 if (mono.odd & below).bit_count() & 1 else 1
                    out[_monomial((mono.even, mono.odd ^ bit))] = sign * coeff
        else:
            for mono, coeff in self._terms.items():
                for position, (var, exp) in enumerate(mono.even):
                    if var == gid:
                        if exp == 1:
                            even = mono.even[:position] + mono.even[position + 1 :]
                        else:
                            even = (
                                mono.even[:position]
                                + ((var, exp - 1),)
                                + mono.even[position + 1 :]
                            )
                        key = _monomial((even, mono.odd))
                        out[key] = out.get(key, 0) + coeff * exp
                        break
        return SuperScalar._wrap(self.table, out)

    def split(self, gids: Iterable[int]) -> dict[Monomial, SuperScalar]:
        """Decompose as sum of m * rest with m a monomial in the given generators.

        Each term is written with the selected generators moved to the left;
        the returned map sends each such monomial m to the matching rest.
        """
        selected = set(gids)
        mask = 0
        for gid in selected:
            if self.table.parity(gid):
                mask |= 1 << gid
        parts: dict[Monomial, dict[Monomial, Rational]] = {}
        for mono, coeff in self._terms.items():
            head_even = tuple(pair for pair in mono.even if pair[0] in selected)
            rest_even = tuple(pair for pair in mono.even if pair[0] not in selected)
            head_odd = mono.odd & mask
            rest_odd = mono.odd & ~mask
            sign = merge_sign(head_odd, rest_odd)
            head = _monomial((head_even, head_odd))
            bucket = parts.setdefault(head, {})
            bucket[_monomial((rest_even, rest_odd))] = sign * coeff
        return {head: SuperScalar._wrap(self.table, terms) for head, terms in parts.items()}

    def with_table(self, table: GeneratorTable) -> SuperScalar:
        """Re-home onto a table that extends, or is a prefix of, the current one.

        Raises:
            TableMismatchError: If generator ids would change meaning
        """
        if table is self.table or self.is_constant:
            return SuperScalar._wrap(table, self._terms)
        if self.table.is_prefix_of(table):
            return SuperScalar._wrap(table, self._terms)
        if table.is_prefix_of(self.table) and all(
            gid < len(table) for gid in self.support_ids()
        ):
            return SuperScalar._wrap(table, self._terms)
        raise TableMismatchError(f"Cannot move {self!r} onto {table!r}")

    def to_json(self) -> list[list[str]]:
        """Sorted [monomial, 'num/den'] pairs."""
        return [[mono.label(self.table), format_rational(c)] for mono, c in self.terms()]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self.terms():
            if mono == ONE:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append(mono.label(self.table))
            elif coeff == -1:
                pieces.append(f"-{mono.label(self.table)}")
            else:
                pieces.append(f"{coeff}*{mono.label(self.table)}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SuperScalar({self})"


def scalar_mul(a: SuperScalar, b: SuperScalar) -> SuperScalar:
    """Exact product in canonical form.

    Raises:
        TableMismatchError: If the operands use different generator tables
    """
    table = _common_table(a, b)
    if not a._terms or not b._terms:
        return SuperScalar.zero(table)
    out: dict[Monomial, Rational] = {}
    for left, lc in a._terms.items():
        left_even, left_odd = left
        for right, rc in b._terms.items():
            right_even, right_odd = right
            if left_odd & right_odd:
                continue
            coeff = lc * rc
            if right_odd and left_odd and merge_sign(left_odd, right_odd) < 0:
                coeff = -coeff
            mono = _monomial((_merge_even(left_even, right_even), left_odd | right_odd))
            out[mono] = out.get(mono, 0) + coeff
    return SuperScalar._wrap(table, {m: _norm(c) for m, c in out.items() if c})


def invert_unipotent(a: SuperScalar) -> SuperScalar:
    """Exact inverse of c + nil, c a nonzero rational and nil odd-nilpotent.

    Raises:
        NotInvertibleError: If the constant term is zero
        ValidationError: If nil has a non-constant term without odd generators
    """
    c = a.constant_term
    if not c:
        raise NotInvertibleError(f"Constant term of {a} is zero")
    nil = a - c
    for mono, _ in nil.items():
        if not mono.odd:
            raise ValidationError(
                f"Cannot invert {a}: term {mono.label(a.table)} has no odd generator"
            )
    inv_c = Fraction(1) / Fraction(c)
    step = nil.scale(-inv_c)
    result = SuperScalar.constant(1, a.table)
    power = result
    while True:
        power = power * step
        if power.is_zero:
            break
        result = result + power
    return result.scale(inv_c)
