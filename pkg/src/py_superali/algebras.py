"""Classical matrix Lie (super)algebras: descriptors, bases, generic elements.

Form-preserving families (o, sp, osp, pe) get their bases from exact sympy
nullspaces of the defining linear condition, solved per parity block.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from .constants import Grammar
from .exceptions import SpecSyntaxError, ValidationError
from .permutations import generic_sign
from .superscalar import GeneratorTable, Monomial, Rational, SuperScalar
from .supermat import (
    BilinearForm,
    Entry,
    Format,
    SuperMatrix,
    antidiagonal_j,
    block_diagonal,
    is_queer_shape,
    preserves_form,
    queer_trace,
    supertrace,
    supertranspose,
)

logger = logging.getLogger(__name__)

_SPEC_PATTERN = re.compile(r"^\s*([a-z]+)\s*\(\s*(\d+)\s*(?:\|\s*(\d+)\s*)?\)\s*$")
FAMILIES = ("gl", "sl", "o", "sp", "osp", "pe", "q", "sq")


@dataclass(frozen=True)
class MatrixAlgebraSpec:
    """Symbolic descriptor of a classical matrix Lie (super)algebra.

    ``m`` and ``n`` are the numbers written in the descriptor, e.g. osp(1|2)
    has m=1, n=2 and pe(3) has m=3, n=0.
    """

    family: str
    m: int
    n: int = 0

    def __post_init__(self) -> None:
        text = str(self)
        if self.family not in FAMILIES:
            raise SpecSyntaxError(text, Grammar.MATRIX)
        if self.m < 0 or self.n < 0:
            raise ValidationError(f"{text}: sizes must be nonnegative")
        match self.family:
            case "gl":
                valid = self.m + self.n >= 1
            case "sl":
                valid = self.m + self.n >= 2
            case "o":
                valid = self.n == 0 and self.m >= 2
            case "sp":
                valid = self.n == 0 and self.m >= 2 and self.m % 2 == 0
            case "osp":
                valid = self.m >= 1 and self.n >= 2 and self.n % 2 == 0
            case _:
                valid = self.n == 0 and self.m >= 1
        if not valid:
            raise ValidationError(f"Invalid sizes for {text}; grammar: {Grammar.MATRIX}")

    @classmethod
    def parse(cls, text: str) -> MatrixAlgebraSpec:
        """Parse a descriptor such as 'sl(3)' or 'osp(1|2)'.

        Raises:
            SpecSyntaxError: If text does not match the grammar
            ValidationError: If the sizes are invalid for the family
        """
        match = _SPEC_PATTERN.match(text)
        if match is None or match.group(1) not in FAMILIES:
            raise SpecSyntaxError(text, Grammar.MATRIX)
        family, first, second = match.groups()
        if second is not None and family not in ("gl", "sl", "osp"):
            raise SpecSyntaxError(text, Grammar.MATRIX)
        if family == "osp" and second is None:
            raise SpecSyntaxError(text, Grammar.MATRIX)
        return cls(family, int(first), int(second or 0))

    def __str__(self) -> str:
        if self.family == "osp" or (self.family in ("gl", "sl") and self.n):
            return f"{self.family}({self.m}|{self.n})"
        return f"{self.family}({self.m})"

    @property
    def fmt(self) -> Format:
        if self.family in ("pe", "q", "sq"):
            return (self.m, self.m)
        return (self.m, self.n)

    @property
    def is_super(self) -> bool:
        return self.fmt[1] > 0


def _units(fmt: Format, parity: int) -> list[tuple[int, int]]:
    size = fmt[0] + fmt[1]
    return [
        (i, j)
        for i in range(size)
        for j in range(size)
        if (int(i >= fmt[0]) + int(j >= fmt[0])) % 2 == parity
    ]


def _matrix(fmt: Format, entries: dict[tuple[int, int], Rational], parity: int) -> SuperMatrix:
    size = fmt[0] + fmt[1]
    rows: list[list[Entry]] = [[0] * size for _ in range(size)]
    for (i, j), value in entries.items():
        rows[i][j] = value
    return SuperMatrix(fmt, rows, parity=parity)


def form_for(spec: MatrixAlgebraSpec) -> BilinearForm:
    """Gram matrix in normal form: 1_k, J_2k, diag(1_m, J_2n) or J_(n|n).

    Raises:
        ValidationError: If the family does not preserve a form
    """
    match spec.family:
        case "o":
            return BilinearForm(SuperMatrix.identity((spec.m, 0)), 0)
        case "sp":
            return BilinearForm(antidiagonal_j(spec.m // 2, (spec.m, 0), 0), 0)
        case "osp":
            ortho = SuperMatrix.identity((spec.m, 0))
            symplectic = antidiagonal_j(spec.n // 2, (spec.n, 0), 0)
            return BilinearForm(block_diagonal(ortho, symplectic, spec.fmt), 0)
        case "pe":
            return BilinearForm(antidiagonal_j(spec.m, spec.fmt, 1), 1)
    raise ValidationError(f"{spec} is not defined by a bilinear form")


def queer_operator(n: int) -> SuperMatrix:
    """The odd J = (0 1_n; -1_n 0) whose supercommutant is q(n)."""
    return antidiagonal_j(n, (n, n), 1)


def _to_fraction(value: sympy.Expr) -> Rational:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _form_basis(spec: MatrixAlgebraSpec) -> list[SuperMatrix]:
    form = form_for(spec)
    fmt = spec.fmt
    size = fmt[0] + fmt[1]
    elements: list[SuperMatrix] = []
    for parity in (0, 1):
        positions = _units(fmt, parity)
        if not positions:
            continue
        sign = -1 if parity * form.parity else 1
        columns = []
        for i, j in positions:
            unit = SuperMatrix.unit(fmt, i, j)
            image = form.gram @ unit + (supertranspose(unit) @ form.gram).scale(sign)
            columns.append([value for row in image.constant_values() for value in row])
        system = sympy.Matrix(size * size, len(positions), lambda r, c: columns[c][r])
        for vector in system.nullspace():
            scale = math.lcm(*(int(sympy.Rational(v).q) for v in vector))
            vector = vector * scale
            entries = {
                positions[k]: _to_fraction(v) for k, v in enumerate(vector) if v != 0
            }
            elements.append(_matrix(fmt, entries, parity))
    logger.debug(f"{spec}: nullspace basis with {len(elements)} elements")
    return elements


def _sl_diagonal(fmt: Format) -> list[SuperMatrix]:
    """Supertraceless diagonal elements E_ii - s_i s_(i+1) E_(i+1,i+1), s_i = (-1)^p(i)."""
    size = fmt[0] + fmt[1]
    signs = [1 if i < fmt[0] else -1 for i in range(size)]
    return [
        _matrix(fmt, {(i, i): 1, (i + 1, i + 1): -signs[i] * signs[i + 1]}, 0)
        for i in range(size - 1)
    ]


def _queer_basis(n: int, special: bool) -> list[SuperMatrix]:
    fmt = (n, n)
    elements = [
        _matrix(fmt, {(i, j): 1, (n + i, n + j): 1}, 0) for i in range(n) for j in range(n)
    ]
    for i in range(n):
        for j in range(n):
            if special and i == j:
                continue
            elements.append(_matrix(fmt, {(i, n + j): 1, (n + i, j): 1}, 1))
    if special:
        for i in range(n - 1):
            elements.append(
                _matrix(
                    fmt,
                    {(i, n + i): 1, (n + i, i): 1, (i + 1, n + i + 1): -1, (n + i + 1, i + 1): -1},
                    1,
                )
            )
    return elements


@lru_cache(maxsize=64)
def basis(spec: MatrixAlgebraSpec) -> tuple[SuperMatrix, ...]:
    """Parity-homogeneous basis in a fixed, deterministic order."""
    fmt = spec.fmt
    size = fmt[0] + fmt[1]
    match spec.family:
        case "gl":
            elements = [SuperMatrix.unit(fmt, i, j) for i in range(size) for j in range(size)]
        case "sl":
            elements = [
                SuperMatrix.unit(fmt, i, j) for i in range(size) for j in range(size) if i != j
            ]
            elements += _sl_diagonal(fmt)
        case "q":
            elements = _queer_basis(spec.m, special=False)
        case "sq":
            elements = _queer_basis(spec.m, special=True)
        case _:
            elements = _form_basis(spec)
    logger.debug(f"basis({spec}) has {len(elements)} elements")
    return tuple(elements)


def membership(spec: MatrixAlgebraSpec, x: SuperMatrix) -> bool:
    """Whether the homogeneous matrix x lies in the algebra.

    Raises:
        ParityError: If x is inhomogeneous
    """
    match spec.family:
        case "gl":
            return True
        case "sl":
            return supertrace(x).is_zero
        case "q":
            return is_queer_shape(x)
        case "sq":
            return is_queer_shape(x) and queer_trace(x).is_zero
    return preserves_form(form_for(spec), x)


@lru_cache(maxsize=64)
def generic_table(spec: MatrixAlgebraSpec) -> GeneratorTable:
    """One generator theta[k] per basis element, of parity p(b_k) + 1."""
    return GeneratorTable(
        ("theta", (k,), (b.parity + 1) % 2) for k, b in enumerate(basis(spec))
    )


@lru_cache(maxsize=64)
def generic_element(spec: MatrixAlgebraSpec) -> SuperMatrix:
    """X = sum theta_b Gamma^p(theta_b) b, an odd matrix.

    Gamma = diag(1_m, -1_n) is the identity in purely even formats. The twist
    turns theta (x) b -> X into an algebra map for entrywise multiplication.
    """
    table = generic_table(spec)
    fmt = spec.fmt
    size = fmt[0] + fmt[1]
    cells: list[list[dict[Monomial, Rational]]] = [
        [{} for _ in range(size)] for _ in range(size)
    ]
    for k, element in enumerate(basis(spec)):
        theta_odd = table.parity(k)
        mono = Monomial((), 1 << k) if theta_odd else Monomial(((k, 1),), 0)
        for i, row in enumerate(element.rows):
            for j, entry in enumerate(row):
                value = entry.constant_term
                if not value:
                    continue
                if theta_odd and i >= fmt[0]:
                    value = -value
                cells[i][j][mono] = value
    rows = [[SuperScalar(table, cell) for cell in row] for row in cells]
    return SuperMatrix(fmt, rows, parity=1, table=table)


@lru_cache(maxsize=128)
def generic_power(spec: MatrixAlgebraSpec, r: int) -> SuperMatrix:
    """X^r for the generic element, built incrementally and memoized."""
    if r < 1:
        raise ValidationError(f"Power must be positive, got {r}")
    x = generic_element(spec)
    if r == 1:
        return x
    previous = generic_power(spec, r - 1)
    if previous.is_zero:
        return previous
    return previous @ x


def extract_antisymmetrizers(spec: MatrixAlgebraSpec, r: int) -> dict[tuple[int, ...], SuperMatrix]:
    """Read a_r on basis multisets off the theta-coefficients of X^r.

    Keys are sorted basis-index tuples; for the monomial m of a key with
    multiplicities alpha, a_r = alpha! * generic_sign(P) * Gamma^p(m) * C_m.
    Multisets without a key have a_r = 0.
    """
    power = generic_power(spec, r)
    elements = basis(spec)
    out: dict[tuple[int, ...], SuperMatrix] = {}
    for mono, coefficient in power.split(range(len(generic_table(spec)))).items():
        indices = mono.generator_ids()
        multiplicity = math.prod(math.factorial(exp) for _, exp in mono.even)
        parities = tuple(elements[k].parity for k in indices)
        factor = multiplicity * generic_sign(parities)
        out[indices] = coefficient.twisted(mono.parity).scale(factor)
    return out
