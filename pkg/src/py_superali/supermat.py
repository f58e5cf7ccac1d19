"""Supermatrices in standard format over SuperScalar entries."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import (
    FormatMismatchError,
    NotInvertibleError,
    ParityError,
    ShapeError,
    TableMismatchError,
    ValidationError,
)
from .superscalar import (
    EMPTY_TABLE,
    GeneratorTable,
    Monomial,
    Rational,
    SuperScalar,
    invert_unipotent,
)
from .validators import validate_parity

logger = logging.getLogger(__name__)

Format = tuple[int, int]
Entry = SuperScalar | Rational
Grid = list[list[SuperScalar]]


class SuperMatrix:
    """Square (m|n)-format matrix with SuperScalar entries.

    Row/column i is even for i < m and odd otherwise. When ``declared_parity``
    is p, entries in diagonal blocks have parity p and entries in off-diagonal
    blocks parity p + 1.
    """

    __slots__ = ("fmt", "table", "_rows", "declared_parity")

    fmt: Format
    table: GeneratorTable
    _rows: tuple[tuple[SuperScalar, ...], ...]
    declared_parity: int | None

    def __init__(
        self,
        fmt: Format,
        rows: Sequence[Sequence[Entry]],
        parity: int | None = None,
        table: GeneratorTable | None = None,
    ):
        m, n = fmt
        if m < 0 or n < 0:
            raise ValidationError(f"Format sizes must be nonnegative, got ({m}|{n})")
        size = m + n
        if len(rows) != size or any(len(row) != size for row in rows):
            raise ShapeError(f"Format ({m}|{n}) needs a {size}x{size} grid")
        common = table if table is not None else EMPTY_TABLE
        grid = []
        for row in rows:
            converted = []
            for entry in row:
                scalar = SuperScalar.coerce(entry, common)
                if not scalar.is_constant:
                    if not len(common):
                        common = scalar.table
                    elif scalar.table != common:
                        raise TableMismatchError("Matrix entries use different generator tables")
                converted.append(scalar)
            grid.append(tuple(converted))
        self.fmt = (m, n)
        self.table = common
        self._rows = tuple(grid)
        self.declared_parity = None
        if parity is not None:
            validate_parity(parity)
            inferred = self._infer_parity()
            if inferred is not None and inferred != parity and not self.is_zero:
                raise ParityError(f"Entries are not homogeneous of parity {parity}")
            if inferred is None:
                raise ParityError("Entries are not parity-homogeneous")
            self.declared_parity = parity

    @classmethod
    def _wrap(
        cls,
        fmt: Format,
        rows: Iterable[Iterable[SuperScalar]],
        table: GeneratorTable,
        parity: int | None = None,
    ) -> SuperMatrix:
        obj = cls.__new__(cls)
        obj.fmt = fmt
        obj.table = table
        obj._rows = tuple(tuple(row) for row in rows)
        obj.declared_parity = parity
        return obj

    @classmethod
    def zeros(cls, fmt: Format, table: GeneratorTable = EMPTY_TABLE) -> SuperMatrix:
        zero = SuperScalar.zero(table)
        size = fmt[0] + fmt[1]
        return cls._wrap(fmt, ([zero] * size for _ in range(size)), table, 0)

    @classmethod
    def identity(cls, fmt: Format, table: GeneratorTable = EMPTY_TABLE) -> SuperMatrix:
        size = fmt[0] + fmt[1]
        zero, one = SuperScalar.zero(table), SuperScalar.constant(1, table)
        rows = ([one if i == j else zero for j in range(size)] for i in range(size))
        return cls._wrap(fmt, rows, table, 0)

    @classmethod
    def unit(cls, fmt: Format, i: int, j: int, value: Rational = 1) -> SuperMatrix:
        """value * E_ij (0-based), declared with the parity of its block."""
        size = fmt[0] + fmt[1]
        if not (0 <= i < size and 0 <= j < size):
            raise ValidationError(f"Unit E[{i},{j}] outside a {size}x{size} matrix")
        rows: list[list[Entry]] = [[0] * size for _ in range(size)]
        rows[i][j] = value
        parity = (int(i >= fmt[0]) + int(j >= fmt[0])) % 2
        return cls(fmt, rows, parity=parity)

    @classmethod
    def from_blocks(
        cls,
        a: Sequence[Sequence[Entry]],
        b: Sequence[Sequence[Entry]],
        c: Sequence[Sequence[Entry]],
        d: Sequence[Sequence[Entry]],
        parity: int | None = None,
        table: GeneratorTable | None = None,
    ) -> SuperMatrix:
        m, n = len(a), len(d)
        rows = [list(a[i]) + list(b[i]) for i in range(m)]
        rows += [list(c[i]) + list(d[i]) for i in range(n)]
        return cls((m, n), rows, parity=parity, table=table)

    # --- inspection -------------------------------------------------------

    @property
    def size(self) -> int:
        return self.fmt[0] + self.fmt[1]

    @property
    def rows(self) -> tuple[tuple[SuperScalar, ...], ...]:
        return self._rows

    def __getitem__(self, position: tuple[int, int]) -> SuperScalar:
        i, j = position
        return self._rows[i][j]

    def row_parity(self, i: int) -> int:
        return int(i >= self.fmt[0])

    def block_parity(self, i: int, j: int) -> int:
        return (self.row_parity(i) + self.row_parity(j)) % 2

    def _infer_parity(self) -> int | None:
        found: set[int] = set()
        for i, row in enumerate(self._rows):
            for j, entry in enumerate(row):
                if entry.is_zero:
                    continue
                p = entry.parity
                if p is None:
                    return None
                found.add((p + self.block_parity(i, j)) % 2)
        if len(found) > 1:
            return None
        return found.pop() if found else 0

    @property
    def parity(self) -> int:
        """Declared or inferred parity.

        Raises:
            ParityError: If the matrix is inhomogeneous and has no declared parity
        """
        if self.declared_parity is not None:
            return self.declared_parity
        inferred = self._infer_parity()
        if inferred is None:
            raise ParityError("Supermatrix is not parity-homogeneous")
        return inferred

    @property
    def is_homogeneous(self) -> bool:
        return self._infer_parity() is not None

    @property
    def is_zero(self) -> bool:
        return all(entry.is_zero for row in self._rows for entry in row)

    @property
    def is_constant(self) -> bool:
        return all(entry.is_constant for row in self._rows for entry in row)

    def blocks(self) -> tuple[Grid, Grid, Grid, Grid]:
        """(A, B, C, D) as fresh nested lists."""
        m = self.fmt[0]
        rows = self._rows
        a = [list(row[:m]) for row in rows[:m]]
        b = [list(row[m:]) for row in rows[:m]]
        c = [list(row[:m]) for row in rows[m:]]
        d = [list(row[m:]) for row in rows[m:]]
        return a, b, c, d

    def zero_like(self) -> SuperMatrix:
        return SuperMatrix.zeros(self.fmt, self.table)

    def constant_values(self) -> list[list[Rational]]:
        """Entries as rationals.

        Raises:
            ValidationError: If an entry involves generators
        """
        if not self.is_constant:
            raise ValidationError("Matrix has non-constant entries")
        return [[entry.constant_term for entry in row] for row in self._rows]

    # --- arithmetic -------------------------------------------------------

    def _check_format(self, other: SuperMatrix) -> None:
        if self.fmt != other.fmt:
            raise FormatMismatchError(self.fmt, other.fmt)

    def _combine_parity(self, other: SuperMatrix) -> int | None:
        if self.declared_parity is None or other.declared_parity is None:
            return None
        if self.is_zero:
            return other.declared_parity
        if other.is_zero or self.declared_parity == other.declared_parity:
            return self.declared_parity
        return None

    def __add__(self, other: SuperMatrix) -> SuperMatrix:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._check_format(other)
        rows = (
            [x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)
        )
        table = self.table if len(self.table) else other.table
        return SuperMatrix._wrap(self.fmt, rows, table, self._combine_parity(other))

    def __neg__(self) -> SuperMatrix:
        rows = ([-x for x in row] for row in self._rows)
        return SuperMatrix._wrap(self.fmt, rows, self.table, self.declared_parity)

    def __sub__(self, other: SuperMatrix) -> SuperMatrix:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: SuperScalar | Rational) -> SuperMatrix:
        """Left multiplication of every entry by a scalar."""
        if isinstance(factor, SuperScalar):
            rows = ([factor * x for x in row] for row in self._rows)
            parity = None
            if self.declared_parity is not None and factor.parity is not None:
                parity = (self.declared_parity + factor.parity) % 2
            table = self.table if len(self.table) else factor.table
            return SuperMatrix._wrap(self.fmt, rows, table, parity)
        rows = ([x.scale(factor) for x in row] for row in self._rows)
        return SuperMatrix._wrap(self.fmt, rows, self.table, self.declared_parity)

    def __mul__(self, other: object) -> SuperMatrix:
        if isinstance(other, (SuperScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: SuperMatrix) -> SuperMatrix:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.fmt == other.fmt and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.fmt, self._rows))

    def map_entries(self, fn: Callable[[int, int, SuperScalar], SuperScalar]) -> SuperMatrix:
        rows = (
            [fn(i, j, entry) for j, entry in enumerate(row)]
            for i, row in enumerate(self._rows)
        )
        return SuperMatrix._wrap(self.fmt, rows, self.table, self.declared_parity)

    def twisted(self, exponent: int) -> SuperMatrix:
        """Gamma^exponent * self, Gamma = diag(1_m, -1_n)."""
        if not exponent % 2:
            return self
        return self.map_entries(lambda i, _j, x: -x if i >= self.fmt[0] else x)

    def split(self, gids: Iterable[int]) -> dict[Monomial, SuperMatrix]:
        """Decompose entrywise by monomials in the given generators.

        Returns a map from monomial m to the matrix C_m with self = sum m * C_m.
        """
        selected = tuple(gids)
        size = self.size
        parts: dict[Monomial, list[list[SuperScalar]]] = {}
        zero = SuperScalar.zero(self.table)
        for i, row in enumerate(self._rows):
            for j, entry in enumerate(row):
                for head, rest in entry.split(selected).items():
                    grid = parts.get(head)
                    if grid is None:
                        grid = [[zero] * size for _ in range(size)]
                        parts[head] = grid
                    grid[i][j] = rest
        return {
            head: SuperMatrix._wrap(self.fmt, grid, self.table)
            for head, grid in parts.items()
        }

    def supertranspose(self) -> SuperMatrix:
        return supertranspose(self)

    def to_json(self) -> list[list[list[list[str]]]]:
        return [[entry.to_json() for entry in row] for row in self._rows]

    def __repr__(self) -> str:
        m, n = self.fmt
        body = "; ".join(", ".join(str(x) for x in row) for row in self._rows)
        return f"SuperMatrix(({m}|{n}): [{body}])"


def mat_mul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """Exact product of two supermatrices of the same format.

    Raises:
        FormatMismatchError: If the formats differ
    """
    if a.fmt != b.fmt:
        raise FormatMismatchError(a.fmt, b.fmt)
    size = a.size
    table = a.table if len(a.table) else b.table
    zero = SuperScalar.zero(table)
    columns = list(zip(*b.rows))
    rows = []
    for row in a.rows:
        nonzero = [(k, x) for k, x in enumerate(row) if not x.is_zero]
        out_row = []
        for j in range(size):
            column = columns[j]
            acc = zero
            for k, x in nonzero:
                y = column[k]
                if not y.is_zero:
                    acc = acc + x * y
            out_row.append(acc)
        rows.append(out_row)
    parity = None
    if a.declared_parity is not None and b.declared_parity is not None:
        parity = (a.declared_parity + b.declared_parity) % 2
    return SuperMatrix._wrap(a.fmt, rows, table, parity)


def superbracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """[X, Y] = XY - (-1)^(p(X)p(Y)) YX for homogeneous X, Y."""
    if x.parity and y.parity:
        return x @ y + y @ x
    return x @ y - y @ x


def supertrace(x: SuperMatrix) -> SuperScalar:
    """str X = tr A - (-1)^p tr D.

    Raises:
        ParityError: If X is inhomogeneous without a declared parity
    """
    p = x.parity
    m = x.fmt[0]
    total = SuperScalar.zero(x.table)
    for i in range(x.size):
        entry = x[i, i]
        if i < m or p:
            total = total + entry
        else:
            total = total - entry
    return total


def is_queer_shape(x: SuperMatrix) -> bool:
    """True for (A B; B A) in format (n|n)."""
    m, n = x.fmt
    if m != n:
        return False
    a, b, c, d = x.blocks()
    return a == d and b == c


def queer_trace(x: SuperMatrix) -> SuperScalar:
    """qtr (A B; B A) = tr B.

    Raises:
        ShapeError: If X is not of Q(n) shape
    """
    if not is_queer_shape(x):
        raise ShapeError("queer_trace needs a matrix of shape (A B; B A)")
    n = x.fmt[0]
    total = SuperScalar.zero(x.table)
    for i in range(n):
        total = total + x[i, n + i]
    return total


def supertranspose(x: SuperMatrix) -> SuperMatrix:
    """(A B; C D) -> (A^t  -C^t; B^t  D^t)."""
    m = x.fmt[0]
    size = x.size
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            entry = x[j, i]
            if i < m <= j:
                entry = -entry
            row.append(entry)
        rows.append(row)
    return SuperMatrix._wrap(x.fmt, rows, x.table, x.declared_parity)


def parity_swap(z: SuperMatrix) -> SuperMatrix:
    """Z^Pi = (D C; B A) in format (n|m)."""
    a, b, c, d = z.blocks()
    rows = [d[i] + c[i] for i in range(len(d))] + [b[i] + a[i] for i in range(len(a))]
    return SuperMatrix._wrap((z.fmt[1], z.fmt[0]), rows, z.table, z.declared_parity)


def determinant(
    rows: Sequence[Sequence[SuperScalar]], table: GeneratorTable = EMPTY_TABLE
) -> SuperScalar:
    """Leibniz determinant of a square grid of mutually commuting entries.

    Sums over column subsets row by row; the sign of placing column c after the
    already used columns is the parity of used columns greater than c.
    """
    size = len(rows)
    one = SuperScalar.constant(1, table)
    partial: dict[int, SuperScalar] = {0: one}
    for r in range(size):
        following: dict[int, SuperScalar] = {}
        row = rows[r]
        for used, acc in partial.items():
            for c in range(size):
                bit = 1 << c
                if used & bit:
                    continue
                entry = row[c]
                if entry.is_zero:
                    continue
                term = acc * entry
                if (used >> (c + 1)).bit_count() & 1:
                    term = -term
                key = used | bit
                previous = following.get(key)
                following[key] = term if previous is None else previous + term
        partial = {key: value for key, value in following.items() if not value.is_zero}
        if not partial:
            return SuperScalar.zero(table)
    return partial.get((1 << size) - 1, SuperScalar.zero(table))


def _require_even_entries(rows: Sequence[Sequence[SuperScalar]]) -> None:
    for row in rows:
        for entry in row:
            if entry.parity != 0:
                raise ParityError(f"det_even needs even entries, found {entry}")


def det_even(x: SuperMatrix | Sequence[Sequence[SuperScalar]]) -> SuperScalar:
    """Determinant over the commutative even subalgebra.

    Raises:
        ParityError: If an entry is odd or inhomogeneous
    """
    rows = x.rows if isinstance(x, SuperMatrix) else x
    table = x.table if isinstance(x, SuperMatrix) else _table_of(rows)
    _require_even_entries(rows)
    return determinant(rows, table)


def _table_of(rows: Sequence[Sequence[SuperScalar]]) -> GeneratorTable:
    for row in rows:
        for entry in row:
            if not entry.is_constant:
                return entry.table
    return EMPTY_TABLE


def _block_mul(left: Grid, right: Grid, zero: SuperScalar) -> Grid:
    inner = len(right)
    width = len(right[0]) if right else 0
    out = []
    for row in left:
        out_row = []
        for j in range(width):
            acc = zero
            for k in range(inner):
                if not row[k].is_zero and not right[k][j].is_zero:
                    acc = acc + row[k] * right[k][j]
            out_row.append(acc)
        out.append(out_row)
    return out


def inverse_even(rows: Sequence[Sequence[SuperScalar]]) -> Grid:
    """Inverse of a square grid of even entries via adjugate and det^-1.

    Raises:
        NotInvertibleError: If the constant part of the determinant is zero
    """
    _require_even_entries(rows)
    table = _table_of(rows)
    size = len(rows)
    inv_det = invert_unipotent(determinant(rows, table))
    out: Grid = []
    for i in range(size):
        out_row = []
        for j in range(size):
            minor = [
                [rows[r][c] for c in range(size) if c != i]
                for r in range(size)
                if r != j
            ]
            cofactor = determinant(minor, table) * inv_det
            out_row.append(-cofactor if (i + j) % 2 else cofactor)
        out.append(out_row)
    return out


def berezinian(z: SuperMatrix) -> SuperScalar:
    """Ber (A B; C D) = det(A - B D^-1 C) * det(D)^-1 for even Z.

    Raises:
        ParityError: If Z is not even
        NotInvertibleError: If the D block is not invertible
    """
    if z.parity != 0:
        raise ParityError("Berezinian needs an even supermatrix")
    a, b, c, d = z.blocks()
    table = z.table
    if not d:
        return det_even(a)
    try:
        inv_det_d = invert_unipotent(det_even(d))
    except NotInvertibleError:
        raise NotInvertibleError("D block of the supermatrix is not invertible") from None
    if not a:
        return inv_det_d
    zero = SuperScalar.zero(table)
    d_inv = inverse_even(d)
    correction = _block_mul(_block_mul(b, d_inv, zero), c, zero)
    schur = [[a[i][j] - correction[i][j] for j in range(len(a))] for i in range(len(a))]
    return det_even(schur) * inv_det_d


@dataclass(frozen=True)
class BilinearForm:
    """Nondegenerate bilinear form given by a rational Gram matrix."""

    gram: SuperMatrix
    parity: int

    def __post_init__(self) -> None:
        validate_parity(self.parity)
        if not self.gram.is_constant:
            raise ValidationError("Gram matrix must have rational entries")
        if self.gram.parity != self.parity:
            raise ParityError(f"Gram matrix block structure is not of parity {self.parity}")
        if determinant(self.gram.rows).is_zero:
            raise NotInvertibleError("Gram matrix is degenerate")


def preserves_form(form: BilinearForm, x: SuperMatrix) -> bool:
    """B X + (-1)^(p(X) p(B)) X^st B == 0.

    Raises:
        ParityError: If X is inhomogeneous
        FormatMismatchError: If X and the Gram matrix have different formats
    """
    p = x.parity
    left = form.gram @ x
    right = supertranspose(x) @ form.gram
    total = left - right if p * form.parity else left + right
    return total.is_zero


def antidiagonal_j(half: int, fmt: Format, parity: int) -> SuperMatrix:
    """(0 1_half; -1_half 0) placed in the given format."""
    size = 2 * half
    rows: list[list[Entry]] = [[0] * size for _ in range(size)]
    for i in range(half):
        rows[i][half + i] = 1
        rows[half + i][i] = -1
    return SuperMatrix(fmt, rows, parity=parity)


def block_diagonal(first: SuperMatrix, second: SuperMatrix, fmt: Format) -> SuperMatrix:
    """diag(first, second) as a single matrix of format fmt."""
    size = first.size + second.size
    rows: list[list[Entry]] = [[0] * size for _ in range(size)]
    for i, row in enumerate(first.constant_values()):
        for j, value in enumerate(row):
            rows[i][j] = value
    offset = first.size
    for i, row in enumerate(second.constant_values()):
        for j, value in enumerate(row):
            rows[offset + i][offset + j] = value
    return SuperMatrix(fmt, rows)
