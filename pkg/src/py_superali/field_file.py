"""Parser for vect(1) field files.

One field per line, written as a sum of coef*x^a*d/dx terms; blank lines and
text after '#' are ignored. The first three fields are X_1, X_2, X_3 and an
optional fourth line is Y (d/dx when omitted).
"""

import logging
from fractions import Fraction
from pathlib import Path
from tokenize import TokenError
from typing import NamedTuple

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from .constants import Grammar
from .diffop import DiffOp, SuperDomain
from .exceptions import ValidationError
from .superscalar import Rational, SuperScalar, as_rational
from .vectorfields import coordinate_domain

logger = logging.getLogger(__name__)

_X = sympy.Symbol("x")
_D = sympy.Symbol("D")
_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication)


class FieldFile(NamedTuple):
    fields: tuple[DiffOp, ...]
    y: DiffOp


def _rational(value: sympy.Expr) -> Rational:
    if not value.is_Rational:
        raise ValidationError(f"Coefficient {value} is not rational")
    return as_rational(Fraction(int(value.p), int(value.q)))


def parse_field(line: str, domain: SuperDomain | None = None, line_no: int = 1) -> DiffOp:
    """Parse one line into a vect(1) field on ``domain`` (default coordinate t).

    Raises:
        ValidationError: If the line is not a sum of coef*x^a*d/dx terms
    """
    domain = domain or coordinate_domain("vect", 1)
    text = line.replace("d/dx", "D")
    try:
        expr = sympy.expand(
            parse_expr(text, local_dict={"x": _X, "D": _D}, transformations=_TRANSFORMS)
        )
        poly = sympy.Poly(expr, _X, _D)
    except (
        SyntaxError,
        TokenError,
        TypeError,
        ValueError,
        sympy.SympifyError,
        sympy.PolynomialError,
    ) as e:
        raise ValidationError(
            f"Line {line_no}: cannot parse {line.strip()!r} ({e}); expected {Grammar.FIELD_LINE}"
        ) from None
    coefficient = SuperScalar.zero(domain.table)
    for (power, derivatives), value in poly.terms():
        if value == 0:
            continue
        if derivatives != 1:
            raise ValidationError(
                f"Line {line_no}: every term needs exactly one d/dx; expected {Grammar.FIELD_LINE}"
            )
        coefficient = coefficient + domain.monomial((power,), _rational(value))
    return DiffOp.vector_field(domain, [coefficient])


def parse_field_text(text: str, domain: SuperDomain | None = None) -> FieldFile:
    """Parse the whole file content.

    Raises:
        ValidationError: If there are not 3 or 4 field lines
    """
    domain = domain or coordinate_domain("vect", 1)
    fields = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            fields.append(parse_field(line, domain, line_no))
    if len(fields) not in (3, 4):
        raise ValidationError(
            f"Expected 3 or 4 fields (X1, X2, X3 and optional Y), got {len(fields)}"
        )
    y = fields[3] if len(fields) == 4 else DiffOp.partial(domain, 0)
    logger.debug(f"Parsed {len(fields)} fields")
    return FieldFile(tuple(fields[:3]), y)


def load_field_file(path: str | Path) -> FieldFile:
    """Read and parse a field file.

    Raises:
        ValidationError: If the file cannot be read or parsed
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ValidationError(f"Cannot read field file {path}: {e}") from None
    return parse_field_text(text)
