"""Shared test fixtures and reference data."""

from fractions import Fraction

import pytest

from py_superali.constant_store import ConstantStore
from py_superali.diffop import SuperDomain
from py_superali.superscalar import GeneratorTable
from py_superali.vectorfields import coordinate_domain


# ============================================================================
# Algebra Fixtures
# ============================================================================


@pytest.fixture
def mixed_table() -> GeneratorTable:
    """Two even generators x, y and three odd generators a, b, c."""
    return GeneratorTable(
        [("x", (), 0), ("y", (), 0), ("a", (), 1), ("b", (), 1), ("c", (), 1)]
    )


@pytest.fixture
def line_domain() -> SuperDomain:
    """vect(1) coordinates, the single even coordinate t."""
    return coordinate_domain("vect", 1)


@pytest.fixture
def plane_domain() -> SuperDomain:
    """vect(2) coordinates x[1], x[2]."""
    return SuperDomain.create(2)


@pytest.fixture
def super_line_domain() -> SuperDomain:
    """One even coordinate x[1] and one odd coordinate xi[1]."""
    return SuperDomain.create(1, 1)


@pytest.fixture
def constant_store(tmp_path) -> ConstantStore:
    """ConstantStore backed by a file in a temporary directory."""
    return ConstantStore(str(tmp_path / "constants.json"))


# ============================================================================
# Test Data
# ============================================================================

# Algebra descriptors
VALID_MATRIX_SPECS = [
    ("gl(2)", "gl", 2, 0),
    ("gl(1|1)", "gl", 1, 1),
    ("sl(3)", "sl", 3, 0),
    ("sl(2|1)", "sl", 2, 1),
    ("o(4)", "o", 4, 0),
    ("sp(4)", "sp", 4, 0),
    ("osp(1|2)", "osp", 1, 2),
    ("pe(2)", "pe", 2, 0),
    ("q(2)", "q", 2, 0),
    ("sq(3)", "sq", 3, 0),
    (" sl ( 4 ) ", "sl", 4, 0),
]
INVALID_MATRIX_SYNTAX = ["", "gl", "gl()", "gl(2", "xyz(3)", "o(2|1)", "osp(2)", "GL(2)"]
INVALID_MATRIX_SIZES = ["sl(1)", "sp(3)", "o(1)", "osp(1|3)", "gl(0)"]

VALID_VECTORIAL_SPECS = [
    ("vect(1)", "vect", 1),
    ("vect(3)", "vect", 3),
    ("svect(2)", "svect", 2),
    ("h(2)", "h", 2),
    ("h(4)", "h", 4),
]
INVALID_VECTORIAL_SYNTAX = ["", "vect", "k(3)", "vect(2|1)", "h[2]"]
INVALID_VECTORIAL_SIZES = ["vect(0)", "svect(1)", "h(3)"]

# Expected antisymmetrizer spans: the k with a_k nonzero and landing in the algebra
EXPECTED_SPANS = {
    "sl(2)": {2},
    "sl(3)": {2, 4},
}
SLOW_EXPECTED_SPANS = {
    "sl(4)": {2, 4, 6},
    "sp(4)": {2, 5, 6},
    "o(5)": {2, 5, 6},
    "o(4)": {2, 5},
}

# Rationals and their "p/q" serialization
RATIONAL_STRINGS = [
    (0, "0/1"),
    (3, "3/1"),
    (-2, "-2/1"),
    (Fraction(1, 2), "1/2"),
    (Fraction(-7, 3), "-7/3"),
]
