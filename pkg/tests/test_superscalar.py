"""Tests for SuperScalar arithmetic in free supercommutative algebras."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from py_superali.exceptions import NotInvertibleError, TableMismatchError, ValidationError
from py_superali.superscalar import (
    GeneratorTable,
    Monomial,
    SuperScalar,
    as_rational,
    format_rational,
    invert_unipotent,
    merge_sign,
)
from tests.conftest import RATIONAL_STRINGS

# x, y even; a, b, c odd
TABLE = GeneratorTable([("x", (), 0), ("y", (), 0), ("a", (), 1), ("b", (), 1), ("c", (), 1)])
ODD_IDS = (2, 3, 4)


@st.composite
def monomials(draw, parity=None):
    ex = draw(st.integers(0, 2))
    ey = draw(st.integers(0, 2))
    odd = draw(st.sets(st.sampled_from(ODD_IDS), max_size=3))
    if parity is not None and len(odd) % 2 != parity:
        odd = set(odd) ^ {ODD_IDS[0]}
    even = tuple((gid, e) for gid, e in ((0, ex), (1, ey)) if e)
    return Monomial(even, sum(1 << gid for gid in odd))


def scalars(parity=None):
    return st.dictionaries(monomials(parity), st.integers(-3, 3), max_size=4).map(
        lambda terms: SuperScalar(TABLE, terms)
    )


def parity_sign(a: SuperScalar, b: SuperScalar) -> int:
    return -1 if a.parity and b.parity else 1


class TestRationals:
    """Tests for exact rational helpers."""

    @pytest.mark.parametrize("value,text", RATIONAL_STRINGS)
    def test_format_rational(self, value, text):
        """Test 'p/q' serialization."""
        assert format_rational(value) == text

    def test_integral_fraction_collapses_to_int(self):
        """Test that Fraction(4, 2) normalizes to the int 2."""
        value = as_rational(Fraction(4, 2))
        assert value == 2
        assert type(value) is int

    @pytest.mark.parametrize("value", [0.5, "1/2", True, None])
    def test_inexact_values_rejected(self, value):
        """Test that floats, strings and bools are not coefficients."""
        with pytest.raises(TypeError):
            as_rational(value)

    def test_merge_sign_counts_crossings(self):
        """Test the reordering sign of odd bitmasks."""
        assert merge_sign(0b001, 0b010) == 1
        assert merge_sign(0b010, 0b001) == -1
        assert merge_sign(0b110, 0b001) == 1


class TestConstruction:
    """Tests for generator tables and canonical form."""

    def test_duplicate_generator_rejected(self):
        """Test that a generator cannot be declared twice."""
        with pytest.raises(ValidationError, match="Duplicate generator"):
            GeneratorTable([("x", (), 0), ("x", (), 1)])

    def test_unknown_generator_lookup(self):
        """Test id_of for a missing generator."""
        with pytest.raises(ValidationError, match="Unknown generator"):
            TABLE.id_of("z")

    def test_zero_coefficients_dropped(self):
        """Test that explicit zero terms vanish from the canonical form."""
        value = SuperScalar(TABLE, {Monomial(((0, 1),), 0): 0})
        assert value.is_zero
        assert str(value) == "0"

    def test_odd_generator_as_even_rejected(self):
        """Test that an odd id in the even part is invalid."""
        with pytest.raises(ValidationError, match="Invalid even part"):
            SuperScalar(TABLE, {Monomial(((2, 1),), 0): 1})

    def test_parity_of_mixed_value_is_none(self):
        """Test that inhomogeneous values report no parity."""
        a = TABLE.gen("a")
        x = TABLE.gen("x")
        assert (x + a).parity is None
        assert (x * a).parity == 1
        assert SuperScalar.zero(TABLE).parity == 0

    def test_different_tables_do_not_mix(self):
        """Test that operands over unrelated tables raise."""
        other = GeneratorTable([("z", (), 0)])
        with pytest.raises(TableMismatchError):
            _ = TABLE.gen("x") + other.gen("z")

    def test_constants_combine_with_any_table(self):
        """Test that rational constants work over every table."""
        assert TABLE.gen("x") + 1 - 1 == TABLE.gen("x")
        assert SuperScalar.constant(3) * TABLE.gen("a") == TABLE.gen("a").scale(3)


class TestAlgebraLaws:
    """Property tests for the supercommutative algebra structure."""

    @settings(max_examples=60, deadline=None)
    @given(scalars(), scalars(), scalars())
    def test_associativity(self, a, b, c):
        """Test (ab)c == a(bc)."""
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=60, deadline=None)
    @given(scalars(), scalars(), scalars())
    def test_distributivity(self, a, b, c):
        """Test a(b + c) == ab + ac."""
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([0, 1]), st.sampled_from([0, 1]), st.data())
    def test_supercommutativity(self, p, q, data):
        """Test ab == (-1)^(p(a)p(b)) ba for homogeneous a, b."""
        a = data.draw(scalars(p))
        b = data.draw(scalars(q))
        assert a * b == (b * a).scale(parity_sign(a, b))

    @settings(max_examples=60, deadline=None)
    @given(scalars(1))
    def test_odd_elements_square_to_zero(self, a):
        """Test a^2 == 0 for odd a."""
        assert (a * a).is_zero

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([0, 2, 3]), st.sampled_from([0, 1]), st.data())
    def test_derivative_leibniz_rule(self, gid, p, data):
        """Test d(ab) == d(a) b + (-1)^(p(d)p(a)) a d(b)."""
        a = data.draw(scalars(p))
        b = data.draw(scalars())
        sign = -1 if TABLE.parity(gid) and a.parity else 1
        expected = a.derivative(gid) * b + (a * b.derivative(gid)).scale(sign)
        assert (a * b).derivative(gid) == expected

    @settings(max_examples=40, deadline=None)
    @given(scalars())
    def test_split_reconstructs_value(self, s):
        """Test sum m * rest over split(ids) reproduces the value."""
        parts = s.split([0, 2])
        total = SuperScalar.zero(TABLE)
        for head, rest in parts.items():
            total = total + SuperScalar(TABLE, {head: 1}) * rest
        assert total == s


class TestInversion:
    """Tests for inverting 1 + nilpotent elements."""

    def test_inverse_of_unipotent(self):
        """Test that invert_unipotent returns a two-sided inverse."""
        x, a, b = TABLE.gen("x"), TABLE.gen("a"), TABLE.gen("b")
        value = 2 + a * b + x * a
        inverse = invert_unipotent(value)
        assert value * inverse == 1
        assert inverse * value == 1

    def test_zero_constant_term_not_invertible(self):
        """Test that a nilpotent element has no inverse."""
        with pytest.raises(NotInvertibleError, match="Constant term"):
            invert_unipotent(TABLE.gen("a") * TABLE.gen("b"))

    def test_even_generator_not_nilpotent(self):
        """Test that 1 + x is rejected as non-unipotent."""
        with pytest.raises(ValidationError, match="no odd generator"):
            invert_unipotent(1 + TABLE.gen("x"))


class TestRestructuring:
    """Tests for table moves and serialization."""

    def test_with_table_extends(self):
        """Test moving a value onto an extended table."""
        bigger = TABLE.extend([("eta", (0,), 1)])
        moved = TABLE.gen("x").with_table(bigger)
        assert moved.table == bigger
        assert moved == bigger.gen("x")

    def test_to_json_pairs(self):
        """Test sorted [monomial, 'p/q'] serialization."""
        value = TABLE.gen("x").scale(Fraction(1, 2)) + 3
        assert value.to_json() == [["1", "3/1"], ["x", "1/2"]]
