"""Tests for determinant formulas of N-commutators."""

import random
from fractions import Fraction

import pytest

from py_superali.commutator_formulas import (
    h5_check,
    h5_constant,
    kcomm_agreement,
    kcomm_first_order,
    mirror_row,
    operator_ratio,
    scalar_ratio,
    vect6_agreement,
    vect6_formula,
    vect6_symbolic_ratio,
)
from py_superali.constants import HamiltonianConvention
from py_superali.diffop import DiffOp, commutator
from py_superali.exceptions import ValidationError
from py_superali.vectorfields import GenericFieldFamily, sample_fields


class TestRatios:
    """Tests for proportionality helpers."""

    def test_scalar_ratio_common_constant(self, mixed_table):
        """Test a common factor across pairs."""
        x, y = mixed_table.gen("x"), mixed_table.gen("y")
        assert scalar_ratio([(x.scale(2), x), (y.scale(4), y.scale(2))]) == (True, 2)

    def test_scalar_ratio_mismatch(self, mixed_table):
        """Test that differing factors are reported."""
        x, y = mixed_table.gen("x"), mixed_table.gen("y")
        proportional, constant = scalar_ratio([(x.scale(2), x), (y.scale(3), y)])
        assert not proportional
        assert constant == 2

    def test_scalar_ratio_all_zero(self, mixed_table):
        """Test that zero expectations need zero values."""
        zero = mixed_table.gen("x").scale(0)
        assert scalar_ratio([(zero, zero)]) == (True, None)
        assert scalar_ratio([(mixed_table.gen("x"), zero)]) == (False, None)

    def test_operator_ratio(self, line_domain):
        """Test c with a == c e for operators."""
        t = line_domain.coordinate(0)
        field = t * DiffOp.partial(line_domain, 0)
        assert operator_ratio(field.scale(Fraction(-3, 2)), field) == Fraction(-3, 2)
        assert operator_ratio(DiffOp.partial(line_domain, 0), field) is None
        assert operator_ratio(field, DiffOp.zero(line_domain)) is None

    def test_mirror_row(self):
        """Test that mirroring swaps both subscripts."""
        assert mirror_row((0, (1, 0))) == (1, (0, 1))
        assert mirror_row(mirror_row((1, (2, 0)))) == (1, (2, 0))


class TestKCommutatorFormula:
    """Tests for kcomm_first_order."""

    def test_two_commutator_is_bracket(self, line_domain):
        """Test the k=2 determinant against [X, Y]."""
        t = line_domain.coordinate(0)
        d = DiffOp.partial(line_domain, 0)
        x, y = t * d, (t * t) * d
        assert kcomm_first_order([x, y]) == commutator(x, y)

    def test_symbolic_two_commutator_on_plane(self):
        """Test k=2 on generic vect(2) fields of degree 1."""
        x, y = GenericFieldFamily(2, 2, 1).fields()
        assert kcomm_first_order([x, y]) == commutator(x, y)

    @pytest.mark.parametrize("n,k", [(1, 2), (1, 3), (2, 2), (2, 3)])
    def test_agreement_on_samples(self, n, k):
        """Test the formula against the order-1 part of a_k."""
        assert kcomm_agreement(n, k, samples=3, seed=11)

    def test_needs_at_least_two_fields(self, line_domain):
        """Test that k=1 is rejected."""
        with pytest.raises(ValidationError, match="k >= 2"):
            kcomm_first_order([DiffOp.partial(line_domain, 0)])

    def test_rejects_non_fields(self, line_domain):
        """Test that second-order operators are rejected."""
        d = DiffOp.partial(line_domain, 0)
        with pytest.raises(ValidationError, match="not an even-coordinate vector field"):
            kcomm_first_order([d, d @ d])


def swap_coordinates(domain, f):
    """f(x2, x1) for a polynomial f on the vect(2) plane."""
    total = domain.constant(0)
    for mono, value in f.terms():
        exponents = dict(mono.even)
        total = total + domain.monomial((exponents.get(1, 0), exponents.get(0, 0)), value)
    return total


def swap_field(field):
    """Push a vect(2) field forward along x1 <-> x2."""
    domain = field.domain
    u1, u2 = field.field_coefficients()[0]
    return DiffOp.vector_field(
        domain, [swap_coordinates(domain, u2), swap_coordinates(domain, u1)]
    )


class TestVect6:
    """Tests for the six-commutator on vect(2)."""

    def test_formula_needs_six_fields(self, plane_domain):
        """Test the argument count of vect6_formula."""
        with pytest.raises(ValidationError, match="Expected 6 fields"):
            vect6_formula([DiffOp.partial(plane_domain, 0)] * 2)

    def test_formula_vanishes_on_constant_fields(self, plane_domain):
        """Test that fields without derivatives give zero determinants."""
        fields = [DiffOp.partial(plane_domain, i % 2) for i in range(6)]
        assert vect6_formula(fields).is_zero

    @pytest.mark.parametrize("seed", [0, 1])
    def test_formula_commutes_with_coordinate_swap(self, plane_domain, seed):
        """Test that the d_2 row is the mirrored d_1 row with the same sign."""
        # Arrange
        fields = sample_fields(plane_domain, 6, 2, random.Random(seed))
        swapped = [swap_field(field) for field in fields]

        # Act
        formula = vect6_formula(fields)

        # Assert
        assert not formula.is_zero
        assert vect6_formula(swapped) == swap_field(formula)

    def test_single_sample_agreement(self):
        """Test one sampled tuple: both rows share a nonzero constant."""
        result = vect6_agreement(samples=1, seed=0)

        assert result.mirror_consistent
        assert result.d1_constant not in (None, 0)

    @pytest.mark.slow
    def test_sampled_agreement(self):
        """Test proportionality per component on sampled fields."""
        result = vect6_agreement(samples=3, seed=0)

        assert result.mirror_consistent
        assert result.d1_constant not in (None, 0)

    @pytest.mark.slow
    def test_symbolic_agreement(self):
        """Test a_6 against the combination on generic degree-2 fields."""
        ratio = vect6_symbolic_ratio(2)

        assert ratio is not None
        assert ratio != 0


class TestH5Constant:
    """Tests for the cached h(2) constant."""

    def test_cached_value_is_used(self, constant_store, mocker):
        """Test that a stored constant skips the computation."""
        constant_store.put(HamiltonianConvention.STORE_KEY, Fraction(-1, 3))
        compute = mocker.patch("py_superali.commutator_formulas.compute_h5_constant")

        assert h5_constant(constant_store) == Fraction(-1, 3)
        compute.assert_not_called()

    def test_computed_value_is_stored(self, constant_store, mocker):
        """Test that a fresh computation lands in the store."""
        mocker.patch(
            "py_superali.commutator_formulas.compute_h5_constant", return_value=Fraction(5, 2)
        )

        assert h5_constant(constant_store) == Fraction(5, 2)
        assert constant_store.get(HamiltonianConvention.STORE_KEY) == Fraction(5, 2)

    @pytest.mark.slow
    def test_sampled_h5_identity(self, constant_store):
        """Test a_5 == c X_det on sampled Hamiltonian fields."""
        result = h5_check(samples=3, seed=0, store=constant_store)
        assert result.proportional
        assert result.divergence_free
        assert result.constant != 0
