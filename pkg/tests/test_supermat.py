"""Tests for supermatrices, supertraces and the Berezinian."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from py_superali.exceptions import (
    FormatMismatchError,
    NotInvertibleError,
    ParityError,
    ShapeError,
)
from py_superali.superscalar import GeneratorTable, SuperScalar
from py_superali.supermat import (
    BilinearForm,
    SuperMatrix,
    antidiagonal_j,
    berezinian,
    det_even,
    determinant,
    mat_mul,
    parity_swap,
    preserves_form,
    queer_trace,
    superbracket,
    supertrace,
    supertranspose,
)

ODD_11 = (1, 1)

GRASSMANN = GeneratorTable([("e", (i,), 1) for i in range(4)])
ODD_GENS = [GRASSMANN.gen("e", (i,)) for i in range(4)]


def odd_block(rows, cols):
    entry = st.lists(st.integers(-2, 2), min_size=4, max_size=4).map(
        lambda cs: sum(
            (g.scale(c) for g, c in zip(ODD_GENS, cs)), SuperScalar.zero(GRASSMANN)
        )
    )
    return st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def invertible_even_block(size):
    """Square blocks c + k e_0 e_1 whose constant part has nonzero determinant."""
    pair = st.tuples(st.integers(-3, 3), st.integers(-2, 2))
    grid = st.lists(st.lists(pair, min_size=size, max_size=size), min_size=size, max_size=size)
    nil = ODD_GENS[0] * ODD_GENS[1]
    return grid.filter(
        lambda g: not determinant([[SuperScalar.constant(c) for c, _ in row] for row in g]).is_zero
    ).map(
        lambda g: [
            [SuperScalar.constant(c, GRASSMANN) + nil.scale(k) for c, k in row] for row in g
        ]
    )


class TestConstruction:
    """Tests for building supermatrices."""

    def test_wrong_grid_size(self):
        """Test that the grid must match the format."""
        with pytest.raises(ShapeError, match=r"needs a 2x2 grid"):
            SuperMatrix(ODD_11, [[1]])

    def test_declared_parity_checked(self):
        """Test that a diagonal entry cannot be declared odd."""
        with pytest.raises(ParityError, match="parity 1"):
            SuperMatrix(ODD_11, [[1, 0], [0, 0]], parity=1)

    def test_unit_takes_block_parity(self):
        """Test that E_ij is odd exactly in off-diagonal blocks."""
        assert SuperMatrix.unit(ODD_11, 0, 0).parity == 0
        assert SuperMatrix.unit(ODD_11, 0, 1).parity == 1
        assert SuperMatrix.unit(ODD_11, 1, 0).parity == 1

    def test_odd_entries_make_even_off_diagonal(self, mixed_table):
        """Test parity inference with odd scalars in the odd blocks."""
        a, b = mixed_table.gen("a"), mixed_table.gen("b")
        z = SuperMatrix.from_blocks([[1]], [[a]], [[b]], [[1]])
        assert z.parity == 0
        assert z.table == mixed_table

    def test_inhomogeneous_matrix_has_no_parity(self):
        """Test that mixing blocks without declaration raises."""
        z = SuperMatrix(ODD_11, [[1, 1], [0, 0]])
        assert not z.is_homogeneous
        with pytest.raises(ParityError, match="not parity-homogeneous"):
            _ = z.parity


class TestArithmetic:
    """Tests for products and brackets."""

    def test_mat_mul_constants(self):
        """Test an ordinary 2x2 product."""
        x = SuperMatrix((2, 0), [[1, 2], [3, 4]])
        y = SuperMatrix((2, 0), [[0, 1], [1, 0]])
        assert mat_mul(x, y) == SuperMatrix((2, 0), [[2, 1], [4, 3]])

    def test_format_mismatch(self):
        """Test that (1|1) and (2|0) matrices do not multiply."""
        with pytest.raises(FormatMismatchError) as exc:
            _ = SuperMatrix.zeros(ODD_11) @ SuperMatrix.zeros((2, 0))
        assert exc.value.left == (1, 1)

    def test_odd_bracket_is_anticommutator(self):
        """Test [E_01, E_10] == E_00 + E_11 for odd units."""
        x = SuperMatrix.unit(ODD_11, 0, 1)
        y = SuperMatrix.unit(ODD_11, 1, 0)
        assert superbracket(x, y) == SuperMatrix.identity(ODD_11)

    def test_scale_by_odd_scalar_flips_parity(self, mixed_table):
        """Test that an odd factor changes the declared parity."""
        x = SuperMatrix.unit(ODD_11, 0, 0)
        assert x.scale(mixed_table.gen("a")).parity == 1

    def test_twist_negates_odd_rows(self):
        """Test Gamma X for Gamma = diag(1, -1)."""
        x = SuperMatrix(ODD_11, [[1, 2], [3, 4]])
        assert x.twisted(1) == SuperMatrix(ODD_11, [[1, 2], [-3, -4]])
        assert x.twisted(2) is x


class TestTraces:
    """Tests for supertrace and queer trace."""

    def test_supertrace_of_even_units(self):
        """Test str E_00 == 1 and str E_11 == -1 in format (1|1)."""
        assert supertrace(SuperMatrix.unit(ODD_11, 0, 0)) == 1
        assert supertrace(SuperMatrix.unit(ODD_11, 1, 1)) == -1

    def test_supertrace_of_bracket_vanishes(self):
        """Test str [X, Y] == 0 for odd X, Y."""
        x = SuperMatrix.unit((2, 1), 0, 2)
        y = SuperMatrix.unit((2, 1), 2, 0, value=3)
        assert supertrace(superbracket(x, y)).is_zero

    def test_queer_trace(self):
        """Test qtr (A B; B A) == tr B."""
        x = SuperMatrix(ODD_11, [[1, 2], [2, 1]])
        assert queer_trace(x) == 2

    def test_queer_trace_rejects_other_shapes(self):
        """Test that qtr needs the Q(n) shape."""
        with pytest.raises(ShapeError, match="shape"):
            queer_trace(SuperMatrix(ODD_11, [[1, 2], [3, 1]]))

    def test_supertranspose_of_odd_units(self):
        """Test (A B; C D)^st == (A^t -C^t; B^t D^t)."""
        assert supertranspose(SuperMatrix.unit(ODD_11, 0, 1)) == SuperMatrix.unit(ODD_11, 1, 0)
        assert supertranspose(SuperMatrix.unit(ODD_11, 1, 0)) == SuperMatrix.unit(
            ODD_11, 0, 1, value=-1
        )


class TestDeterminants:
    """Tests for det and the Berezinian."""

    def test_determinant_of_integers(self):
        """Test the Leibniz expansion on a 3x3 grid."""
        grid = [[2, 0, 1], [1, 3, 2], [1, 1, 2]]
        rows = [[SuperScalar.constant(v) for v in row] for row in grid]
        assert determinant(rows) == 6

    def test_det_even_rejects_odd_entries(self, mixed_table):
        """Test that det_even refuses odd scalars."""
        with pytest.raises(ParityError, match="even entries"):
            det_even([[mixed_table.gen("a")]])

    def test_one_minus_products_are_inverse(self, mixed_table):
        """Test det(1 - UV) det(1 - VU) == 1 for odd 1x1 blocks."""
        a, b = mixed_table.gen("a"), mixed_table.gen("b")
        assert det_even([[1 - a * b]]) * det_even([[1 - b * a]]) == 1

    def test_berezinian_of_diagonal(self):
        """Test Ber diag(2 | 3) == 2/3."""
        assert berezinian(SuperMatrix(ODD_11, [[2, 0], [0, 3]])) == Fraction(2, 3)

    def test_berezinian_with_odd_blocks(self, mixed_table):
        """Test Ber (1 a; b 1) == 1 - ab."""
        a, b = mixed_table.gen("a"), mixed_table.gen("b")
        z = SuperMatrix.from_blocks([[1]], [[a]], [[b]], [[1]])
        assert berezinian(z) == 1 - a * b

    def test_berezinian_is_multiplicative(self, mixed_table):
        """Test Ber(XY) == Ber X Ber Y on unipotent factors."""
        a, b = mixed_table.gen("a"), mixed_table.gen("b")
        x = SuperMatrix.from_blocks([[1]], [[a]], [[0]], [[1]])
        y = SuperMatrix.from_blocks([[1]], [[0]], [[b]], [[1]])
        assert berezinian(x @ y) == berezinian(x) * berezinian(y)

    def test_berezinian_needs_even_matrix(self):
        """Test that odd supermatrices have no Berezinian."""
        with pytest.raises(ParityError, match="even supermatrix"):
            berezinian(SuperMatrix.unit(ODD_11, 0, 1))

    def test_berezinian_needs_invertible_d(self):
        """Test that a zero D block is rejected."""
        with pytest.raises(NotInvertibleError, match="D block"):
            berezinian(SuperMatrix(ODD_11, [[1, 0], [0, 0]]))

    def test_parity_swap_blocks(self, mixed_table):
        """Test Z^Pi moves D to the top left and swaps the format."""
        a = mixed_table.gen("a")
        z = SuperMatrix.from_blocks([[2, 0], [0, 1]], [[a], [0]], [[0, a]], [[5]])

        swapped = parity_swap(z)

        assert swapped.fmt == (1, 2)
        assert swapped.rows[0] == (5, 0, a)
        assert swapped.rows[1] == (a, 2, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([(1, 1), (2, 1)]), st.data())
    def test_parity_swap_inverts_berezinian(self, fmt, data):
        """Test Ber(Z^Pi) Ber(Z) == 1 for invertible even Z."""
        m, n = fmt
        z = SuperMatrix.from_blocks(
            data.draw(invertible_even_block(m)),
            data.draw(odd_block(m, n)),
            data.draw(odd_block(n, m)),
            data.draw(invertible_even_block(n)),
            parity=0,
            table=GRASSMANN,
        )

        assert berezinian(parity_swap(z)) * berezinian(z) == 1


class TestBilinearForms:
    """Tests for forms and their preserving matrices."""

    def test_degenerate_form_rejected(self):
        """Test that a singular Gram matrix raises."""
        with pytest.raises(NotInvertibleError, match="degenerate"):
            BilinearForm(SuperMatrix((2, 0), [[1, 0], [0, 0]]), 0)

    def test_symplectic_form(self):
        """Test that sp(2) contains diag(1, -1) but not the identity."""
        form = BilinearForm(antidiagonal_j(1, (2, 0), 0), 0)
        assert preserves_form(form, SuperMatrix((2, 0), [[1, 0], [0, -1]]))
        assert not preserves_form(form, SuperMatrix.identity((2, 0)))
