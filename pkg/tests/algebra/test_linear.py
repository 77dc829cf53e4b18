"""Unit tests for exact linear algebra and rational functions"""

import pytest

from algebra.linear import (
    RatFrac,
    cofactor_determinant,
    content_form,
    format_value,
    parse_ratfrac,
    rank_profile,
    solve_linear_exact,
)
from algebra.polys import RING, b, const, q, w
from core.errors import SingularSystemError


class TestRatFrac:
    """Tests for rational functions"""

    def test_denominator_is_monic(self):
        """The rational leading coefficient moves to the numerator"""
        r = RatFrac(q, 2 * b)
        assert r.den == b
        assert r.num == const(1, 2) * q

    def test_equality_across_representations(self):
        """Equal fractions compare equal without reduction"""
        assert RatFrac(q * b, b * b) == RatFrac(q, b)
        assert RatFrac(q * (q - 1), q) == q - 1
        assert RatFrac(RING.zero, q) == 0

    def test_arithmetic(self):
        """Sums, products and quotients"""
        half = RatFrac(RING.one, b)
        assert half + half == RatFrac(2 * RING.one, b)
        assert (half * b).to_poly() == RING.one
        assert (1 / half).to_poly() == b
        assert half ** -2 == RatFrac(b ** 2)

    def test_zero_denominator(self):
        """No fraction over zero"""
        with pytest.raises(ZeroDivisionError):
            RatFrac(q, RING.zero)
        with pytest.raises(ZeroDivisionError):
            RatFrac(q) / RatFrac(RING.zero)

    def test_polynomial_detection(self):
        """A fraction is polynomial when its denominator divides"""
        assert RatFrac(q ** 2 - 1, q - 1).is_polynomial()
        assert not RatFrac(q, b).is_polynomial()


class TestLinearSolve:
    """Tests for fraction-free elimination"""

    def test_two_by_two(self):
        """[[q, 1], [1, b]] v = [1, 0]"""
        values, det = solve_linear_exact([[q, RING.one], [RING.one, b]], [RING.one, RING.zero])
        assert det == q * b - 1
        assert values[0] == RatFrac(b, q * b - 1)
        assert values[1] == RatFrac(-RING.one, q * b - 1)

    def test_row_order_keeps_determinant(self):
        """Permuting pivot rows does not change the determinant"""
        matrix = [[q, RING.one], [RING.one, b]]
        _, det = solve_linear_exact(matrix, [RING.one, RING.zero])
        _, swapped = solve_linear_exact(matrix, [RING.one, RING.zero], row_order=[1, 0])
        assert det == swapped

    def test_singular(self):
        """A vanishing determinant raises"""
        with pytest.raises(SingularSystemError):
            solve_linear_exact([[q, w], [2 * q, 2 * w]], [RING.one, RING.one])

    def test_rejects_non_square(self):
        """Shape is checked up front"""
        with pytest.raises(ValueError):
            solve_linear_exact([[q, w]], [RING.one])

    def test_cofactor_matches_elimination(self):
        """Laplace expansion agrees with Bareiss"""
        matrix = [[q, RING.one, RING.zero], [b, w, RING.one], [RING.one, RING.zero, q]]
        _, det = solve_linear_exact(matrix, [RING.one, RING.zero, RING.zero])
        assert cofactor_determinant(matrix) == det

    def test_rank_profile(self):
        """Pivot rows and columns of a rank-deficient matrix"""
        rows, cols = rank_profile([[q, w], [2 * q, 2 * w], [RING.zero, b]])
        assert rows == (0, 2)
        assert cols == (0, 1)


class TestFormatValue:
    """Tests for the canonical text of values"""

    def test_polynomials(self):
        """Polynomials and polynomial fractions print as polynomials"""
        assert format_value(q - 4) == "q - 4"
        assert format_value(RatFrac(q - 4)) == "q - 4"

    def test_fractions(self):
        """Proper fractions print numerator over denominator"""
        assert format_value(RatFrac(RING.one, b)) == "(1)/(b)"

    def test_fractions_have_integer_content_form(self):
        """Printed fractions carry integer coefficients without a common factor"""
        assert format_value(RatFrac(q, 2 * b)) == "(q)/(2*b)"
        assert format_value(RatFrac(4 * q, 2 * b)) == "(2*q)/(b)"
        assert format_value(RatFrac(const(1, 2) * q + const(1, 3), b)) == "(3*q + 2)/(6*b)"
        num, den = content_form(RatFrac(6 * q, 4 * b + 2))
        assert (num, den) == (3 * q, 2 * b + 1)
        assert parse_ratfrac(format_value(RatFrac(q, 2 * b))) == RatFrac(q, 2 * b)

    def test_parse_inverse(self):
        """parse_ratfrac reads what format_value writes"""
        value = RatFrac(q - 4, (b + 1) ** 2)
        assert parse_ratfrac(format_value(value)) == value
        assert parse_ratfrac("1/b") == RatFrac(RING.one, b)
        assert parse_ratfrac("nu") == RatFrac(b + 1)
