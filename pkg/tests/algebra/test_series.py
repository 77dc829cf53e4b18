"""Unit tests for truncated power series"""

import pytest

from algebra.polys import RING, b, const, q, t, w
from algebra.linear import RatFrac
from algebra.series import Series, series_mul
from core.errors import TruncationError, UncleanDivisionError


def _ones(order):
    return Series("t", tuple(RING.one for _ in range(order + 1)))


class TestSeries:
    """Tests for Series arithmetic and truncation"""

    def test_empty_series_rejected(self):
        """A series needs its constant coefficient"""
        with pytest.raises(TruncationError):
            Series("t", ())

    def test_product_truncates_to_smaller_order(self):
        """1/(1-t) squared has coefficients n + 1"""
        square = _ones(5) * _ones(3)
        assert square.order == 3
        assert list(square.coeffs) == [const(n + 1) for n in range(4)]

    def test_variable_mismatch(self):
        """Series in different size variables do not mix"""
        with pytest.raises(TruncationError):
            series_mul(_ones(2), Series("w", (RING.one,)))
        with pytest.raises(TruncationError):
            _ones(2) + Series("w", (RING.one, RING.zero))

    def test_constant_polynomials_are_scalars(self):
        """Polynomials free of the size variable multiply coefficientwise"""
        scaled = _ones(2) * (q - 1)
        assert scaled.order == 2
        assert all(c == q - 1 for c in scaled.coeffs)

    def test_polynomial_in_size_variable_is_promoted(self):
        """t * (1 + t + t^2) shifts the coefficients"""
        shifted = _ones(2) * t
        assert list(shifted.coeffs) == [RING.zero, RING.one, RING.one]

    def test_derivative_drops_order(self):
        """The derivative is known one order less"""
        s = Series("t", (RING.one, q, b, w))
        d = s.derivative()
        assert d.order == 2
        assert list(d.coeffs) == [q, 2 * b, 3 * w]
        with pytest.raises(TruncationError):
            Series("t", (RING.one,)).derivative()

    def test_truncate_cannot_extend(self):
        """Truncation never invents coefficients"""
        assert _ones(4).truncate(2).order == 2
        with pytest.raises(TruncationError):
            _ones(2).truncate(3)
        with pytest.raises(TruncationError):
            _ones(2)[3]

    def test_shift_and_unshift(self):
        """Division by t^k requires k vanishing coefficients"""
        s = _ones(2).shift(2)
        assert s.valuation() == 2
        assert s.unshift(2).coeffs == _ones(2).coeffs
        with pytest.raises(UncleanDivisionError):
            _ones(2).unshift(1)

    def test_powers(self):
        """Integer powers by repeated squaring"""
        cube = _ones(3) ** 3
        assert list(cube.coeffs) == [const(1), const(3), const(6), const(10)]
        assert (_ones(3) ** 0).coeffs[0] == RING.one
        with pytest.raises(ValueError):
            _ones(3) ** -1

    def test_exact_divide(self):
        """Every coefficient divided by the same polynomial"""
        s = Series("t", (q * (q - 1), q ** 2))
        assert list(s.exact_divide(q).coeffs) == [q - 1, q]
        with pytest.raises(UncleanDivisionError):
            s.exact_divide(q - 1)

    def test_rescale(self):
        """S(c t) multiplies coefficient n by c^n"""
        s = _ones(3).rescale(b)
        assert list(s.coeffs) == [RING.one, b, b ** 2, b ** 3]

    def test_zero_and_first_nonzero(self):
        """Zero detection and the first nonzero coefficient"""
        z = Series.zero("t", 3)
        assert z.is_zero()
        assert z.first_nonzero() is None
        assert (z + Series("t", (RING.zero, RING.zero, q))).first_nonzero() == (2, q)

    def test_to_poly(self):
        """Back to a polynomial in the size variable"""
        s = Series.from_poly(1 + 2 * t + q * t ** 3, "t", 3)
        assert s.to_poly() == 1 + 2 * t + q * t ** 3

    def test_rational_coefficients(self):
        """Series over rational functions print and mix with polynomials"""
        s = Series("t", (RatFrac(q, b), RatFrac(RING.one, b)))
        assert repr(s) == "Series(((q)/(b))*t^0 + ((1)/(b))*t^1 + O(t^2))"
        assert s.format() == ["(q)/(b)", "(1)/(b)"]
        left = (4 * (b + 2)) * s
        right = s * (4 * (b + 2))
        assert left == right
        assert right[0] == RatFrac(4 * q * (b + 2), b)
        shifted = s - b
        assert shifted[0] == RatFrac(q - b ** 2, b)
        assert shifted[1] == RatFrac(RING.one, b)
