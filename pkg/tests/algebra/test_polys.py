"""Unit tests for parameter polynomials"""

import pytest

from algebra.polys import (
    RING,
    b,
    coeff_in,
    const,
    degree_in,
    evaluate,
    exact_quotient,
    format_poly,
    gen,
    ground_value,
    integer_content,
    mpoly_derivative,
    mpoly_mul,
    nu,
    parse_poly,
    q,
    rational,
    substitute_fraction,
    symbols_used,
    t,
    w,
    x,
)
from core.errors import UncleanDivisionError


class TestPolynomials:
    """Tests for the shared polynomial ring"""

    def test_nu_is_not_a_generator(self):
        """nu is carried as b + 1"""
        assert nu == b + 1
        assert "nu" not in [str(s) for s in RING.symbols]

    def test_product(self):
        """Products are exact and expand nu"""
        assert mpoly_mul(q + b, RING.one) == q + b
        assert mpoly_mul(x - 1, x - 1) == x ** 2 - 2 * x + 1
        assert mpoly_mul(q * nu + b ** 2, x ** 2) == (q * b + q + b ** 2) * x ** 2
        assert mpoly_mul(x + 1, x - 1) - (x ** 2 - 1) == RING.zero

    def test_partial_derivative(self):
        """Derivatives in x of a D-shaped polynomial and of a constant"""
        D = (q * nu + b ** 2) * x ** 2 - q * (nu + 1) * x + q * w * t
        assert mpoly_derivative(D, "x") == 2 * (q * nu + b ** 2) * x - q * (nu + 1)
        assert mpoly_derivative(x ** 2 - 2 * x, "x") == 2 * x - 2
        assert mpoly_derivative(const(7), "q") == RING.zero

    def test_format_is_canonical(self):
        """Terms come in descending lexicographic order"""
        assert format_poly(q - 1 + nu) == "q + b"
        assert format_poly(q * (q - 1)) == "q^2 - q"
        assert format_poly(RING.zero) == "0"
        assert format_poly(const(3, 4) * w) == "3/4*w"

    def test_parse_accepts_caret_and_aliases(self):
        """Powers may use ^ and nu stands for b + 1"""
        assert parse_poly("(q*nu + b^2)*x^2") == (q * nu + b ** 2) * x ** 2
        assert parse_poly("q**2 - 4") == q ** 2 - 4

    def test_format_parse_inverse(self):
        """Parsing the canonical text gives the polynomial back"""
        p = 256 * q ** 3 * b ** 7 * w * (q - 4) - const(1, 2) * x
        assert parse_poly(format_poly(p)) == p

    def test_exact_quotient(self):
        """Exact division succeeds or raises"""
        assert exact_quotient(q ** 2 - q, q) == q - 1
        with pytest.raises(UncleanDivisionError):
            exact_quotient(q + 1, q, "test quotient")
        with pytest.raises(UncleanDivisionError):
            exact_quotient(q, RING.zero)

    def test_evaluate_is_simultaneous(self):
        """Swapping q and b is applied at once"""
        assert evaluate(q - b, {"q": b, "b": q}) == b - q
        assert evaluate(q * (q - 1), {"q": 3}) == const(6)

    def test_substitute_fraction(self):
        """b -> q/b over a common denominator"""
        num, den = substitute_fraction(b ** 2 + 1, {"b": (q, b)})
        assert num == q ** 2 + b ** 2
        assert den == b ** 2

    def test_coefficients_by_variable(self):
        """Coefficients and degrees in one symbol"""
        p = (q + 1) * x ** 2 + 3 * x
        assert degree_in(p, "x") == 2
        assert coeff_in(p, "x", 2) == q + 1
        assert coeff_in(p, "x", 0) == RING.zero

    def test_constants(self):
        """Rational constants and their values"""
        assert rational("3/4") == rational(3, 4)
        assert ground_value(const("1/2")) == rational(1, 2)
        assert integer_content(const(1, 6) * q + const(1, 4)) == 12
        with pytest.raises(ValueError):
            ground_value(q)

    def test_symbols_used(self):
        """Only the symbols present in some monomial"""
        assert symbols_used(q * w + 1) == ("q", "w")

    def test_unknown_generator(self):
        """Asking for a missing symbol raises KeyError"""
        assert gen("t") ** 2 == RING.gens[3] ** 2
        with pytest.raises(KeyError):
            gen("lam")
