"""Exact arithmetic kernels: polynomials, truncated series, linear algebra"""

from algebra.polys import RING, SYMBOLS, MPoly, format_poly, parse_poly, mpoly_mul, mpoly_derivative
from algebra.series import Series, series_mul
from algebra.linear import RatFrac, cofactor_determinant, format_value, parse_ratfrac, solve_linear_exact

__all__ = [
    "RING",
    "SYMBOLS",
    "MPoly",
    "format_poly",
    "parse_poly",
    "mpoly_mul",
    "mpoly_derivative",
    "Series",
    "series_mul",
    "RatFrac",
    "solve_linear_exact",
    "cofactor_determinant",
    "format_value",
    "parse_ratfrac",
]
