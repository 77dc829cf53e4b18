"""
Uncoloured planar maps: the one-catalytic toy equation

M(y) = 1 + t y^2 M(y)^2 + t y (y M(y) - M(1)) / (y - 1) counts planar maps
by edges and root face degree. Its quadratic-method consequences (a double
root Y of a quartic, a quadratic equation for M(1) and a closed form) are
checked against the iterated series.
"""

from typing import List

from sympy import Rational, binomial
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from algebra.polys import MPoly, RING, coeffs_in, const, evaluate, exact_quotient, t, y
from algebra.series import Series
from core.errors import UncleanDivisionError
from core.reports import ResidualReport
from observability.metrics import track_computation

# Discriminant ring; the discriminant is taken in the first generator y
DISC_RING, _dy, _dt, _dm = ring("y,t,m", QQ)


@track_computation("uncoloured_maps")
def iterate_uncoloured(order: int) -> Series:
    """M(t; y) to ``order`` in t, with coefficients polynomial in y."""
    coeffs: List[MPoly] = [RING.one]
    for n in range(1, order + 1):
        square = RING.zero
        for a in range(n):
            square += coeffs[a] * coeffs[n - 1 - a]
        prev = coeffs[n - 1]
        divided = exact_quotient(y * prev - evaluate(prev, {"y": 1}), y - 1,
                                 f"toy divided difference at t^{n}")
        coeffs.append(y ** 2 * square + y * divided)
    return Series("t", tuple(coeffs))


def toy_m1(M: Series) -> Series:
    return M.map(lambda c: evaluate(c, {"y": 1}))


def quadratic_residual(M1: Series) -> Series:
    """27 t^2 M1^2 + (1 - 18 t) M1 + 16 t - 1."""
    T = Series.from_poly(t, "t", M1.order)
    return 27 * T * T * M1 * M1 + (1 - 18 * T) * M1 + 16 * T - 1


def closed_form_m1(order: int) -> Series:
    """Coefficients of ((1 - 12t)^(3/2) - 1 + 18t) / (54 t^2)."""
    coeffs = []
    for n in range(order + 1):
        value = binomial(Rational(3, 2), n + 2) * Rational(-12) ** (n + 2) / 54
        coeffs.append(RING.ground_new(QQ.convert(value)))
    return Series("t", tuple(coeffs))


def _compose(p: MPoly, Y: Series) -> Series:
    """p(Y) for a polynomial p in y, by Horner's rule."""
    cs = coeffs_in(p, "y")
    acc = Series.zero("t", Y.order)
    for c in reversed(cs):
        acc = acc * Y + c
    return acc


def _at_series(M: Series, Y: Series) -> Series:
    """M(t; Y(t))."""
    total = Series.zero("t", min(M.order, Y.order))
    T = Series.from_poly(t, "t", total.order)
    power = T ** 0
    for n in range(total.order + 1):
        total = total + power * _compose(M[n], Y)
        power = power * T
    return total


def double_root(M: Series) -> Series:
    """The series Y = 1 + t Y^2 + 2 t Y^2 (Y - 1) M(Y), by fixed-point iteration."""
    order = M.order
    T = Series.from_poly(t, "t", order)
    Y = Series.from_poly(RING.one, "t", order)
    for _ in range(order + 1):
        Y2 = Y * Y
        Y = 1 + T * Y2 + 2 * T * Y2 * (Y - 1) * _at_series(M, Y)
    return Y


def delta_poly(M1: Series) -> Series:
    """Delta(y) = (y - 1 - y^2 t)^2 - 4 t y^2 (y - 1)^2 + 4 t^2 y^3 (y - 1) M1."""
    T = Series.from_poly(t, "t", M1.order)
    base = -(T * y ** 2) + (y - 1)
    return base * base - T * (4 * y ** 2 * (y - 1) ** 2) + T * T * M1 * (4 * y ** 3 * (y - 1))


def discriminant_factor_report() -> ResidualReport:
    """The discriminant of Delta in y contains 27 t^2 m^2 + (1 - 18t) m + 16t - 1."""
    delta = (_dy - 1 - _dy ** 2 * _dt) ** 2 - 4 * _dt * _dy ** 2 * (_dy - 1) ** 2 \
        + 4 * _dt ** 2 * _dy ** 3 * (_dy - 1) * _dm
    disc = delta.discriminant()
    try:
        exact_quotient(disc, _quadratic(disc.ring), "toy discriminant")
    except UncleanDivisionError as e:
        return ResidualReport.boolean("toy discriminant", False, str(e))
    return ResidualReport.boolean("toy discriminant", True)


def _quadratic(target) -> MPoly:
    tt, mm = target.gens
    return 27 * tt ** 2 * mm ** 2 + (1 - 18 * tt) * mm + 16 * tt - 1


def _y_derivative(series: Series) -> Series:
    return series.map(lambda c: c.diff(y))


@track_computation("toy_suite")
def toy_suite(order: int) -> List[ResidualReport]:
    """Every check of the uncoloured toy model, to ``order`` in t."""
    M = iterate_uncoloured(order)
    M1 = toy_m1(M)
    expected = [RING.one, y + y ** 2, 2 * y + 2 * y ** 2 + 3 * y ** 3 + 2 * y ** 4]
    n = min(order, 2)
    reports = [
        ResidualReport.of("toy expansion", Series("t", tuple(M[k] - expected[k] for k in range(n + 1)))),
        ResidualReport.of("toy quadratic", quadratic_residual(M1)),
        ResidualReport.of("toy closed form", M1 - closed_form_m1(order)),
        discriminant_factor_report(),
    ]
    # the fixed-point iteration is quadratic in the order; a few terms suffice
    Y = double_root(M.truncate(min(order, 8)))
    expected_y = [1, 1, 4, 25]
    k = min(Y.order, 3)
    reports.append(ResidualReport.of(
        "toy double root", Series("t", tuple(Y[i] - const(expected_y[i]) for i in range(k + 1)))))
    delta = delta_poly(M1)
    reports.append(ResidualReport.of("toy Delta(Y)", _at_series(delta, Y)))
    reports.append(ResidualReport.of("toy Delta'(Y)", _at_series(_y_derivative(delta), Y)))
    return reports
