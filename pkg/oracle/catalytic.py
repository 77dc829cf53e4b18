"""
Iteration of functional equations with two catalytic variables

The coefficient of size^n is computed from the lower ones. Divided
differences such as (F(x, y) - F(1, y)) / (x - 1) are exact polynomial
divisions; a remainder means the iteration is wrong and is fatal.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from algebra.polys import MPoly, RING, b, coeffs_in, degree_in, evaluate, exact_quotient, q, w, x, y
from algebra.series import Series
from core.errors import PottsError
from observability.logging import get_logger
from observability.metrics import track_computation
from observability.tracing import trace_span

logger = get_logger(__name__)

Point = Mapping[str, object]


@dataclass(frozen=True)
class BiSeries:
    """Power series in a size variable with polynomial coefficients in x and y.

    Attributes:
        var: Size variable
        coeffs: Coefficient of var^n, a polynomial in x, y and the parameters
        bindings: Parameter values fixed during the iteration, if any
    """
    var: str
    coeffs: Tuple[MPoly, ...]
    bindings: Optional[Dict[str, object]] = None

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def at(self, x_value=None, y_value=None) -> Series:
        """Series obtained by fixing x and/or y."""
        point = {}
        if x_value is not None:
            point["x"] = x_value
        if y_value is not None:
            point["y"] = y_value
        return Series(self.var, tuple(evaluate(c, point) for c in self.coeffs))

    def degrees(self, n: int) -> Tuple[int, int]:
        """Degrees in x and in y of the coefficient of var^n."""
        c = self.coeffs[n]
        return degree_in(c, "x"), degree_in(c, "y")


def _divided_x(p: MPoly, where: str) -> MPoly:
    """(p(x, y) - p(1, y)) / (x - 1)."""
    return exact_quotient(p - evaluate(p, {"x": 1}), x - 1, where)


def _divided_y(p: MPoly, where: str) -> MPoly:
    """(p(x, y) - p(x, 1)) / (y - 1)."""
    return exact_quotient(p - evaluate(p, {"y": 1}), y - 1, where)


def _fix(p: MPoly, point: Optional[Point]) -> MPoly:
    return evaluate(p, point) if point else p


def _check_bounds(n: int, c: MPoly, x_bound: int, y_bound: int, where: str) -> None:
    dx, dy = degree_in(c, "x"), degree_in(c, "y")
    if dx > x_bound or dy > y_bound:
        raise PottsError(f"{where}: coefficient {n} has degrees ({dx}, {dy}) beyond ({x_bound}, {y_bound})")


@track_computation("two_catalytic")
def iterate_two_catalytic(order: int, point: Optional[Point] = None) -> BiSeries:
    """The series Mbar(x, y) of q-coloured planar maps, to ``order`` in t.

    M(y) = w Mbar(1, y) is the Potts generating function of planar maps by
    edges, vertices, monochromatic edges and root face degree.

    Args:
        order: Truncation order in t
        point: Optional values for q, b, w fixed during the iteration

    Raises:
        UncleanDivisionError: When a divided difference leaves a remainder
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    nu = b + 1
    first = _fix(x * y * w * ((nu - 1) * (y - 1) + q * y), point)
    second = _fix(x * y * (x * nu - 1), point)
    third = _fix(x * y * w * (nu - 1), point)
    fourth = x * y

    coeffs: List[MPoly] = [RING.one]
    at_x1: List[MPoly] = [RING.one]
    at_y1: List[MPoly] = [RING.one]
    with trace_span("iterate_two_catalytic", {"order": order}):
        for n in range(1, order + 1):
            prev = coeffs[n - 1]
            with_x1 = RING.zero
            with_y1 = RING.zero
            for a in range(n):
                with_x1 += coeffs[a] * at_x1[n - 1 - a]
                with_y1 += coeffs[a] * at_y1[n - 1 - a]
            c = (first * with_x1
                 + second * with_y1
                 + third * _divided_x(x * prev, f"x-divided difference at t^{n}")
                 + fourth * _divided_y(y * prev, f"y-divided difference at t^{n}"))
            _check_bounds(n, c, 2 * n + 2, 2 * n + 2, "two-catalytic iteration")
            coeffs.append(c)
            at_x1.append(evaluate(c, {"x": 1}))
            at_y1.append(evaluate(c, {"y": 1}))
            logger.debug("Iterated two-catalytic equation", event_type="oracle_order",
                         oracle="two_catalytic", order=n, terms=len(c))
    return BiSeries("t", tuple(coeffs), dict(point) if point else None)


def potts_series(order: int, point: Optional[Point] = None) -> Series:
    """M(y) = w Mbar(1, y), with coefficients polynomial in y."""
    Mbar = iterate_two_catalytic(order, point)
    factor = _fix(w, point)
    return Mbar.at(x_value=1).map(lambda c: c * factor)


def oracle_maps_series(order: int, point: Optional[Point] = None) -> Series:
    """M(1), the Potts generating function of planar maps by edges."""
    return potts_series(order, point).map(lambda c: evaluate(c, {"y": 1}))


def known_potts_expansion() -> List[MPoly]:
    """Coefficients of t^0, t^1, t^2 of M(y)."""
    nu = b + 1
    c = q - 1 + nu
    return [
        w,
        w ** 2 * y ** 2 * c + w * y * nu,
        (2 * w ** 3 * y ** 4 * c ** 2 + w ** 2 * y ** 2 * (q - 1 + nu ** 2)
         + w ** 2 * nu * (y + 3 * y ** 3) * c + w * nu ** 2 * (y + y ** 2)),
    ]


def _y_shift(p: MPoly) -> MPoly:
    """(p(x, y) - p(x, 0)) / y, exactly."""
    return exact_quotient(p - evaluate(p, {"y": 0}), y, "y-shift")


def _solve_y_shift(rhs: MPoly) -> MPoly:
    """The unique G with G = rhs + x (G - G(x, 0)) / y.

    Writing G = sum_k g_k y^k, the equation reads g_k = r_k + x g_{k+1}.
    """
    r = coeffs_in(rhs, "y")
    g = [RING.zero] * len(r)
    carry = RING.zero
    for k in range(len(r) - 1, -1, -1):
        carry = r[k] + x * carry
        g[k] = carry
    return sum((gk * y ** k for k, gk in enumerate(g)), RING.zero)


@track_computation("tutte_colourings")
def iterate_tutte_G(order: int) -> BiSeries:
    """Tutte's series G(x, y) of properly q-coloured near-triangulations.

    H = G(1, 0) counts properly coloured rooted triangulations by vertices.

    Raises:
        UncleanDivisionError: When a divided difference leaves a remainder
    """
    if order < 2:
        raise ValueError("G starts at w^2")
    coeffs: List[MPoly] = [RING.zero, RING.zero]
    at_x1: List[MPoly] = [RING.zero, RING.zero]
    with trace_span("iterate_tutte_G", {"order": order}):
        for n in range(2, order + 1):
            rhs = x * q * (q - 1) if n == 2 else RING.zero
            product = RING.zero
            for a in range(2, n):
                product += at_x1[a] * coeffs[n + 1 - a]
            if product:
                rhs += x * y * exact_quotient(product, q, f"division by q at w^{n}")
            prev = coeffs[n - 1]
            if prev:
                rhs -= x ** 2 * y * _divided_x(prev, f"x-divided difference at w^{n}")
            c = _solve_y_shift(rhs)
            if c - rhs != x * _y_shift(c):
                raise PottsError(f"Tutte iteration does not satisfy its equation at w^{n}")
            _check_bounds(n, c, 2 * n - 3, n - 2, "Tutte iteration")
            total = max((sum(m[4:6]) for m in c.keys()), default=0)
            if total > 2 * n - 3:
                raise PottsError(f"Tutte iteration: total degree {total} at w^{n}")
            coeffs.append(c)
            at_x1.append(evaluate(c, {"x": 1}))
    return BiSeries("w", tuple(coeffs))


def tutte_h_series(order: int) -> Series:
    """H = G(1, 0)."""
    return iterate_tutte_G(order).at(x_value=1, y_value=0)
