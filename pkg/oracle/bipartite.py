"""
Bipartite maps: the invariant equation for two colours

At q = 2, nu = 0, w = 1 the Potts series M(y) counts bipartite maps. With
I = 2 t y M(y) + (y - 1)/y + t y/(y - 1), D(x) = x^2 - 2x + 2t + 2 and the
fourth Chebyshev polynomial, the invariant equation

    D(I)^2 - 8 D(I) / y^2 + 8 / y^4 = sum_{r=0..4} C_r I^r

determines C_0, ..., C_4 from the expansion around y = 1. Substituting
them back gives the root-edge deletion equation for bipartite maps, which
is iterated independently here.
"""

from typing import Dict, List

from algebra.polys import MPoly, RING, coeff_in, coeffs_in, evaluate, exact_quotient, from_coeffs, t, y
from algebra.series import Series
from core.errors import UncleanDivisionError
from core.reports import ResidualReport
from observability.logging import get_logger
from observability.metrics import track_computation
from oracle.catalytic import potts_series

logger = get_logger(__name__)

BIPARTITE_POINT = {"q": 2, "b": -1, "w": 1}

# Laurent depth of the expansion around y = 1
DEPTH = 4


def bipartite_series(order: int) -> Series:
    """M(y) at q = 2, nu = 0, w = 1, from the two-catalytic iteration."""
    return potts_series(order, BIPARTITE_POINT)


@track_computation("bipartite_root_edge")
def iterate_root_edge(order: int) -> Series:
    """M = 1 + t y^2 M^2 + t y^2 (M - M(1)) / (y^2 - 1), to ``order`` in t."""
    coeffs: List[MPoly] = [RING.one]
    for n in range(1, order + 1):
        square = RING.zero
        for a in range(n):
            square += coeffs[a] * coeffs[n - 1 - a]
        prev = coeffs[n - 1]
        divided = exact_quotient(prev - evaluate(prev, {"y": 1}), y ** 2 - 1,
                                 f"bipartite root-edge quotient at t^{n}")
        coeffs.append(y ** 2 * square + y ** 2 * divided)
    return Series("t", tuple(coeffs))


def expected_invariants(M1: Series) -> Dict[int, Series]:
    """C_4 = 1, C_3 = -4, C_2 = 4t, C_1 = 8(1 + t), C_0 = -4 - 40t - 4t^2 + 32 t^2 M(1)."""
    T = Series.from_poly(t, "t", M1.order)
    one = T ** 0
    return {
        4: one,
        3: -4 * one,
        2: 4 * T,
        1: 8 * (1 + T),
        0: -4 - 40 * T - 4 * T * T + 32 * T * T * M1,
    }


def _truncate_u(p: MPoly) -> MPoly:
    """Drops the powers of u beyond DEPTH; u is carried by the y generator."""
    return from_coeffs(coeffs_in(p, "y")[: DEPTH + 1], "y")


def _mul(a: Series, b: Series) -> Series:
    return (a * b).map(_truncate_u)


def _inverse_one_plus_u(power: int) -> MPoly:
    """(1 + u)^(-power) up to u^DEPTH."""
    inverse = sum(((-y) ** k for k in range(DEPTH + 1)), RING.zero)
    result = RING.one
    for _ in range(power):
        result = _truncate_u(result * inverse)
    return result


def _coefficient(series: Series, k: int) -> Series:
    return series.map(lambda c: coeff_in(c, "y", k))


def solve_invariants(M: Series) -> Dict[int, Series]:
    """C_4, ..., C_0 from the coefficients of (y - 1)^-4, ..., (y - 1)^0.

    Writing y = 1 + u and A = u I, the equation multiplied by u^4 reads
    u^4 LHS = sum_r C_r A^r u^(4 - r); since A = t + O(u) the system is
    triangular with diagonal t^r.

    Raises:
        UncleanDivisionError: When a right-hand side is not divisible by t^r
    """
    order = M.order
    T = Series.from_poly(t, "t", order)
    u = y
    M_shifted = M.map(lambda c: _truncate_u(evaluate(c, {"y": y + 1})))
    A = (2 * T * M_shifted * (u * (1 + u)) + T * (1 + u)).map(_truncate_u) \
        + _truncate_u(u ** 2 * _inverse_one_plus_u(1))
    c = 2 * T + 2
    K = (_mul(A, A) - A * (2 * u) + c * u ** 2).map(_truncate_u)
    lhs = (_mul(K, K) - K * _truncate_u(8 * u ** 2 * _inverse_one_plus_u(2))
           + _truncate_u(8 * u ** 4 * _inverse_one_plus_u(4))).map(_truncate_u)

    powers = [T ** 0]
    for _ in range(DEPTH):
        powers.append(_mul(powers[-1], A))

    solved: Dict[int, Series] = {}
    for r in range(DEPTH, -1, -1):
        rhs = _coefficient(lhs, DEPTH - r).unshift(r)
        for s in range(r + 1, DEPTH + 1):
            known = _coefficient(powers[s], s - r).unshift(r)
            rhs = rhs - solved[s] * known
        solved[r] = rhs
        logger.debug("Solved invariant series", event_type="bipartite_invariant",
                     r=r, order=rhs.order)
    return solved


def invariant_identity_residual(M: Series, invariants: Dict[int, Series]) -> Series:
    """The invariant equation multiplied by (y (y - 1))^4, as a polynomial identity in y."""
    order = min([M.order] + [s.order for s in invariants.values()])
    M = M.truncate(order)
    T = Series.from_poly(t, "t", order)
    v = y * (y - 1)
    J = 2 * T * M * (y ** 2 * (y - 1)) + (y - 1) ** 2 + T * y ** 2
    c = 2 * T + 2
    K = J * J - J * (2 * v) + c * v ** 2
    total = K * K - K * (8 * (y - 1) ** 2) + 8 * (y - 1) ** 4
    for r, C in invariants.items():
        total = total - C.truncate(order) * J ** r * v ** (DEPTH - r)
    return total


def root_edge_residual(M: Series) -> Series:
    """y^2 t (y^2 - 1) M^2 + (1 - y^2 + y^2 t) M - t y^2 M(1) + y^2 - 1."""
    T = Series.from_poly(t, "t", M.order)
    M1 = M.map(lambda p: evaluate(p, {"y": 1}))
    return (T * M * M * (y ** 2 * (y ** 2 - 1)) + M * (1 - y ** 2) + T * M * y ** 2
            - T * M1 * y ** 2 + (y ** 2 - 1))


@track_computation("bipartite_check")
def bipartite_invariant_check(order: int) -> List[ResidualReport]:
    """Solves the two-colour invariant equation and checks every consequence through ``order``."""
    if order < 1:
        raise ValueError("order must be positive")
    M = bipartite_series(order + DEPTH)
    M1 = M.map(lambda p: evaluate(p, {"y": 1}))
    expected = expected_invariants(M1)
    reports = []
    try:
        solved = solve_invariants(M)
    except UncleanDivisionError as e:
        reports.append(ResidualReport.boolean("bipartite invariants", False, str(e)))
    else:
        for r in range(DEPTH, -1, -1):
            top = min(order, solved[r].order)
            reports.append(ResidualReport.of(
                f"bipartite C_{r}", solved[r].truncate(top) - expected[r].truncate(top)))
    reports.append(ResidualReport.of(
        "bipartite invariant identity", invariant_identity_residual(M.truncate(order), expected)))
    reports.append(ResidualReport.of("bipartite root-edge equation", root_edge_residual(M)))
    reports.append(ResidualReport.of(
        "bipartite root-edge iteration", M - iterate_root_edge(M.order)))
    return reports
