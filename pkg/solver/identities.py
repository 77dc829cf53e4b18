"""
Main-series extraction and the identities a solved system must satisfy

The main series (the generating function of maps counted at one root vertex
degree, or of triangulations) is read off from a non-differential identity
between the coefficient series of P and Q. The remaining identities are
checked, not used, and so serve as cross-checks of the solver.
"""

from typing import List, Optional

from algebra.linear import RatFrac
from algebra.polys import (
    MPoly,
    RING,
    b,
    const,
    format_poly,
    ground_value,
    is_constant,
    nu,
    q,
    substitute_fraction,
    t,
    w,
)
from algebra.series import Series
from core.errors import PottsError, UncleanDivisionError
from core.reports import ResidualReport
from solver.models import Model
from solver.system import SolverState


def _size(state: SolverState, order: Optional[int] = None) -> Series:
    """The size variable itself as a series."""
    n = state.order_done if order is None else order
    v = t if state.spec.model is Model.MAPS else w
    return Series.from_poly(v, state.size_var, n)


def _maps_main_numerator(state: SolverState) -> Series:
    P3 = state.coefficient_series("P", 3)
    P2 = state.coefficient_series("P", 2)
    Q0 = state.coefficient_series("Q", 0)
    T = _size(state)
    lead = 1 + nu - w * (2 * b + q)
    return (4 * T * (1 + w * (3 * b + q))
            - P3 * P3 * const(1, 4)
            - 2 * T * lead * P3
            + P2
            - 2 * Q0)


def _triangulations_main_numerator(state: SolverState) -> Series:
    P1 = state.coefficient_series("P", 1)
    Q0 = state.coefficient_series("Q", 0)
    Q1 = state.coefficient_series("Q", 1)
    W = _size(state)
    return -(-4 * nu ** 2 * P1
             + 4 * nu * Q0
             + (Q1 - 1) * (Q1 + nu - 3)
             + 2 * nu * (q * nu - 24 * b - 6 * q) * W)


def extract_main(state: SolverState) -> Series:
    """Main series of a solved state.

    For planar maps this is t^2 M_1 (the series counting maps by edges with a
    marked root vertex of degree one, shifted by t^2); for triangulations it
    is T_1.

    Raises:
        UncleanDivisionError: When the defining identity does not divide
            exactly, which means the solved tables are wrong
    """
    if state.order_done < 1:
        raise PottsError("the main series needs at least one solved order")
    if state.spec.model is Model.MAPS:
        return _maps_main_numerator(state).exact_divide(
            12 * (b ** 2 + q * nu), "maps main series extraction")
    return _triangulations_main_numerator(state).exact_divide(
        20 * nu ** 2 * q, "triangulation main series extraction")


def main_series(state: SolverState) -> Series:
    return state.main if state.main is not None else extract_main(state)


def tutte_series(state: SolverState) -> Series:
    """T_2 = T_1 / nu for triangulations."""
    if state.spec.model is not Model.TRIANGULATIONS:
        raise PottsError("T_2 is only defined for triangulations")
    return main_series(state).exact_divide(nu, "T_2 from T_1")


def maps_series(state: SolverState) -> Series:
    """M(1) itself: the main series with its t^2 shift removed."""
    if state.spec.model is not Model.MAPS:
        raise PottsError("M(1) is only defined for planar maps")
    return main_series(state).unshift(2)


def derivative_identity_residual(state: SolverState) -> Series:
    """Residual of the identity tying the derivative of the main series to R_1.

    Its order is one less than the solved order.
    """
    main = main_series(state)
    R1 = state.coefficient_series("R", 1)
    if state.spec.model is Model.MAPS:
        P3 = state.coefficient_series("P", 3)
        lead = 1 + nu - w * (2 * b + q)
        return (2 * (b ** 2 + q * nu) * main.derivative()
                + P3 * lead * const(1, 2)
                - R1
                - (2 + 2 * b * w))
    return 2 * nu * q * main.derivative() - R1 + q * (b - 1) - 8 * b


def _maps_residuals(state: SolverState) -> List[ResidualReport]:
    P2 = state.coefficient_series("P", 2)
    P3 = state.coefficient_series("P", 3)
    Q0 = state.coefficient_series("Q", 0)
    Q1 = state.coefficient_series("Q", 1)
    R0 = state.coefficient_series("R", 0)
    R1 = state.coefficient_series("R", 1)
    T = _size(state)
    main = main_series(state)
    lead = 1 + nu - w * (2 * b + q)
    s = b * (w * q + b) * (q - 4)

    reports = [
        ResidualReport.of("P3Q1", P3 - 2 * Q1 - 4 * T * (1 + nu) + 4 * T * w * (2 * b + q)),
        ResidualReport.of(
            "Q0R-M",
            s * Q0 + q * (b + 2) * R0 + 2 * (T * s + q) * R1
            - (2 * (w * q - 2) * s * T + 2 * q * (w * q - 2)),
        ),
        ResidualReport.of(
            "Q1R-M",
            s * Q1 - 2 * (b ** 2 + q * b + q) * R0 - q * (b + 2) * R1
            - (2 * (2 * b * w + w * q - b - 2) * s * T
               - 2 * q * (b * q * w - 2 * b * w + w * q - b - 2)),
        ),
        ResidualReport.of(
            "M11",
            12 * (b ** 2 + q * nu) * main + P3 * P3 * const(1, 4) + 2 * T * lead * P3
            - P2 + 2 * Q0 - 4 * T * (1 + w * (3 * b + q)),
        ),
        ResidualReport.of("Mt1-expr", derivative_identity_residual(state)),
    ]
    return reports


def _triangulation_residuals(state: SolverState) -> List[ResidualReport]:
    P1 = state.coefficient_series("P", 1)
    P2 = state.coefficient_series("P", 2)
    Q0 = state.coefficient_series("Q", 0)
    Q1 = state.coefficient_series("Q", 1)
    R0 = state.coefficient_series("R", 0)
    R1 = state.coefficient_series("R", 1)
    W = _size(state)
    main = main_series(state)
    T2 = tutte_series(state)
    g = nu * q * (q - 4) * W + b

    reports = [
        ResidualReport.of("P2Q1", nu * P2 - Q1 - nu * const(1, 4) + 1),
        ResidualReport.of(
            "Q0R-T",
            nu * q * (q - 4) * Q0 - (4 * b + q) * R0 + 2 * g * R1 - 2 * b * (q - 4) * g,
        ),
        ResidualReport.of(
            "Q1R-T",
            nu * b * q * (q - 4) * Q1 - 2 * nu ** 2 * q * R0 + b * (4 * b + q) * R1
            - 2 * (q - 4) * b ** 2 * (4 * b + q),
        ),
        ResidualReport.of(
            "Q1-PQt",
            20 * nu ** 2 * q * main - 4 * nu ** 2 * P1 + 4 * nu * Q0
            + (Q1 - 1) * (Q1 + nu - 3) + 2 * nu * (q * nu - 24 * b - 6 * q) * W,
        ),
        ResidualReport.of("Tp1-T", derivative_identity_residual(state)),
        ResidualReport.of(
            "T2prime",
            2 * (4 * nu ** 3 * q ** 2 * W + b * (4 * b ** 2 - q)) * T2.derivative()
            + 2 * q * nu * Q0 - b * (q + 4 * b) * P2
            - (4 * b + q) * (4 * q * nu * W - b * const(1, 4)),
        ),
    ]
    return reports


def nondifferential_residuals(state: SolverState) -> List[ResidualReport]:
    """Checks the identities between P, Q, R and the main series."""
    if state.spec.model is Model.MAPS:
        return _maps_residuals(state)
    return _triangulation_residuals(state)


def determinant_ratio(state: SolverState, i: int):
    """Ratio of the determinant of S_i to its closed form.

    Returns:
        The rational constant ratio, or None for the first order

    Raises:
        PottsError: When the ratio is not a nonzero constant
    """
    if i < 1 or i > len(state.determinants):
        raise IndexError(f"no determinant recorded for order {i}")
    det = state.determinants[i - 1]
    if det is None:
        return None
    try:
        ratio = (det / RatFrac(state.spec.determinant_formula(i))).to_poly(f"determinant ratio {i}")
    except UncleanDivisionError:
        raise PottsError(f"determinant of S_{i} is not a multiple of its formula: {det!r}")
    if not ratio or not is_constant(ratio):
        raise PottsError(f"determinant of S_{i} differs from its formula: ratio {format_poly(ratio)}")
    return ground_value(ratio)


def determinant_reports(state: SolverState) -> List[ResidualReport]:
    reports = []
    for i in range(2, len(state.determinants) + 1):
        try:
            ratio = determinant_ratio(state, i)
        except PottsError as e:
            reports.append(ResidualReport.boolean(f"det S_{i}", False, str(e)))
            continue
        reports.append(ResidualReport.boolean(f"det S_{i}", True, f"ratio {ratio}"))
    return reports


def first_layer_report(state: SolverState) -> ResidualReport:
    """Compares C_1 with the known first-order solution."""
    expected = state.spec.known_first_layer
    found = state.layer_values(1)
    names = state.spec.unknown_names()
    wrong = [f"{names[k]}: {format_poly(found[k])} != {format_poly(expected[k])}"
             for k in range(len(expected)) if found[k] != expected[k]]
    return ResidualReport.boolean("C_1", not wrong, "; ".join(wrong) or None)


def leading_coefficient_report(state: SolverState) -> ResidualReport:
    """Q_2 must equal its constant initial value at every order."""
    Q2 = state.coefficient_series("Q", 2)
    expected = Series.from_poly(state.spec.q_leading, state.size_var, Q2.order)
    return ResidualReport.of("Q_2 constant", Q2 - expected)


def known_expansion_reports(state: SolverState) -> List[ResidualReport]:
    """Compares the first coefficients of P_0 and of the main series with
    their known expansions."""
    P0 = state.coefficient_series("P", 0)
    main = main_series(state)
    reports = []
    if state.spec.model is Model.MAPS:
        expected_p0 = [
            RING.zero,
            const(-4),
            q ** 2 * w ** 2 + 16 * b * w - 4 * q * w + 8 * b,
            2 * (-b * q ** 2 * w ** 3 + q ** 3 * w ** 3 + 2 * b * q * w ** 2 - 4 * q ** 2 * w ** 2
                 + 16 * b ** 2 * w + 4 * b * q * w + 2 * b ** 2 - 6 * q * w + 4 * b),
        ]
        c = q - 1 + nu
        expected_main = [
            RING.zero,
            RING.zero,
            w,
            w ** 2 * c + w * nu,
            2 * w ** 3 * c ** 2 + w ** 2 * (q - 1 + nu ** 2) + 4 * w ** 2 * nu * c + 2 * w * nu ** 2,
        ]
    else:
        expected_p0 = [
            RING.zero,
            -b,
            b * (8 * q + q * (q - 12) * b * const(1, 4) - (q + 6) * b ** 2 - 3 * b ** 3),
        ]
        expected_main = _known_t1()
    reports.append(_prefix_report("P_0 expansion", P0, expected_p0))
    reports.append(_prefix_report(f"{state.spec.main_name} expansion", main, expected_main))
    return reports


def _known_t1() -> List[MPoly]:
    c = q - 1 + nu
    c2 = q - 1 + nu ** 2
    return [
        RING.zero,
        RING.zero,
        nu * c,
        nu * ((q - 1) * (q - 2 + 2 * nu) + nu ** 2 * c2 + 2 * nu * c * c2 + nu ** 2 * c ** 2),
    ]


def _prefix_report(name: str, series: Series, expected: List[MPoly]) -> ResidualReport:
    n = min(series.order, len(expected) - 1)
    diff = Series(series.var, tuple(series.coeffs[k] - expected[k] for k in range(n + 1)))
    return ResidualReport.of(name, diff)


def duality_residual(main: Series) -> ResidualReport:
    """Checks m_n(q, b, w) = w^2 q (w b)^n m_n(q, q/b, 1/(w q)) coefficientwise.

    ``main`` is the planar-maps series M(1) (coefficient n counts maps with
    n edges), with polynomial or RatFrac coefficients.
    """
    wrong = []
    for n, m_n in enumerate(main.coeffs):
        lhs = m_n if isinstance(m_n, RatFrac) else RatFrac(m_n)
        num, den = substitute_fraction(lhs.num, {"b": (q, b), "w": (RING.one, w * q)})
        dnum, dden = substitute_fraction(lhs.den, {"b": (q, b), "w": (RING.one, w * q)})
        rhs = RatFrac(num * dden, den * dnum) * (w ** 2 * q * (w * b) ** n)
        if lhs != rhs:
            wrong.append(n)
    detail = f"fails at sizes {wrong}" if wrong else None
    return ResidualReport.boolean("duality", not wrong, detail)
