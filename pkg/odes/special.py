"""
Special cases of the generic solutions

Each suite specializes a solved generic state, builds the series a known
equation is written in, and reports the residual of that equation together
with the simpler identities the specialized tables satisfy.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from algebra.linear import RatFrac
from algebra.polys import RING, b, const, evaluate, format_poly, nu, q, t, w, x
from algebra.series import Series
from core.config import ENUMERATION_MAX_EDGES
from core.errors import PottsError, UncleanDivisionError
from core.reports import ResidualReport
from observability.logging import get_logger
from observability.metrics import track_computation
from observability.tracing import trace_span
from odes.recurrences import h_recurrence, tutte_recurrence
from odes.spec import load_fixture, ode_residual
from oracle.maps import enumerate_rooted_maps
from oracle.potts import self_dual_weight
from solver.identities import tutte_series
from solver.models import Model
from solver.specialize import (
    SpecializedState,
    clear_series,
    describe_bindings,
    parse_bindings,
    specialize,
    specialize_series,
)
from solver.system import SolverState

logger = get_logger(__name__)

SELF_DUAL = {"q": b ** 2, "w": "1/b"}


def _require(state: SolverState, model: Model) -> None:
    if state.spec.model is not model:
        raise PottsError(f"expected a {model.value} state, got {state.spec.model.value}")


def _variable(name: str, order: int) -> Series:
    return Series.from_poly({"t": t, "w": w}[name], name, order)


def _x_series(special: SpecializedState, name: str, top: int) -> Series:
    """P, Q or R as a series whose coefficients are polynomials in x."""
    total = None
    for j in range(top + 1):
        term = special.coefficient_series(name, j) * x ** j
        total = term if total is None else total + term
    return total


# Tutte's proper colourings: triangulations at nu = 0

def tutte_t2(state: SolverState) -> Series:
    """T_2 = T_1 / nu at nu = 0."""
    _require(state, Model.TRIANGULATIONS)
    return specialize_series(tutte_series(state), {"nu": 0})


def nu_zero_identities(state: SolverState) -> List[ResidualReport]:
    special = specialize(state, {"nu": 0})
    order = special.order_done
    D0 = evaluate(state.spec.D, {"b": -1})
    P2 = special.coefficient_series("P", 2)
    Q1 = special.coefficient_series("Q", 1)
    R = _x_series(special, "R", 1)
    T2 = tutte_t2(state)
    return [
        ResidualReport.of("nu=0 Q1", Q1 - 1),
        ResidualReport.of("nu=0 R=2D", R - Series.from_poly(2 * D0, "w", R.order)),
        ResidualReport.of("nu=0 T2' + P2", 2 * T2.derivative() + P2 - const(1, 4)),
        ResidualReport.of("nu=0 D", Series.from_poly(D0 - (4 - q) * x - 1, "w", order)),
    ]


@track_computation("tutte_suite")
def tutte_suite(state: SolverState) -> List[ResidualReport]:
    """Tutte's equation and recurrence for properly coloured triangulations."""
    T2 = tutte_t2(state)
    H = T2 * q
    return [
        ResidualReport.of("tutte ode", ode_residual(load_fixture("tutte_t2"), T2)),
        ResidualReport.of("tutte ode H", ode_residual(load_fixture("tutte_h"), H)),
        ResidualReport.of("tutte recurrence", T2 - tutte_recurrence(T2.order)),
        ResidualReport.of("tutte recurrence H", H - h_recurrence(H.order)),
    ] + nu_zero_identities(state)


# Four colours

def q4_triangulation_series(special: SpecializedState) -> Tuple[Series, Series]:
    """S = 2 T_1 - w and the coefficient of X^2 in P for X = x + beta/(2 nu)."""
    S = 2 * special.main - _variable("w", special.main.order)
    P2 = special.recentred_series("P", RatFrac(-b, 2 * nu), 2)
    return S, P2


@track_computation("q4_triangulation_suite")
def q4_triangulation_suite(state: SolverState) -> List[ResidualReport]:
    _require(state, Model.TRIANGULATIONS)
    special = specialize(state, {"q": 4})
    S, P2 = q4_triangulation_series(special)
    pair = load_fixture("q4_triangulations_pair")
    R0 = special.coefficient_series("R", 0)
    R1 = special.coefficient_series("R", 1)
    Q0 = special.coefficient_series("Q", 0)
    Q1 = special.coefficient_series("Q", 1)
    W = _variable("w", special.order_done)
    alpha = b - 1
    square = (2 * nu * x + b) ** 2
    return [
        ResidualReport.of("q=4 triangulations ode", ode_residual(load_fixture("q4_triangulations"), S)),
        ResidualReport.of("q=4 triangulations pair 1", ode_residual(pair, {"S": S, "A": P2}, 0)),
        ResidualReport.of("q=4 triangulations pair 2", ode_residual(pair, {"S": S, "A": P2}, 1)),
        ResidualReport.of("q=4 triangulations R0 R1", 2 * nu * R0 - b * R1),
        ResidualReport.of(
            "q=4 triangulations R1 Q",
            (16 * nu ** 2 * W + alpha * b) * R1 - 4 * nu * b * Q1 + 8 * nu ** 2 * Q0 + 4 * nu * b ** 2,
        ),
        ResidualReport.of("q=4 triangulations D", evaluate(state.spec.D, {"q": 4}) - square),
    ]


def q4_maps_series(special: SpecializedState) -> Tuple[Series, Series]:
    """M1tilde and the coefficient of X^3 in P for X = x - 2/(nu + 1)."""
    P3 = special.recentred_series("P", RatFrac(2 * RING.one, b + 2), 3)
    return special.main, P3


def q4_maps_pair_residual(special: SpecializedState) -> Tuple[Series, Series]:
    """Residuals of the two equations linking M1tilde and the recentred P_3 at q = 4."""
    if special.spec.model is not Model.MAPS:
        raise PottsError("the q=4 pair is written for planar maps")
    if describe_bindings(special.bindings) != describe_bindings(parse_bindings("q=4")):
        raise PottsError(f"expected a state specialized at q=4, got {describe_bindings(special.bindings)}")
    M, P3 = q4_maps_series(special)
    pair = load_fixture("q4_maps_pair")
    return (ode_residual(pair, {"S": M, "A": P3}, 0),
            ode_residual(pair, {"S": M, "A": P3}, 1))


@track_computation("q4_maps_suite")
def q4_maps_suite(state: SolverState) -> List[ResidualReport]:
    _require(state, Model.MAPS)
    special = specialize(state, {"q": 4})
    first, second = q4_maps_pair_residual(special)
    M = special.main
    R0 = special.coefficient_series("R", 0)
    R1 = special.coefficient_series("R", 1)
    Q0 = special.coefficient_series("Q", 0)
    Q1 = special.coefficient_series("Q", 1)
    T = _variable("t", special.order_done)
    lam = b + 2
    k = b + 4 * w
    expected_start = [RING.zero, RING.zero, w, w * (nu + 3 * w + nu * w)]
    n = min(M.order, len(expected_start) - 1)
    start = Series("t", tuple(M[i] - expected_start[i] for i in range(n + 1)))
    return [
        ResidualReport.of("q=4 maps pair 1", first),
        ResidualReport.of("q=4 maps pair 2", second),
        ResidualReport.of("q=4 maps M1 start", start),
        ResidualReport.of("q=4 maps R0 R1", (nu + 1) * R0 + 2 * R1 + 4 * (1 - 2 * w)),
        ResidualReport.of(
            "q=4 maps R Q",
            (b - lam ** 2 * k * T) * R0 + lam * k * Q0 + 2 * k * Q1
            - 4 * (2 * w - 1) * lam * k * T + 8 * w,
        ),
        ResidualReport.of("q=4 maps D", evaluate(state.spec.D, {"q": 4}) - ((nu + 1) * x - 2) ** 2),
    ]


# Spanning forests: q = 0

def forest_series(state: SolverState) -> Series:
    """G(beta, w) = beta T_1(q = 0, w / beta), the spanning-forest series.

    Raises:
        UncleanDivisionError: When a coefficient does not clear after the
            rescaling, or when G is not O(w^2)
    """
    _require(state, Model.TRIANGULATIONS)
    at_zero = specialize(state, {"q": 0}).main
    rescaled = at_zero.map(RatFrac).rescale(RatFrac(RING.one, b)) * b
    G = clear_series(rescaled, "spanning forest series")
    if G[0] or (G.order >= 1 and G[1]):
        raise UncleanDivisionError("spanning forest series is not O(w^2)")
    return G


def forest_w(G: Series) -> Series:
    """W = 2 G - w / beta."""
    return 2 * G - _variable("w", G.order) * RatFrac(RING.one, b)


@track_computation("forest_suite")
def forest_suite(state: SolverState) -> List[ResidualReport]:
    _require(state, Model.TRIANGULATIONS)
    special = specialize(state, {"q": 0})
    G = forest_series(state)
    R0 = special.coefficient_series("R", 0)
    R1 = special.coefficient_series("R", 1)
    reports = [
        ResidualReport.of("q=0 T1 ode", ode_residual(load_fixture("forest_t1"), special.main)),
        ResidualReport.of("forest ode", ode_residual(load_fixture("forest_w"), forest_w(G))),
        ResidualReport.of("q=0 R0", R0 + 2 * b),
        ResidualReport.of("q=0 R1", R1 + 8 * b),
        ResidualReport.of("q=0 D", evaluate(state.spec.D, {"q": 0}) - b ** 2 * (1 + 4 * x)),
    ]
    if G.order >= 2:
        reports.append(ResidualReport.of("forest w^2", G[2] - nu))
    return reports


# The self-dual line q = beta^2, w = 1/beta

def self_dual_series(state: SolverState) -> Series:
    """S = beta M1tilde on the self-dual line."""
    _require(state, Model.MAPS)
    special = specialize(state, SELF_DUAL)
    return clear_series(special.main * b, "self-dual series")


@track_computation("self_dual_suite")
def self_dual_suite(state: SolverState) -> List[ResidualReport]:
    _require(state, Model.MAPS)
    special = specialize(state, SELF_DUAL)
    S = clear_series(special.main * b, "self-dual series")
    half = const(1, 2)
    lam = b + 2
    order = special.order_done
    T = _variable("t", order)
    p = Series.from_poly(8 * lam * t - 1, "t", order)

    P0 = special.recentred_series("P", half, 0)
    P2 = special.recentred_series("P", half, 2)
    Q0 = special.recentred_series("Q", half, 0)
    R1 = special.recentred_series("R", half, 1)
    pair = load_fixture("self_dual_pair")

    expected_start = [RING.zero, RING.zero, RING.one]
    n = min(S.order, 2)
    start = Series("t", tuple(S[i] - expected_start[i] for i in range(n + 1)))

    reports = [
        ResidualReport.of("self-dual ode", ode_residual(load_fixture("self_dual"), S)),
        ResidualReport.of("self-dual start", start),
        ResidualReport.of("self-dual pair 1", ode_residual(pair, {"S": S, "A": P0}, 0)),
        ResidualReport.of("self-dual pair 2", ode_residual(pair, {"S": S, "A": P0}, 1)),
        ResidualReport.of("self-dual R2", special.coefficient_series("R", 2)),
    ]
    for name, k in (("P", 1), ("P", 3), ("Q", 1), ("R", 0)):
        reports.append(ResidualReport.of(
            f"self-dual recentred {name}{k}", special.recentred_series(name, half, k)))
    reports += [
        ResidualReport.of("self-dual Q0 R1", Q0 * (4 * lam) + p * (R1 - b + 2)),
        ResidualReport.of("self-dual S Q0 P2", 12 * b * lam * S + 2 * Q0 - P2 - 4 * (b + 4) * T),
        ResidualReport.of("self-dual S' R1", -2 * b * lam * S.derivative() + R1 + 4),
    ]
    reports.append(self_dual_expansion_report(S, ENUMERATION_MAX_EDGES))
    return reports


def self_dual_expansion_report(S: Series, max_edges: int) -> ResidualReport:
    """Compares [t^n] S with the subset expansion over rooted maps with n - 2 edges."""
    top = min(S.order, max_edges + 2)
    totals = [RING.zero] * (top + 1)
    for rooted in enumerate_rooted_maps(top - 2):
        totals[rooted.n_edges + 2] += self_dual_weight(rooted)
    wrong = [n for n in range(top + 1) if S[n] != totals[n]]
    detail = None
    if wrong:
        n = wrong[0]
        detail = f"t^{n}: solver {format_poly(S[n])}, maps {format_poly(totals[n])}"
    return ResidualReport.boolean("self-dual subset expansion", not wrong, detail)


@dataclass(frozen=True)
class SuiteSpec:
    """A named special-case suite and the binding it lives on."""
    name: str
    model: Model
    bindings: str
    run: Callable[[SolverState], List[ResidualReport]]

    def matches(self, bindings: Optional[str]) -> bool:
        if bindings is None:
            return True
        return describe_bindings(parse_bindings(bindings)) == describe_bindings(parse_bindings(self.bindings))


SUITES: Dict[str, SuiteSpec] = {
    s.name: s for s in (
        SuiteSpec("tutte", Model.TRIANGULATIONS, "nu=0", tutte_suite),
        SuiteSpec("q4-triangulations", Model.TRIANGULATIONS, "q=4", q4_triangulation_suite),
        SuiteSpec("forest", Model.TRIANGULATIONS, "q=0", forest_suite),
        SuiteSpec("q4-maps", Model.MAPS, "q=4", q4_maps_suite),
        SuiteSpec("self-dual", Model.MAPS, "q=b^2,w=1/b", self_dual_suite),
    )
}


def suites_for(model: Model, bindings: Optional[str] = None) -> List[SuiteSpec]:
    """Suites applicable to a model, optionally only those on one binding."""
    return [s for s in SUITES.values() if s.model is model and s.matches(bindings)]


def run_suite(name: str, state: SolverState) -> List[ResidualReport]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown equation suite {name!r}; expected one of {sorted(SUITES)}")
    with trace_span("ode_suite", {"suite": name, "order": state.order_done}):
        reports = suite.run(state)
    logger.debug("Equation suite finished", event_type="ode_suite", suite=name,
                 passed=sum(r.passed for r in reports), total=len(reports))
    return reports
