"""
Solve and check pipelines

One pipeline solves a model (memoized per model and order), optionally
specializes it, runs check suites and packs the result into an artifact.
The check functions here are synchronous; evaluation.runner runs them
concurrently.
"""

import csv
import io
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from algebra.linear import format_value
from algebra.polys import q
from algebra.series import Series
from core.errors import PottsError
from core.reports import ResidualReport
from observability.logging import get_logger
from observability.tracing import trace_span
from odes.special import run_suite, suites_for, tutte_t2
from oracle.bipartite import bipartite_invariant_check
from oracle.catalytic import oracle_maps_series, potts_series, known_potts_expansion, tutte_h_series
from oracle.maps import counts_by_edges, enumerate_rooted_maps
from oracle.potts import enumeration_reports, oracle_M1, potts_labels
from oracle.toy import iterate_uncoloured, toy_m1, toy_suite
from schemas.models import (
    CheckSuite,
    EnumerationArtifact,
    OutputFormat,
    RunConfig,
    SolveArtifact,
    SuiteResult,
)
from solver.identities import (
    derivative_identity_residual,
    determinant_reports,
    duality_residual,
    first_layer_report,
    leading_coefficient_report,
    main_series,
    maps_series,
    nondifferential_residuals,
    known_expansion_reports,
)
from solver.models import Model
from solver.specialize import parse_bindings, point_values, specialize, specialize_series
from solver.system import SolverState, advance_order, solve, system_residual
from tools.cache import cache_result

logger = get_logger(__name__)

# Rooted planar maps with 0, 1, ... edges
ROOTED_MAP_COUNTS = (1, 2, 9, 54, 378)

# Bipartite and Tutte-G iterations get expensive faster than the solver
ORACLE_ORDER_CAP = 8

CheckFunction = Callable[[SolverState, RunConfig], List[ResidualReport]]


@cache_result()
def solve_cached(model: str, order: int) -> SolverState:
    """Generic solved state, shared by every command of one process."""
    return solve(model, order)


def solve_for(config: RunConfig) -> SolverState:
    return solve_cached(config.model.value, config.order)


# The main series of maps is t^2 M(1), so M(1) through t^N needs two more orders
M1_EXTRA_ORDERS = 2


@cache_result()
def maps_m1_cached(order: int) -> Series:
    """M(1) exact through t^order, from the maps system advanced past ``order``."""
    state = solve_cached(Model.MAPS.value, order)
    for _ in range(M1_EXTRA_ORDERS):
        state = advance_order(state)
    return maps_series(state)


def _bound(series: Series, config: RunConfig) -> Series:
    """The series under the configured specialization, if any."""
    if not config.specialize:
        return series
    return specialize_series(series, parse_bindings(config.specialize))


def agreement(name: str, left: Series, right: Series) -> ResidualReport:
    """Coefficientwise equality of two series through their common order."""
    n = min(left.order, right.order)
    return ResidualReport.of(name, left.truncate(n) - right.truncate(n))


# Check suites

def system_checks(state: SolverState, config: RunConfig) -> List[ResidualReport]:
    """The differential system itself, C_1, Q_2, determinants and known expansions."""
    reports = [ResidualReport.of(f"system x^{j}", residual)
               for j, residual in sorted(system_residual(state).items())]
    reports += [first_layer_report(state), leading_coefficient_report(state)]
    reports += determinant_reports(state)
    reports += known_expansion_reports(state)
    return reports


def identity_checks(state: SolverState, config: RunConfig) -> List[ResidualReport]:
    """Non-differential identities, the derivative identity and, for maps, duality."""
    reports = list(nondifferential_residuals(state))
    reports.append(ResidualReport.of("derivative identity", derivative_identity_residual(state)))
    if state.spec.model is Model.MAPS:
        reports.append(duality_residual(maps_m1_cached(state.order_done)))
    return reports


def ode_checks(state: SolverState, config: RunConfig) -> List[ResidualReport]:
    """Every special-case suite of the model, or those living on the configured binding."""
    reports: List[ResidualReport] = []
    for suite in suites_for(state.spec.model, config.specialize):
        reports += run_suite(suite.name, state)
    return reports


def oracle_checks(state: SolverState, config: RunConfig) -> List[ResidualReport]:
    """The solver against the iteration oracles."""
    if state.spec.model is Model.MAPS:
        M1 = maps_m1_cached(state.order_done)
        oracle = oracle_maps_series(M1.order)
        expected = known_potts_expansion()
        iterated = potts_series(len(expected) - 1)
        small = min(state.order_done, ORACLE_ORDER_CAP)
        reports = [
            agreement("solver vs two-catalytic", _bound(M1, config), _bound(oracle, config)),
            ResidualReport.of("M(y) expansion", iterated - Series("t", tuple(expected))),
            duality_residual(oracle),
        ]
        reports += bipartite_invariant_check(small)
        reports += toy_suite(state.order_done)
        return reports
    T2 = tutte_t2(state)
    H = tutte_h_series(max(2, min(T2.order, ORACLE_ORDER_CAP)))
    return [agreement("solver vs Tutte G(1, 0)", T2 * q, H)]


def enumeration_reports_for(top: int) -> List[ResidualReport]:
    """Counts, Euler, duality, FK/Tutte and chromatic checks on maps with at most ``top`` edges."""
    maps = enumerate_rooted_maps(top)
    counts = counts_by_edges(maps)
    wrong = [e for e in range(top + 1) if counts.get(e, 0) != ROOTED_MAP_COUNTS[e]]
    uncoloured = toy_m1(iterate_uncoloured(top))
    reports = [
        ResidualReport.boolean("rooted map counts", not wrong,
                               f"{wrong[0]} edges: {counts.get(wrong[0], 0)} maps" if wrong else None),
        ResidualReport.boolean("counts vs uncoloured series",
                               all(uncoloured[e] == counts.get(e, 0) for e in range(top + 1))),
    ]
    reports += enumeration_reports(top)
    return reports


def enumeration_checks(state: SolverState, config: RunConfig) -> List[ResidualReport]:
    """Brute-force rooted maps against the solver and the uncoloured toy series."""
    top = config.max_edges
    reports = enumeration_reports_for(top)
    if state.spec.model is Model.MAPS:
        M1 = maps_m1_cached(state.order_done)
        reports.append(agreement("solver vs enumeration", _bound(M1, config), _bound(oracle_M1(top), config)))
    return reports


CHECKS: Dict[CheckSuite, CheckFunction] = {
    CheckSuite.SYSTEM: system_checks,
    CheckSuite.IDENTITIES: identity_checks,
    CheckSuite.ODES: ode_checks,
    CheckSuite.ORACLE: oracle_checks,
    CheckSuite.ENUMERATION: enumeration_checks,
}


# Artifacts

def _table_layers(state: SolverState, config: RunConfig) -> Dict[str, List[List[str]]]:
    spec = state.spec
    widths = {"P": spec.deg_p + 1, "Q": 3, "R": spec.deg_r + 1}
    source = specialize(state, parse_bindings(config.specialize)) if config.specialize else state
    tables = {}
    for name, width in widths.items():
        depth = state.order_done if name == "R" else state.order_done + 1
        tables[name] = [[format_value(source.table(name, s, j)) for j in range(width)]
                        for s in range(depth)]
    return tables


def build_artifact(state: SolverState, config: RunConfig,
                   results: Sequence[SuiteResult] = ()) -> SolveArtifact:
    """Canonical text form of a solve; identical configs give identical artifacts."""
    with trace_span("build_artifact", {"model": state.spec.model.value, "order": state.order_done}):
        main = _bound(main_series(state), config)
        named = {state.spec.main_name: main}
        if state.spec.model is Model.MAPS:
            named["M1"] = _bound(maps_m1_cached(state.order_done), config)
        series = {name: [format_value(c) for c in s.coeffs] for name, s in named.items()}
        dets = [format_value(d) if d is not None else None for d in state.determinants]
        values = {}
        if config.at:
            point = parse_bindings(config.at)
            values = {name: [format_value(v) for v in point_values(s, point)] for name, s in named.items()}
        return SolveArtifact(
            model=state.spec.model.value,
            order=state.order_done,
            size_var=state.size_var,
            bindings=config.specialize,
            tables=_table_layers(state, config),
            determinants=dets,
            series=series,
            point=config.at,
            point_values=values,
            checks=list(results),
        )


def build_enumeration_artifact(max_edges: int, results: Sequence[SuiteResult] = ()) -> EnumerationArtifact:
    maps = enumerate_rooted_maps(max_edges)
    return EnumerationArtifact(
        max_edges=max_edges,
        counts={str(e): n for e, n in counts_by_edges(maps).items()},
        labels=potts_labels(maps),
        checks=list(results),
    )


def crosscheck_rows(state: SolverState, config: RunConfig) -> List[Tuple[str, int, str]]:
    """(oracle, coefficient, difference) for every compared coefficient."""
    rows = []
    if state.spec.model is Model.MAPS:
        M1 = _bound(maps_m1_cached(state.order_done), config)
        oracles = {"two-catalytic": _bound(oracle_maps_series(M1.order), config)}
        if CheckSuite.ENUMERATION in config.checks:
            oracles["enumeration"] = _bound(oracle_M1(config.max_edges), config)
    else:
        T2 = tutte_t2(state)
        M1 = T2 * q
        oracles = {"tutte-G": tutte_h_series(max(2, min(T2.order, ORACLE_ORDER_CAP)))}
    for name, oracle in sorted(oracles.items()):
        n = min(M1.order, oracle.order)
        for k in range(n + 1):
            rows.append((name, k, format_value(M1[k] - oracle[k])))
    return rows


def first_mismatch(rows: Sequence[Tuple[str, int, str]]) -> Optional[Tuple[str, int, str]]:
    return next((row for row in rows if row[2] != "0"), None)


# Rendering

def render(artifact, fmt: OutputFormat) -> str:
    """Artifact text in the requested format."""
    if fmt is OutputFormat.JSON:
        return artifact.to_json()
    if fmt is OutputFormat.CSV:
        return _render_csv(artifact)
    return _render_text(artifact)


def _render_csv(artifact) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["kind", "name", "index", "sub", "value"])
    if isinstance(artifact, SolveArtifact):
        for name, layers in sorted(artifact.tables.items()):
            for s, layer in enumerate(layers):
                for j, value in enumerate(layer):
                    writer.writerow(["table", name, s, j, value])
        for name, coeffs in sorted(artifact.series.items()):
            for n, value in enumerate(coeffs):
                writer.writerow(["series", name, n, "", value])
        for i, det in enumerate(artifact.determinants, start=1):
            writer.writerow(["determinant", "S", i, "", det or ""])
    else:
        for e, n in sorted(artifact.counts.items(), key=lambda kv: int(kv[0])):
            writer.writerow(["count", "maps", e, "", n])
        for text, label in sorted(artifact.labels.items()):
            writer.writerow(["label", text, "", "", label])
    for suite in artifact.checks:
        for check in suite.checks:
            writer.writerow(["check", suite.suite, check.name, check.checked_order or "",
                             "pass" if check.passed else f"FAIL {check.detail or ''}".strip()])
    return buffer.getvalue()


def _render_text(artifact) -> str:
    lines = []
    if isinstance(artifact, SolveArtifact):
        bound = f" at {artifact.bindings}" if artifact.bindings else ""
        lines.append(f"{artifact.model} solved through {artifact.size_var}^{artifact.order}{bound}")
        for name, coeffs in sorted(artifact.series.items()):
            lines.append(f"{name}:")
            lines += [f"  {artifact.size_var}^{n}: {value}" for n, value in enumerate(coeffs)]
        for name, values in sorted(artifact.point_values.items()):
            lines.append(f"{name} at {artifact.point}: " + ", ".join(values))
    else:
        lines.append(f"rooted planar maps with at most {artifact.max_edges} edges")
        lines += [f"  {e} edges: {n}" for e, n in sorted(artifact.counts.items(), key=lambda kv: int(kv[0]))]
    for suite in artifact.checks:
        status = "ok" if suite.ok else "FAILED"
        lines.append(f"[{suite.suite}] {suite.passed} passed, {suite.failed} failed: {status}")
        if suite.error:
            lines.append(f"  error: {suite.error}")
        for check in suite.checks:
            if not check.passed:
                lines.append(f"  {check.name}: {check.detail or 'nonzero residual'}")
    return "\n".join(lines) + "\n"


def describe_error(error: PottsError) -> str:
    """One-line diagnostic naming the failing order or identity."""
    return f"{type(error).__name__}: {error}"
