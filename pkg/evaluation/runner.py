"""
Concurrent runner for check suites

Suites only read the solved state, so they run side by side in worker
threads once the solve has completed.
"""

import asyncio
import time
from typing import Dict, List, Optional, Sequence

from core.errors import PottsError
from core.pipeline import CHECKS
from core.reports import ResidualReport
from observability.logging import get_logger
from observability.metrics import record_check
from observability.tracing import trace_span
from schemas.models import CheckResult, CheckSuite, RunConfig, SuiteResult
from solver.system import SolverState

logger = get_logger(__name__)


def summarize(suite: str, reports: Sequence[ResidualReport]) -> SuiteResult:
    """Counts and per-check results of one suite."""
    checks = [CheckResult.from_report(suite, r) for r in reports]
    passed = sum(1 for c in checks if c.passed)
    return SuiteResult(suite=suite, passed=passed, failed=len(checks) - passed, checks=checks)


async def run_suite(suite: CheckSuite, state: SolverState, config: RunConfig) -> SuiteResult:
    """Runs one suite in a worker thread.

    A PottsError raised inside the suite is recorded on the result, not
    re-raised, so the other suites still report.
    """
    started = time.perf_counter()
    logger.info(f"Running suite: {suite.value}", event_type="suite_start",
                suite=suite.value, model=state.spec.model.value, order=state.order_done)
    with trace_span("check_suite", {"suite": suite.value, "order": state.order_done}):
        try:
            reports = await asyncio.to_thread(CHECKS[suite], state, config)
        except PottsError as e:
            logger.error(f"Suite {suite.value} aborted", event_type="suite_error",
                         suite=suite.value, error=str(e))
            record_check(suite.value, False)
            return SuiteResult(suite=suite.value, failed=1, error=f"{type(e).__name__}: {e}")

    result = summarize(suite.value, reports)
    for report in reports:
        record_check(suite.value, report.passed)
        logger.check_result(suite.value, report.name, report.passed, report.detail)
    logger.suite_complete(
        suite=suite.value,
        passed=result.passed,
        failed=result.failed,
        duration_ms=round((time.perf_counter() - started) * 1000, 2),
    )
    return result


async def run_checks(state: SolverState, config: RunConfig,
                     suites: Optional[Sequence[CheckSuite]] = None) -> List[SuiteResult]:
    """Runs the requested suites concurrently; results keep the request order."""
    suites = list(config.checks if suites is None else suites)
    if not suites:
        return []
    return list(await asyncio.gather(*(run_suite(s, state, config) for s in suites)))


def run_checks_sync(state: SolverState, config: RunConfig,
                    suites: Optional[Sequence[CheckSuite]] = None) -> List[SuiteResult]:
    return asyncio.run(run_checks(state, config, suites))


def totals(results: Sequence[SuiteResult]) -> Dict[str, int]:
    return {
        "suites": len(results),
        "passed": sum(r.passed for r in results),
        "failed": sum(r.failed for r in results),
    }
