#!/usr/bin/env python3
"""
Command-line entry point for pottsmaps

Subcommands: solve, crosscheck, enumerate, ode-check. The exit code is 0
when every requested check passes, 1 when a residual or comparison fails and
2 on an invalid configuration or a fatal computation error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from core.config import SCHEMA_VERSION
from core.errors import PottsError
from core.pipeline import (
    build_artifact,
    build_enumeration_artifact,
    crosscheck_rows,
    describe_error,
    enumeration_reports_for,
    first_mismatch,
    render,
    solve_for,
)
from evaluation.regression import detect_regression
from evaluation.runner import run_checks_sync, summarize
from observability.setup import initialize_observability
from schemas.models import CheckSuite, OutputFormat, RunConfig
from solver.models import Model

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _checks(values: Optional[Sequence[str]]) -> Optional[List[str]]:
    """Flattens repeated and comma-separated --check values."""
    if not values:
        return None
    return [part.strip() for value in values for part in value.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=[m.value for m in Model], help="Family of maps")
    common.add_argument("--order", type=int, help="Truncation order in the size variable")
    common.add_argument("--config", type=Path, help="JSON config file; flags override it")
    common.add_argument("--specialize", help="Bindings such as q=4 or q=b^2,w=1/b")
    common.add_argument("--at", help="Rational parameter point, e.g. q=3,b=2,w=1/2")
    common.add_argument("--check", action="append",
                        help=f"Check suites to run: {', '.join(s.value for s in CheckSuite)}")
    common.add_argument("--max-edges", dest="max_edges", type=int, help="Largest edge count to enumerate")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format")
    common.add_argument("--out", type=Path, help="Output file (default: stdout)")
    common.add_argument("--baseline", type=Path, help="Stored artifact to compare against")

    parser = argparse.ArgumentParser(
        prog="run_potts",
        description="Exact series for q-coloured planar maps and triangulations",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="Solve a differential system and export its tables")
    sub.add_parser("crosscheck", parents=[common], help="Compare the solver with the oracles")
    sub.add_parser("enumerate", parents=[common], help="Enumerate rooted planar maps by brute force")
    sub.add_parser("ode-check", parents=[common], help="Check the special-case differential equations")
    return parser


def config_from_args(args: argparse.Namespace, default_checks: Sequence[CheckSuite] = ()) -> RunConfig:
    config = RunConfig.from_sources(
        args.config,
        model=args.model,
        order=args.order,
        specialize=args.specialize,
        at=args.at,
        checks=_checks(args.check),
        max_edges=args.max_edges,
        format=args.format,
        out=args.out,
        baseline=args.baseline,
    )
    if not config.checks and default_checks:
        config = config.model_copy(update={"checks": list(default_checks)})
    return config


def write_output(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def _regression_code(current: Dict, config: RunConfig) -> int:
    if config.baseline is None:
        return EXIT_OK
    comparison = detect_regression(current, str(config.baseline))
    if comparison.get("has_regression"):
        print(f"regression: {comparison['first_difference']}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_solve(config: RunConfig) -> int:
    """Solves, runs the requested checks and writes the artifact."""
    state = solve_for(config)
    results = run_checks_sync(state, config)
    artifact = build_artifact(state, config, results)
    write_output(render(artifact, config.format), config.out)
    code = EXIT_OK if artifact.ok else EXIT_FAILED
    for suite in results:
        if not suite.ok:
            failed = next((c for c in suite.checks if not c.passed), None)
            reason = suite.error or (f"{failed.name}: {failed.detail}" if failed else "failed")
            print(f"[{suite.suite}] {reason}", file=sys.stderr)
    return max(code, _regression_code(artifact.model_dump(mode="json"), config))


def cmd_crosscheck(config: RunConfig) -> int:
    """Per-coefficient differences between the solver and each oracle."""
    state = solve_for(config)
    rows = crosscheck_rows(state, config)
    results = run_checks_sync(state, config)
    if config.format is OutputFormat.JSON:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "model": config.model.value,
            "order": config.order,
            "bindings": config.specialize,
            "rows": [{"oracle": name, "index": k, "difference": diff} for name, k, diff in rows],
            "checks": [r.model_dump(mode="json") for r in results],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        width = max((len(name) for name, _, _ in rows), default=6)
        lines = [f"{'oracle':<{width}}  n  difference"]
        lines += [f"{name:<{width}}  {k:>2} {diff}" for name, k, diff in rows]
        text = "\n".join(lines) + "\n"
    write_output(text, config.out)

    mismatch = first_mismatch(rows)
    code = EXIT_OK
    if mismatch is not None:
        name, k, diff = mismatch
        print(f"first differing coefficient: {name} {state.size_var}^{k}: {diff}", file=sys.stderr)
        code = EXIT_FAILED
    if not all(r.ok for r in results):
        code = EXIT_FAILED
    return code


def cmd_enumerate(config: RunConfig) -> int:
    """Rooted map counts, Potts labels and the enumeration checks."""
    result = summarize(CheckSuite.ENUMERATION.value, enumeration_reports_for(config.max_edges))
    artifact = build_enumeration_artifact(config.max_edges, [result])
    write_output(render(artifact, config.format), config.out)
    return EXIT_OK if artifact.ok else EXIT_FAILED


def cmd_ode_check(config: RunConfig) -> int:
    """The special-case equation suites of the model."""
    return cmd_solve(config)


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "solve": cmd_solve,
    "crosscheck": cmd_crosscheck,
    "enumerate": cmd_enumerate,
    "ode-check": cmd_ode_check,
}

DEFAULT_CHECKS: Dict[str, Sequence[CheckSuite]] = {
    "solve": (),
    "crosscheck": (CheckSuite.ORACLE,),
    "enumerate": (CheckSuite.ENUMERATION,),
    "ode-check": (CheckSuite.ODES,),
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    initialize_observability(enable_logging=True, enable_tracing=False, enable_metrics=False)
    try:
        config = config_from_args(args, DEFAULT_CHECKS[args.command])
    except (ValidationError, ValueError, OSError) as e:
        print(f"invalid configuration: {e}", file=sys.stderr)
        return EXIT_ERROR
    try:
        return COMMANDS[args.command](config)
    except PottsError as e:
        print(describe_error(e), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
