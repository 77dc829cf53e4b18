"""
Golden regression for solve artifacts

An artifact is compared with a stored baseline coefficient by coefficient
over the orders both of them reach; the first difference is reported.
"""

import json
import shutil
from pathlib import Path
from typing import Any, Dict, Iterator, List, Tuple

from observability.logging import get_logger

logger = get_logger(__name__)

# Fields holding exact coefficient data, in comparison order
COMPARED_FIELDS = ("tables", "series", "determinants", "point_values")


def load_baseline(baseline_path: str) -> Dict[str, Any]:
    """Loads a stored artifact; empty when the file does not exist."""
    if not Path(baseline_path).exists():
        logger.warning(f"Baseline file not found: {baseline_path}")
        return {}
    with open(baseline_path, "r", encoding="utf-8") as f:
        return json.load(f)


def _walk(value: Any, path: str) -> Iterator[Tuple[str, Any]]:
    if isinstance(value, dict):
        for key in sorted(value):
            yield from _walk(value[key], f"{path}.{key}")
    elif isinstance(value, list):
        for k, item in enumerate(value):
            yield from _walk(item, f"{path}[{k}]")
    else:
        yield path, value


def _common_prefix(current: Any, baseline: Any) -> Tuple[Any, Any]:
    """Truncates nested lists to the length both sides have."""
    if isinstance(current, dict) and isinstance(baseline, dict):
        keys = set(current) | set(baseline)
        left, right = {}, {}
        for key in keys:
            a, b = _common_prefix(current.get(key), baseline.get(key))
            left[key], right[key] = a, b
        return left, right
    if isinstance(current, list) and isinstance(baseline, list):
        n = min(len(current), len(baseline))
        pairs = [_common_prefix(current[k], baseline[k]) for k in range(n)]
        return [p[0] for p in pairs], [p[1] for p in pairs]
    return current, baseline


def compare_artifacts(current: Dict[str, Any], baseline: Dict[str, Any]) -> Dict[str, Any]:
    """Differences between two artifacts over the orders both reach.

    Returns:
        Dictionary with ``has_regression``, ``first_difference`` (a path such
        as ``series.M1[4]`` with both values) and the number of differences
    """
    differences: List[str] = []
    if current.get("model") != baseline.get("model") or current.get("bindings") != baseline.get("bindings"):
        differences.append(
            f"run: baseline {baseline.get('model')} {baseline.get('bindings')}, "
            f"current {current.get('model')} {current.get('bindings')}")
    for field in COMPARED_FIELDS:
        left, right = _common_prefix(current.get(field), baseline.get(field))
        ours = dict(_walk(left, field))
        theirs = dict(_walk(right, field))
        paths = list(ours) + [p for p in theirs if p not in ours]
        for path in paths:
            a, b = ours.get(path), theirs.get(path)
            if a != b:
                differences.append(f"{path}: baseline {b!r}, current {a!r}")
    return {
        "has_regression": bool(differences),
        "first_difference": differences[0] if differences else None,
        "differences": len(differences),
        "compared_order": min(current.get("order", 0), baseline.get("order", 0)),
    }


def detect_regression(current: Dict[str, Any], baseline_path: str) -> Dict[str, Any]:
    """Compares an artifact with the baseline stored at ``baseline_path``."""
    baseline = load_baseline(baseline_path)
    if not baseline:
        logger.warning("No baseline found, skipping regression detection")
        return {"has_regression": False, "first_difference": None, "message": "No baseline available"}

    comparison = compare_artifacts(current, baseline)
    if comparison["has_regression"]:
        logger.error("Regression detected!", event_type="regression_detected",
                     first_difference=comparison["first_difference"])
    else:
        logger.info("No regression detected", event_type="regression_check", status="pass")
    return comparison


def save_baseline(results_path: str, baseline_path: str) -> None:
    """Stores an artifact file as the new baseline."""
    shutil.copy(results_path, baseline_path)
    logger.info(f"Baseline saved to {baseline_path}", event_type="baseline_saved",
                baseline_path=baseline_path)

