"""Check-suite runner and golden regression for pottsmaps"""

from evaluation.runner import run_checks, run_checks_sync, summarize
from evaluation.regression import compare_artifacts, detect_regression, load_baseline

__all__ = [
    "run_checks",
    "run_checks_sync",
    "summarize",
    "compare_artifacts",
    "detect_regression",
    "load_baseline",
]
