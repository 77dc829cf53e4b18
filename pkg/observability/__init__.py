"""Observability module for pottsmaps - logs, traces, metrics"""

from observability.logging import setup_logging, get_logger
from observability.tracing import setup_tracing, get_tracer, trace_span
from observability.metrics import setup_metrics, get_metrics, track_computation

__all__ = [
    "setup_logging",
    "get_logger",
    "setup_tracing",
    "get_tracer",
    "trace_span",
    "setup_metrics",
    "get_metrics",
    "track_computation",
]
