"""
Prometheus metrics for pottsmaps
"""

import time
from typing import Dict, Any
from functools import wraps

try:
    from prometheus_client import REGISTRY, Counter, Histogram, Gauge, start_http_server
    HAS_PROMETHEUS = True
except ImportError:
    HAS_PROMETHEUS = False
    REGISTRY = None

    # Mock classes for when Prometheus is not installed
    class Counter:
        def __init__(self, *args, **kwargs):
            pass
        def inc(self, *args, **kwargs):
            pass
        def labels(self, *args, **kwargs):
            return self

    class Histogram:
        def __init__(self, *args, **kwargs):
            pass
        def observe(self, *args, **kwargs):
            pass
        def labels(self, *args, **kwargs):
            return self

    class Gauge:
        def __init__(self, *args, **kwargs):
            pass
        def set(self, *args, **kwargs):
            pass
        def labels(self, *args, **kwargs):
            return self

    def start_http_server(*args, **kwargs):
        pass

from observability.logging import get_logger

logger = get_logger(__name__)

_metrics_initialized = False

# Solver metrics
orders_solved_total = Counter(
    'pottsmaps_orders_solved_total',
    'Total number of solved orders of a differential system',
    ['model']
)

order_duration_seconds = Histogram(
    'pottsmaps_order_duration_seconds',
    'Time spent solving one order',
    ['model'],
    buckets=[0.01, 0.1, 0.5, 1.0, 5.0, 15.0, 60.0, 300.0]
)

series_order = Gauge(
    'pottsmaps_series_order',
    'Highest order reached by the solver',
    ['model']
)

# Check metrics
checks_total = Counter(
    'pottsmaps_checks_total',
    'Identity and oracle checks run',
    ['suite', 'status']
)

computation_duration_seconds = Histogram(
    'pottsmaps_computation_duration_seconds',
    'Duration of tracked computations',
    ['computation']
)

# Oracle metrics
maps_enumerated_total = Counter(
    'pottsmaps_maps_enumerated_total',
    'Rooted planar maps produced by the enumeration oracle',
    ['edges']
)


def setup_metrics(port: int = 8000, enable: bool = True) -> None:
    """Setup Prometheus metrics server

    Args:
        port: Port for metrics HTTP server
        enable: Enable metrics collection
    """
    global _metrics_initialized

    if not HAS_PROMETHEUS:
        logger.warning("prometheus-client not installed; metrics disabled")
        return

    if not enable:
        return

    try:
        start_http_server(port)
        _metrics_initialized = True
        logger.info(f"Prometheus metrics server started on port {port}", event_type="metrics_setup", port=port)
    except Exception as e:
        logger.warning(f"Failed to start metrics server: {e}", event_type="metrics_setup")


def get_metrics() -> Dict[str, Any]:
    """Current values of the pottsmaps metrics

    Returns:
        Map from sample name (with labels) to value
    """
    if not HAS_PROMETHEUS:
        return {}

    values: Dict[str, Any] = {}
    for family in REGISTRY.collect():
        if not family.name.startswith('pottsmaps_'):
            continue
        for sample in family.samples:
            labels = ",".join(f"{k}={v}" for k, v in sorted(sample.labels.items()))
            key = f"{sample.name}{{{labels}}}" if labels else sample.name
            values[key] = sample.value
    return values


def record_order_solved(model: str, duration: float) -> None:
    orders_solved_total.labels(model=model).inc()
    order_duration_seconds.labels(model=model).observe(duration)


def record_series_order(model: str, order: int) -> None:
    series_order.labels(model=model).set(order)


def record_check(suite: str, passed: bool) -> None:
    checks_total.labels(suite=suite, status="pass" if passed else "fail").inc()


def record_maps_enumerated(edges: int, count: int) -> None:
    maps_enumerated_total.labels(edges=str(edges)).inc(count)


def track_computation(name: str):
    """Decorator recording the duration of a computation

    Usage:
        @track_computation("two_catalytic")
        def iterate_two_catalytic(order):
            ...
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                computation_duration_seconds.labels(computation=name).observe(
                    time.perf_counter() - start_time)
        return wrapper
    return decorator
