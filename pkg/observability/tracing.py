"""
OpenTelemetry tracing for pottsmaps

Spans are only recorded after setup_tracing has been called; until then
trace_span is a no-op, so nothing reaches stdout by accident.
"""

from contextlib import contextmanager
from typing import Any, Dict, Optional

try:
    from opentelemetry import trace
    from opentelemetry.sdk.trace import TracerProvider
    from opentelemetry.sdk.trace.export import ConsoleSpanExporter, BatchSpanProcessor
    from opentelemetry.sdk.resources import Resource
    HAS_OPENTELEMETRY = True
except ImportError:
    HAS_OPENTELEMETRY = False

from core.errors import PottsError
from observability.logging import describe, get_logger

logger = get_logger(__name__)

# Span attributes live under this namespace
ATTRIBUTE_PREFIX = "pottsmaps."

_tracer = None


def setup_tracing(
    service_name: str = "pottsmaps",
    enable_console: bool = False,
    enable_otlp: bool = False,
    otlp_endpoint: Optional[str] = None
) -> None:
    """Setup OpenTelemetry tracing

    Args:
        service_name: Service name for traces
        enable_console: Enable console exporter (writes spans to stdout)
        enable_otlp: Enable OTLP exporter
        otlp_endpoint: OTLP endpoint URL (e.g., "http://localhost:4317")
    """
    global _tracer

    if not HAS_OPENTELEMETRY:
        logger.warning("OpenTelemetry not installed; tracing disabled")
        return

    provider = TracerProvider(resource=Resource.create({"service.name": service_name}))

    if enable_console:
        provider.add_span_processor(BatchSpanProcessor(ConsoleSpanExporter()))

    if enable_otlp and otlp_endpoint:
        try:
            from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
        except ImportError:
            logger.warning("OTLP exporter not installed; spans stay local", event_type="tracing_setup")
        else:
            provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter(endpoint=otlp_endpoint)))

    trace.set_tracer_provider(provider)
    _tracer = trace.get_tracer(service_name)

    logger.info(f"Tracing configured for {service_name}", event_type="tracing_setup")


def get_tracer() -> Optional[Any]:
    """The configured tracer, or None before setup_tracing"""
    return _tracer


def span_attributes(attributes: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Prefixed span attributes; polynomials and series become their text."""
    return {f"{ATTRIBUTE_PREFIX}{key}": value
            for key, value in describe(attributes or {}).items() if value is not None}


@contextmanager
def trace_span(name: str, attributes: Optional[Dict[str, Any]] = None):
    """Span around one solver or check step

    Usage:
        with trace_span("advance_order", {"model": "maps", "order": 3}):
            ...

    A PottsError leaving the block is recorded on the span under
    ``pottsmaps.error`` before it propagates.
    """
    tracer = get_tracer()

    if tracer is None:
        yield None
        return

    with tracer.start_as_current_span(name, attributes=span_attributes(attributes)) as span:
        try:
            yield span
        except PottsError as e:
            span.set_attribute(f"{ATTRIBUTE_PREFIX}error", type(e).__name__)
            raise
