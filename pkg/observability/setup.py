"""
Setup observability for pottsmaps

Initializes logging, tracing, and metrics based on configuration
"""

import logging
import os
from typing import Optional

from observability.logging import setup_logging, get_logger
from observability.tracing import setup_tracing
from observability.metrics import setup_metrics


def initialize_observability(
    enable_logging: bool = True,
    enable_tracing: bool = False,
    enable_metrics: bool = False,
    log_level: int = logging.INFO,
    log_file: Optional[str] = None,
    metrics_port: int = 8000,
    otlp_endpoint: Optional[str] = None,
    enable_json: bool = True
) -> None:
    """Initialize all observability components

    Args:
        enable_logging: Enable structured JSON logging
        enable_tracing: Enable OpenTelemetry tracing
        enable_metrics: Enable the Prometheus metrics server
        log_level: Logging level
        log_file: Optional log file path
        metrics_port: Port for Prometheus metrics server
        otlp_endpoint: OTLP endpoint for traces (e.g., "http://localhost:4317")
        enable_json: JSON records instead of plain text
    """
    logger = get_logger(__name__)

    if enable_logging:
        setup_logging(level=log_level, enable_json=enable_json, log_file=log_file)

    if enable_tracing:
        setup_tracing(
            service_name="pottsmaps",
            enable_console=otlp_endpoint is None,
            enable_otlp=otlp_endpoint is not None,
            otlp_endpoint=otlp_endpoint
        )

    if enable_metrics:
        setup_metrics(port=metrics_port, enable=True)

    logger.debug(
        "Observability setup complete",
        event_type="observability_init",
        logging=enable_logging,
        tracing=enable_tracing,
        metrics=enable_metrics
    )


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


def initialize_from_env() -> None:
    """Initialize observability from environment variables

    Environment variables:
        - ENABLE_OBSERVABILITY: Master switch (default: true)
        - ENABLE_LOGGING: Enable logging (default: true)
        - ENABLE_TRACING: Enable tracing (default: false)
        - ENABLE_METRICS: Enable the metrics server (default: false)
        - LOG_LEVEL: Logging level (default: INFO)
        - LOG_FILE: Log file path (optional)
        - METRICS_PORT: Prometheus metrics port (default: 8000)
        - OTLP_ENDPOINT: OTLP endpoint for traces (optional)
    """
    if not _flag("ENABLE_OBSERVABILITY", "true"):
        return

    log_level_str = os.getenv("LOG_LEVEL", "INFO").upper()

    initialize_observability(
        enable_logging=_flag("ENABLE_LOGGING", "true"),
        enable_tracing=_flag("ENABLE_TRACING", "false"),
        enable_metrics=_flag("ENABLE_METRICS", "false"),
        log_level=getattr(logging, log_level_str, logging.INFO),
        log_file=os.getenv("LOG_FILE"),
        metrics_port=int(os.getenv("METRICS_PORT", "8000")),
        otlp_endpoint=os.getenv("OTLP_ENDPOINT")
    )
