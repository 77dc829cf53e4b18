"""
Structured JSON logging for pottsmaps

Records go to stderr so that stdout carries only command output.
"""

import logging
import sys
from typing import Any, Dict, Optional
try:
    from pythonjsonlogger import jsonlogger
    HAS_JSON_LOGGER = True
except ImportError:
    HAS_JSON_LOGGER = False
    # Fallback to standard logging
    import logging as jsonlogger

_JSON_FORMAT = '%(timestamp)s %(level)s %(name)s %(message)s'
_TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _formatter(enable_json: bool) -> logging.Formatter:
    if enable_json and HAS_JSON_LOGGER:
        return jsonlogger.JsonFormatter(_JSON_FORMAT, timestamp=True)
    return logging.Formatter(_TEXT_FORMAT)


class StructuredLogger:
    """Structured JSON logger for solver and oracle events"""

    def __init__(self, name: str, level: int = logging.INFO):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(level)
        self.logger.propagate = False

        self.logger.handlers = []

        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(_formatter(True))
        self.logger.addHandler(handler)

    def _log(self, level: int, message: str, **kwargs):
        """Internal logging method with structured data"""
        exc_info = kwargs.pop('exc_info', False)
        self.logger.log(level, message, extra=describe(kwargs), exc_info=exc_info)

    def debug(self, message: str, **kwargs):
        self._log(logging.DEBUG, message, **kwargs)

    def info(self, message: str, **kwargs):
        self._log(logging.INFO, message, **kwargs)

    def warning(self, message: str, **kwargs):
        self._log(logging.WARNING, message, **kwargs)

    def error(self, message: str, **kwargs):
        self._log(logging.ERROR, message, **kwargs)

    def exception(self, message: str, **kwargs):
        """Log exception with traceback"""
        self._log(logging.ERROR, message, exc_info=True, **kwargs)

    def order_solved(self, model: str, order: int, determinant_terms: int, duration_ms: float):
        """Log one solved order of a differential system"""
        self.info(
            f"Solved {model} system at order {order}",
            event_type="order_solved",
            model=model,
            order=order,
            determinant_terms=determinant_terms,
            duration_ms=duration_ms
        )

    def check_result(self, suite: str, name: str, passed: bool, detail: Optional[str] = None):
        """Log the outcome of one identity check"""
        log = self.info if passed else self.warning
        log(
            f"Check {name} {'passed' if passed else 'FAILED'}",
            event_type="check_result",
            suite=suite,
            check=name,
            passed=passed,
            detail=detail
        )

    def enumeration_progress(self, edges: int, count: int):
        """Log the number of rooted maps found with a given edge count"""
        self.debug(
            f"Enumerated {count} rooted maps with {edges} edges",
            event_type="enumeration_progress",
            edges=edges,
            count=count
        )

    def suite_complete(self, suite: str, passed: int, failed: int, duration_ms: float):
        self.info(
            f"Suite {suite} completed",
            event_type="suite_complete",
            suite=suite,
            passed=passed,
            failed=failed,
            duration_ms=duration_ms
        )


# Global logger instances
_loggers: Dict[str, StructuredLogger] = {}


def setup_logging(
    level: int = logging.INFO,
    enable_json: bool = True,
    log_file: Optional[str] = None
) -> None:
    """Setup structured logging for pottsmaps

    Args:
        level: Logging level (logging.DEBUG, logging.INFO, etc.)
        enable_json: Enable JSON formatted logs
        log_file: Optional file to write logs to
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    root_logger.handlers = []

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_formatter(enable_json))
    root_logger.addHandler(handler)

    handlers = [handler]
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(_formatter(enable_json))
        root_logger.addHandler(file_handler)
        handlers.append(file_handler)

    # Loggers created before setup follow the new level and handlers
    for structured in _loggers.values():
        structured.logger.setLevel(level)
        structured.logger.handlers = list(handlers)

    logging.info("Logging configured", extra={
        "event_type": "logging_setup",
        "level": logging.getLevelName(level),
        "json_enabled": enable_json
    })


def get_logger(name: str, level: int = logging.INFO) -> StructuredLogger:
    """Get or create a structured logger

    Args:
        name: Logger name (usually module name)
        level: Logging level

    Returns:
        StructuredLogger instance
    """
    if name not in _loggers:
        _loggers[name] = StructuredLogger(name, level)
    return _loggers[name]


def describe(payload: Dict[str, Any]) -> Dict[str, Any]:
    """Log-safe copy of a payload: values that are not JSON scalars become strings."""
    safe = {}
    for key, value in payload.items():
        if isinstance(value, (str, int, float, bool)) or value is None:
            safe[key] = value
        else:
            safe[key] = str(value)
    return safe
