"""Structured logging for pipeline runs.

Provides JSON structured logging with run ID tracking so that every record
of one analysis (parse, cycles, boroughs, enumeration, export) can be
correlated after the fact.
"""

import json
import logging
import sys
import time
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Any, Dict, Iterator, Optional
import uuid

_run_id: Optional[str] = None


def set_run_id(run_id: Optional[str] = None) -> str:
    """Set the run ID attached to every subsequent record.

    Args:
        run_id: Identifier to use; a fresh UUID4 when omitted

    Returns:
        The active run ID
    """
    global _run_id
    if run_id is not None and (not isinstance(run_id, str) or not run_id):
        raise ValueError("run_id must be a non-empty string")
    _run_id = run_id or str(uuid.uuid4())
    return _run_id


def get_run_id() -> Optional[str]:
    return _run_id


class StructuredLogger:
    """JSON structured logger.

    Features:
    - JSON-formatted log entries for machine parsing
    - Run ID tracking across pipeline stages
    - Automatic timestamp and logger name inclusion
    - Integration with Python logging framework

    Examples:
        >>> log = StructuredLogger(__name__)
        >>> log.info("Boroughs detected", count=2, largest=27)
        # Output: {"timestamp": "...", "level": "INFO", "message": "...", ...}
    """

    def __init__(self, name: str) -> None:
        """Initialize structured logger.

        Args:
            name: Logger name (typically __name__)
        """
        self.logger = logging.getLogger(name)
        self.logger.propagate = True

    def _build_log_entry(
        self,
        level: str,
        message: str,
        **kwargs,
    ) -> str:
        """Build JSON structured log entry.

        Args:
            level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
            message: Log message
            **kwargs: Additional fields to include in log

        Returns:
            JSON-formatted log entry string
        """
        entry: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": level,
            "message": message,
            "logger": self.logger.name,
            "run_id": _run_id,
        }

        entry.update(kwargs)

        try:
            return json.dumps(entry, default=str, sort_keys=True)
        except (TypeError, ValueError) as e:
            entry_safe = {
                "timestamp": entry["timestamp"],
                "level": level,
                "message": message,
                "logger": entry["logger"],
                "run_id": entry["run_id"],
                "json_error": str(e),
            }
            return json.dumps(entry_safe, sort_keys=True)

    def debug(self, message: str, **kwargs) -> None:
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.debug(self._build_log_entry("DEBUG", message, **kwargs))

    def info(self, message: str, **kwargs) -> None:
        if self.logger.isEnabledFor(logging.INFO):
            self.logger.info(self._build_log_entry("INFO", message, **kwargs))

    def warning(self, message: str, **kwargs) -> None:
        self.logger.warning(self._build_log_entry("WARNING", message, **kwargs))

    def error(self, message: str, **kwargs) -> None:
        self.logger.error(self._build_log_entry("ERROR", message, **kwargs))

    def critical(self, message: str, **kwargs) -> None:
        self.logger.critical(self._build_log_entry("CRITICAL", message, **kwargs))

    @contextmanager
    def stage(self, name: str, **kwargs) -> Iterator[Dict[str, Any]]:
        """Log completion of a pipeline stage with elapsed milliseconds.

        The yielded dict may be filled with result fields inside the block;
        they are merged into the completion record.

        Examples:
            >>> with log.stage("boroughs") as out:
            ...     out["count"] = len(found)
        """
        fields: Dict[str, Any] = {}
        start = time.perf_counter()
        yield fields
        elapsed_ms = round((time.perf_counter() - start) * 1000.0, 3)
        self.info(
            f"stage {name} finished",
            event_type="STAGE",
            stage=name,
            elapsed_ms=elapsed_ms,
            **kwargs,
            **fields,
        )


def get_logger(name: str) -> StructuredLogger:
    """Get configured structured logger instance.

    Args:
        name: Logger name (typically __name__)

    Returns:
        StructuredLogger instance
    """
    return StructuredLogger(name)


def configure_logging(level: str = "WARNING") -> None:
    """Install a single stderr handler on the package logger.

    Records are already JSON, so the handler prints the message verbatim.
    """
    package_logger = logging.getLogger("closecomm")
    for handler in list(package_logger.handlers):
        if getattr(handler, "_closecomm", False):
            package_logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    handler._closecomm = True  # type: ignore[attr-defined]
    package_logger.addHandler(handler)
    package_logger.setLevel(level.upper())
