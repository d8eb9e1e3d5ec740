"""Error handling with error codes and process exit codes.

Provides consistent error handling across the library and CLI with:
- Specific error codes for programmatic handling
- Categories that map onto CLI exit codes
- Structured error details (offending line, scope, partial results)
- Logging integration

Exit codes:
- 0: success
- 1: parse or argument error
- 2: resource budget exceeded
- 3: internal invariant violation
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

logger = logging.getLogger(__name__)


class ErrorCategory(str, Enum):
    """Error categories for classification and handling."""

    # Argument and precondition errors
    VALIDATION = "VALIDATION"
    # Input file and format errors
    PARSE = "PARSE"
    # Cycle cap or branch budget exhausted
    RESOURCE = "RESOURCE"
    # A checked structural invariant failed
    INVARIANT = "INVARIANT"
    # Configuration errors
    CONFIG = "CONFIG"
    # Anything unexpected
    SYSTEM = "SYSTEM"


@dataclass
class ErrorCode:
    """Error code with severity, category and CLI exit code."""

    code: str
    category: ErrorCategory
    exit_code: int
    message: str
    severity: str  # INFO, WARNING, ERROR, CRITICAL


class ApplicationError(Exception):
    """Base application error with error code tracking.

    All library errors inherit from this class so the CLI can map any of
    them onto an exit code and a one-line message.
    """

    ERROR_CODES: Dict[str, ErrorCode] = {
        "VAL_001": ErrorCode(
            code="VAL_001",
            category=ErrorCategory.VALIDATION,
            exit_code=1,
            message="Invalid argument",
            severity="WARNING",
        ),
        "PARSE_001": ErrorCode(
            code="PARSE_001",
            category=ErrorCategory.PARSE,
            exit_code=1,
            message="Malformed input line",
            severity="WARNING",
        ),
        "INPUT_001": ErrorCode(
            code="INPUT_001",
            category=ErrorCategory.PARSE,
            exit_code=1,
            message="Input file cannot be read",
            severity="WARNING",
        ),
        "CONF_001": ErrorCode(
            code="CONF_001",
            category=ErrorCategory.CONFIG,
            exit_code=1,
            message="Invalid configuration",
            severity="WARNING",
        ),
        "RES_001": ErrorCode(
            code="RES_001",
            category=ErrorCategory.RESOURCE,
            exit_code=2,
            message="Basic cycle cap exceeded",
            severity="ERROR",
        ),
        "RES_002": ErrorCode(
            code="RES_002",
            category=ErrorCategory.RESOURCE,
            exit_code=2,
            message="Branch budget exceeded, enumeration incomplete",
            severity="ERROR",
        ),
        "INV_001": ErrorCode(
            code="INV_001",
            category=ErrorCategory.INVARIANT,
            exit_code=3,
            message="Internal invariant violated",
            severity="CRITICAL",
        ),
        "SYS_001": ErrorCode(
            code="SYS_001",
            category=ErrorCategory.SYSTEM,
            exit_code=3,
            message="Internal error",
            severity="ERROR",
        ),
    }

    def __init__(
        self,
        error_code: str,
        message: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize application error.

        Args:
            error_code: Error code (e.g., 'VAL_001')
            message: Override default message if needed
            details: Additional error details
        """
        self.error_code = error_code
        self.details = details or {}

        if error_code in self.ERROR_CODES:
            self.error_def = self.ERROR_CODES[error_code]
        else:
            self.error_def = ErrorCode(
                code=error_code,
                category=ErrorCategory.SYSTEM,
                exit_code=3,
                message="Unknown error",
                severity="ERROR",
            )

        self.message = message or self.error_def.message
        self._init_args: Tuple[Any, ...] = (error_code, message, details)

        super().__init__(f"[{error_code}] {self.message}")

    def __reduce__(self):
        # Rebuild from constructor arguments, not the formatted message,
        # so errors raised in worker processes unpickle in the parent.
        return (type(self), self._init_args, self.__dict__.copy())

    @property
    def category(self) -> ErrorCategory:
        """Get error category."""
        return self.error_def.category

    @property
    def exit_code(self) -> int:
        """Get CLI exit code."""
        return self.error_def.exit_code

    @property
    def severity(self) -> str:
        """Get error severity."""
        return self.error_def.severity

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to a dictionary for JSON output."""
        return {
            "error_code": self.error_code,
            "message": self.message,
            "category": self.category.value,
            "details": {k: v for k, v in self.details.items() if k != "partial"},
        }

    def log_error(self, run_id: Optional[str] = None) -> None:
        """Log error with context.

        Args:
            run_id: Pipeline run identifier for tracing
        """
        log_data = {
            "error_code": self.error_code,
            "error_message": self.message,
            "category": self.category.value,
            "severity": self.severity,
            "details": {k: v for k, v in self.details.items() if k != "partial"},
        }

        if run_id:
            log_data["run_id"] = run_id

        if self.severity == "CRITICAL":
            logger.critical("Critical error occurred", extra=log_data)
        elif self.severity == "ERROR":
            logger.error("Error occurred", extra=log_data)
        elif self.severity == "WARNING":
            logger.warning("Warning occurred", extra=log_data)
        else:
            logger.info("Info message", extra=log_data)


class ValidationError(ApplicationError):
    """Argument or precondition error."""

    def __init__(
        self,
        message: Optional[str] = None,
        field: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize validation error.

        Args:
            message: Error message
            field: Argument that failed validation
            details: Additional details
        """
        super().__init__("VAL_001", message=message, details=details or {})
        self.field = field
        self._init_args = (message, field, details)
        if field:
            self.details["field"] = field


class GraphParseError(ApplicationError):
    """Malformed edge-list or pair-list line."""

    def __init__(
        self,
        line: int,
        reason: str,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(
            "PARSE_001",
            message=f"line {line}: {reason}",
            details=details or {},
        )
        self.line = line
        self._init_args = (line, reason, details)
        self.details["line"] = line


class InputFileError(ApplicationError):
    """Input file missing or unreadable."""

    def __init__(self, path: str, reason: str) -> None:
        super().__init__(
            "INPUT_001",
            message=f"{path}: {reason}",
            details={"path": path},
        )
        self._init_args = (path, reason)


class ConfigError(ApplicationError):
    """Settings or option values rejected by validation."""

    def __init__(self, reason: str, fields: Optional[Sequence[str]] = None) -> None:
        super().__init__(
            "CONF_001",
            message=f"Invalid configuration: {reason}",
            details={"fields": list(fields or [])},
        )
        self._init_args = (reason, fields)

    @classmethod
    def from_validation(cls, error: Any) -> "ConfigError":
        """Build from a pydantic ``ValidationError``."""
        problems = error.errors()
        fields = [".".join(str(p) for p in item["loc"]) for item in problems]
        reason = "; ".join(
            f"{field}: {item['msg']}" for field, item in zip(fields, problems)
        )
        return cls(reason, fields)


class CycleCapExceededError(ApplicationError):
    """More basic cycles than the configured cap."""

    def __init__(self, cap: int, details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(
            "RES_001",
            message=f"Basic cycle cap of {cap} exceeded",
            details=details or {},
        )
        self.cap = cap
        self._init_args = (cap, details)
        self.details["cycle_cap"] = cap


class EnumerationIncompleteError(ApplicationError):
    """Branch budget exhausted during 2-club enumeration.

    Attributes:
        scope: Scope whose enumeration stopped ("global" or a borough id)
        partial: 2-clubs collected before the budget ran out; these are
            NOT guaranteed complete and some may be non-maximal
        incomplete: always True, so partial results cannot pass for final ones
    """

    def __init__(
        self,
        scope: Any,
        budget: int,
        partial: Optional[Sequence[Any]] = None,
    ) -> None:
        super().__init__(
            "RES_002",
            message=f"Branch budget of {budget} exceeded in scope {scope}",
            details={"scope": scope, "branch_budget": budget},
        )
        self.scope = scope
        self.budget = budget
        self.partial: List[Any] = list(partial or [])
        self._init_args = (scope, budget, self.partial)
        self.incomplete = True
        self.details["partial_count"] = len(self.partial)
        self.details["partial"] = self.partial


class InvariantViolationError(ApplicationError):
    """A structural invariant checked at runtime does not hold."""

    def __init__(self, invariant: str, details: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(
            "INV_001",
            message=f"Invariant violated: {invariant}",
            details=details or {},
        )
        self.invariant = invariant
        self._init_args = (invariant, details)


def handle_error(
    error: Exception,
    context: Optional[Dict[str, Any]] = None,
) -> ApplicationError:
    """Convert any exception to ApplicationError for consistent handling.

    Args:
        error: Exception to convert
        context: Additional context

    Returns:
        ApplicationError instance
    """
    if isinstance(error, ApplicationError):
        return error

    logger.error(
        f"Unexpected error type: {type(error).__name__}",
        extra={"error": str(error), "context": context},
    )

    return ApplicationError(
        "SYS_001",
        message=f"{type(error).__name__}: {error}",
        details={"original_error": str(error), **context} if context else {},
    )
