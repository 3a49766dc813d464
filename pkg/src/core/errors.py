"""Toolkit exception hierarchy mapped onto CLI exit codes and record statuses."""

from typing import Any

EXIT_OK = 0
EXIT_CLAIM_VIOLATION = 1
EXIT_INVALID_INPUT = 2
EXIT_PRECISION_EXHAUSTED = 3


class ToolkitError(Exception):
    """Base exception for toolkit errors.

    Raise subclasses for conditions the CLI should report with a specific
    status and exit code instead of a traceback.
    """

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_INVALID_INPUT,
        error_type: str = "invalid-input",
        details: list[dict[str, Any]] | None = None,
    ) -> None:
        """Initialize toolkit error.

        Args:
            message: Human-readable error message.
            exit_code: Process exit code to return.
            error_type: Record status for machine consumers.
            details: Optional additional error details.
        """
        self.message = message
        self.exit_code = exit_code
        self.error_type = error_type
        self.details = details
        super().__init__(message)


class InvalidInputError(ToolkitError):
    """Parameters outside the domain of an operation."""

    def __init__(self, message: str = "Invalid input", details: list[dict[str, Any]] | None = None) -> None:
        super().__init__(
            message=message,
            exit_code=EXIT_INVALID_INPUT,
            error_type="invalid-input",
            details=details,
        )


class PreconditionError(InvalidInputError):
    """An operation was called outside its stated preconditions (e.g. LTE)."""


class InapplicableBoundError(InvalidInputError):
    """A closed-form bound was requested outside the region where it is asserted."""


class ClaimViolationError(ToolkitError):
    """A computation contradicted a published claim."""

    def __init__(self, message: str = "Published claim contradicted", details: list[dict[str, Any]] | None = None) -> None:
        super().__init__(
            message=message,
            exit_code=EXIT_CLAIM_VIOLATION,
            error_type="claim-violation",
            details=details,
        )


class ValuationCapExceededError(ClaimViolationError):
    """nu_p(b^e - 1) reached the configured cap without being resolved."""

    def __init__(self, base: int, exponent: int, p: int, cap: int) -> None:
        super().__init__(
            message=f"nu_{p}({base}^{exponent} - 1) >= {cap}: valuation cap exceeded",
            details=[{"base": base, "exponent": exponent, "p": p, "cap": cap}],
        )
        self.cap = cap


class PrecisionExhaustedError(ToolkitError):
    """An interval comparison stayed undecided at the precision cap."""

    def __init__(self, message: str = "Precision cap exhausted", cap_bits: int = 0) -> None:
        super().__init__(
            message=message,
            exit_code=EXIT_PRECISION_EXHAUSTED,
            error_type="precision-exhausted",
            details=[{"cap_bits": cap_bits}],
        )
        self.cap_bits = cap_bits
