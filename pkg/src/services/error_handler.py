"""
Error handling for the command-line surface.

Exceptions raised by the laboratory services are turned into exit codes and a
structured log event; nothing is retried, since every operation is deterministic.
"""

from typing import Any, Dict

import structlog

from src.utils.exceptions import (
    BudgetExceededError,
    CertificateError,
    FormatError,
    GraphMismatchError,
    InvalidParameterError,
    PatternTooLargeError,
    WsatException,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class ErrorHandler:
    """Map laboratory errors to exit codes"""

    def __init__(self):
        """Initialize the error handler"""
        self.logger = structlog.get_logger()

    def handle_usage_error(self, error: WsatException, context: Dict[str, Any]) -> int:
        """
        Handle errors caused by the invocation itself.

        Args:
            error: Parameter, format or graph consistency error
            context: Subcommand and arguments being processed

        Returns:
            The usage exit code
        """
        self.logger.error(
            "Invalid input",
            error_code=error.error_code,
            error=error.message,
            context=context,
        )
        return EXIT_USAGE

    def handle_budget_error(self, error: BudgetExceededError, context: Dict[str, Any]) -> int:
        """
        Handle an exhausted search budget.

        Args:
            error: The budget error, carrying the last fully explored edge count
            context: Subcommand and arguments being processed

        Returns:
            The internal-error exit code
        """
        self.logger.error(
            "Search budget exhausted",
            budget=error.budget,
            last_completed_m=error.last_completed_m,
            context=context,
            action="raise --budget or shrink the host",
        )
        return EXIT_INTERNAL

    def handle_certificate_error(self, error: CertificateError, context: Dict[str, Any]) -> int:
        self.logger.error("Certificate failed", error_code=error.error_code, error=error.message, context=context)
        return EXIT_INTERNAL

    def handle_internal_error(self, error: Exception, context: Dict[str, Any]) -> int:
        self.logger.exception("Unhandled exception", error=str(error), context=context)
        return EXIT_INTERNAL

    def handle(self, error: Exception, context: Dict[str, Any]) -> int:
        """
        Dispatch an exception to its handler.

        Args:
            error: The exception that escaped a subcommand
            context: Subcommand and arguments being processed

        Returns:
            Process exit code: 2 for usage errors, 3 otherwise
        """
        if isinstance(error, (InvalidParameterError, FormatError, GraphMismatchError, PatternTooLargeError)):
            return self.handle_usage_error(error, context)
        if isinstance(error, BudgetExceededError):
            return self.handle_budget_error(error, context)
        if isinstance(error, CertificateError):
            return self.handle_certificate_error(error, context)
        if isinstance(error, WsatException):
            return self.handle_usage_error(error, context)
        return self.handle_internal_error(error, context)
