"""Exception hierarchy and centralized CLI error handling.

Library code raises the exceptions below; the command layer translates them into
user-facing messages and exit codes through ``handle_cli_error``.
"""

from typing import Optional

from rich.console import Console

from .exit_codes import ExitCode


class BlaschkeError(Exception):
    """Base class for all blaschkectl errors."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


# ==================== Input Errors ====================


class InputError(BlaschkeError):
    """Invalid parameters or inputs."""


class DomainError(InputError):
    """A value lies outside the domain of an operation (e.g. |z| >= 1)."""


class CentralCellError(DomainError):
    """A point with |z| < 1/2 was given where a dyadic square is required."""


class ParseError(InputError):
    """A file or config value could not be parsed."""

    def __init__(self, message: str, source: Optional[str] = None):
        super().__init__(message)
        self.source = source


class PreconditionError(InputError):
    """An operation's hypothesis does not hold for the given inputs."""


class ConstructionError(BlaschkeError):
    """A constructive search ran out of input or candidates."""


# ==================== Solver and Verification ====================


class SolverError(BlaschkeError):
    """The linear-programming solver did not reach a verified optimum."""

    def __init__(self, message: str, status: Optional[str] = None):
        super().__init__(message)
        self.status = status


class VerificationError(BlaschkeError):
    """A verification property failed."""

    def __init__(self, message: str, failing: Optional[list[str]] = None):
        super().__init__(message)
        self.failing = failing or []


# ==================== CLI Translation ====================


def handle_cli_error(e: Exception, console: Console, context: str = "") -> int:
    """Handle an exception and return the appropriate exit code.

    Args:
        e: The exception to handle
        console: Rich console for output
        context: Optional context string for better error messages

    Returns:
        The exit code to use
    """
    prefix = f"{context}: " if context else ""

    if isinstance(e, VerificationError):
        names = ", ".join(e.failing) if e.failing else "unknown property"
        console.print(f"[red]{prefix}Verification failed ({names}): {e.message}[/red]")
        return ExitCode.VERIFICATION_FAILED

    elif isinstance(e, SolverError):
        status = f" [{e.status}]" if e.status else ""
        console.print(f"[red]{prefix}Solver failure{status}: {e.message}[/red]")
        return ExitCode.SOLVER_FAILURE

    elif isinstance(e, ParseError):
        where = f" in {e.source}" if e.source else ""
        console.print(f"[red]{prefix}Could not parse input{where}: {e.message}[/red]")
        return ExitCode.USAGE_ERROR

    elif isinstance(e, PreconditionError):
        console.print(f"[red]{prefix}Precondition not met: {e.message}[/red]")
        return ExitCode.USAGE_ERROR

    elif isinstance(e, InputError):
        console.print(f"[red]{prefix}Invalid input: {e.message}[/red]")
        return ExitCode.USAGE_ERROR

    elif isinstance(e, ConstructionError):
        console.print(f"[yellow]{prefix}Construction stopped: {e.message}[/yellow]")
        return ExitCode.USAGE_ERROR

    elif isinstance(e, BlaschkeError):
        console.print(f"[red]{prefix}{e.message}[/red]")
        return ExitCode.USAGE_ERROR

    elif isinstance(e, (ValueError, OSError)):
        console.print(f"[red]{prefix}{e}[/red]")
        return ExitCode.USAGE_ERROR

    else:
        console.print(f"[red]{prefix}Unexpected error: {e}[/red]")
        return ExitCode.SOLVER_FAILURE
