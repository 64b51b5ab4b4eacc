"""Exit codes for blaschkectl.

The contract is exhaustive: every command exits with one of these four values.
"""

from enum import IntEnum


class ExitCode(IntEnum):
    """Standard exit codes for the CLI."""

    SUCCESS = 0
    """Command completed successfully."""

    VERIFICATION_FAILED = 1
    """A verification suite reported a failing property."""

    USAGE_ERROR = 2
    """Invalid arguments, parameters or input files."""

    SOLVER_FAILURE = 3
    """The LP solver failed to produce a verified optimum."""


# Exit code descriptions for help text
EXIT_CODE_DESCRIPTIONS = {
    ExitCode.SUCCESS: "Operation completed successfully",
    ExitCode.VERIFICATION_FAILED: "At least one verified property failed",
    ExitCode.USAGE_ERROR: "Invalid command usage, parameters or input files",
    ExitCode.SOLVER_FAILURE: "Linear program could not be solved to a verified optimum",
}
