"""Helpers shared by the command modules."""

import logging
import sys
from typing import Any, NoReturn, Optional

import click

from ..blaschke import ZeroSet
from ..config import RunConfig, resolve_run
from ..context import BlaschkeCliContext
from ..errors import ParseError, handle_cli_error
from ..transformers import load_zeros, parse_zero_flag

logger = logging.getLogger(__name__)


def fail(cli_ctx: BlaschkeCliContext, exc: Exception, label: str) -> NoReturn:
    """Report ``exc`` on stderr and exit with its mapped exit code."""
    logger.debug("%s failed", label, exc_info=exc)
    sys.exit(handle_cli_error(exc, cli_ctx.err_console, label))


def start_run(
    ctx: click.Context, cli_ctx: BlaschkeCliContext, command: str, params: dict[str, Any]
) -> RunConfig:
    run = resolve_run(ctx, cli_ctx, command, params)
    run.out_dir.mkdir(parents=True, exist_ok=True)
    return run


def finish_run(cli_ctx: BlaschkeCliContext, run: RunConfig, outputs: list[str]) -> None:
    """Write the manifest last, so a manifest implies complete outputs."""
    run.write_manifest(outputs)
    logger.info("wrote %s to %s", ", ".join(sorted(outputs)), run.out_dir)


def zeros_from_options(
    zeros_file: Optional[str], zero_flags: tuple[str, ...], required: bool = True
) -> Optional[ZeroSet]:
    """A zero set from ``--zeros FILE`` or repeated ``--zero re,im[,mult]`` flags.

    Raises:
        ParseError: If both or (when required) neither are given.
    """
    if zeros_file and zero_flags:
        raise ParseError("give either --zeros or --zero, not both")
    if zeros_file:
        return load_zeros(zeros_file)
    if zero_flags:
        return ZeroSet.from_entries(
            (parse_zero_flag(text) for text in zero_flags), allow_origin=True
        )
    if required:
        raise ParseError("a zero set is required (--zeros FILE or --zero re,im[,mult])")
    return None
