"""The ``blaschke`` root group: global flags, logging setup and command registration."""

import logging
import sys
from pathlib import Path
from typing import Optional

import click
import numpy as np
import scipy

from .commands import eval_command, gen_group, majorant_command, verify_command
from .config import tool_version
from .context import create_cli_context

_LOGGER = logging.getLogger(__name__)


# ==================== Version Info ====================


def _get_version_info() -> str:
    """Build version string with Python, numpy and scipy versions."""
    python_version = f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}"
    return (
        f"%(prog)s {tool_version()}\nPython {python_version}\n"
        f"numpy {np.__version__}\nscipy {scipy.__version__}"
    )


# ==================== Main CLI Group ====================


@click.group(invoke_without_command=True)
@click.option(
    "--debug",
    is_flag=True,
    help="Enable debug logging.",
)
@click.option(
    "--verbose",
    "-v",
    is_flag=True,
    help="Log progress (per-depth sweep rows) at INFO level.",
)
@click.option(
    "--quiet",
    "-q",
    is_flag=True,
    help="Suppress non-essential output.",
)
@click.option(
    "--no-color",
    is_flag=True,
    help="Disable colored output.",
)
@click.option(
    "--output",
    "-o",
    type=click.Choice(["table", "json", "yaml", "text"]),
    default=None,
    help="Console output format (default 'table').",
)
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directory for output artifacts (default ./out).",
)
@click.option("--seed", type=int, default=None, help="Random seed (default 0).")
@click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Config file of key = value lines; flags override its values.",
)
@click.option("--timings", is_flag=True, help="Record wall-clock runtime_ms in sweeps.")
@click.version_option(message=_get_version_info())
@click.pass_context
def cli(
    ctx: click.Context,
    debug: bool,
    verbose: bool,
    quiet: bool,
    no_color: bool,
    output: Optional[str],
    out: Optional[Path],
    seed: Optional[int],
    config: Optional[Path],
    timings: bool,
):
    """Blaschke products: zero-set constructions, majorants and verification.

    Build zero sets, evaluate log|B| and harmonic measures, sweep minimal
    majorant masses and run the verification suites. Use --help with any
    command for more information.
    """
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    ctx.obj = create_cli_context(
        debug=debug,
        verbose=verbose,
        output_format=output or "table",
        quiet=quiet,
        no_color=no_color,
        out_dir=out,
        seed=seed,
        config_path=config,
        timings=timings,
    )
    _LOGGER.debug("global options: output=%s out=%s seed=%s", output, out, seed)

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


# ==================== Register Commands ====================

cli.add_command(gen_group, name="gen")
cli.add_command(eval_command, name="eval")
cli.add_command(majorant_command, name="majorant")
cli.add_command(verify_command, name="verify")


# ==================== Entry Point ====================


def main():
    cli()


if __name__ == "__main__":
    main()
