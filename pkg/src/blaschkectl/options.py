"""Shared CLI option decorators for flexible option placement.

The run flags (--out, --seed, --config) and --output are accepted both on the
root group and on every command, so they can be placed anywhere:

    blaschke --out runs/a gen thm5b --eta 0.5
    blaschke gen thm5b --eta 0.5 --out runs/a

Usage:
    from ..options import apply_options, output_option, run_options

    @gen_group.command(name="family")
    @run_options
    @output_option
    @click.pass_context
    def gen_family(ctx, out, seed, config, output, ...):
        cli_ctx = apply_options(ctx, output=output, out=out, seed=seed, config=config)
"""

import functools
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

import click

from ._coercion import coerce_int_list
from .const import DEFAULT_PER_SQUARE
from .context import BlaschkeCliContext, get_cli_context

F = TypeVar("F", bound=Callable[..., Any])


class IntListParamType(click.ParamType):
    """Comma-separated integers from a flag, or a list from a config file."""

    name = "ints"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]):
        try:
            return coerce_int_list(value)
        except (TypeError, ValueError):
            self.fail(f"expected comma-separated integers, got {value!r}", param, ctx)


INT_LIST = IntListParamType()


# ==================== Option Value Resolution ====================


def get_effective_value(
    ctx: click.Context,
    local_value: Any,
    attr_name: str,
    default: Any = None,
) -> Any:
    """Get the effective option value with proper precedence.

    Precedence (highest to lowest):
    1. Local value (if not None) - explicitly passed to this command
    2. Parent context value - from BlaschkeCliContext in a parent
    3. Default value
    """
    if local_value is not None:
        return local_value

    current: Optional[click.Context] = ctx
    while current is not None:
        if isinstance(current.obj, BlaschkeCliContext):
            parent_value = getattr(current.obj, attr_name, None)
            if parent_value is not None:
                return parent_value
        current = current.parent

    return default


def apply_options(
    ctx: click.Context,
    *,
    output: Optional[str] = None,
    out: Optional[Path] = None,
    seed: Optional[int] = None,
    config: Optional[Path] = None,
) -> BlaschkeCliContext:
    """Apply local option values to the CLI context; None inherits from the root group.

    Returns:
        The updated BlaschkeCliContext
    """
    cli_ctx = get_cli_context(ctx)

    if output is not None:
        cli_ctx.output_format = output
        cli_ctx._renderer = None
    elif cli_ctx.output_format is None:
        cli_ctx.output_format = "table"

    if out is not None:
        cli_ctx.out_dir = Path(out)
    if seed is not None:
        cli_ctx.seed = seed
    if config is not None:
        cli_ctx.config_path = Path(config)

    return cli_ctx


# ==================== Option Decorators ====================


def output_option(func: F) -> F:
    """Add --output/-o to a command."""

    @click.option(
        "--output",
        "-o",
        type=click.Choice(["table", "json", "yaml", "text"]),
        default=None,
        help="Console output format.",
    )
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        return func(*args, **kwargs)

    return wrapper  # type: ignore[return-value]


def out_option(func: F) -> F:
    """Add --out DIR (artifact directory) to a command."""

    @click.option(
        "--out",
        type=click.Path(file_okay=False, path_type=Path),
        default=None,
        help="Directory for output artifacts and manifest.json.",
    )
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        return func(*args, **kwargs)

    return wrapper  # type: ignore[return-value]


def seed_option(func: F) -> F:
    """Add --seed N to a command."""

    @click.option("--seed", type=int, default=None, help="Random seed (default 0).")
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        return func(*args, **kwargs)

    return wrapper  # type: ignore[return-value]


def config_option(func: F) -> F:
    """Add --config FILE (flat key = value settings) to a command."""

    @click.option(
        "--config",
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        default=None,
        help="Config file of key = value lines; flags override its values.",
    )
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        return func(*args, **kwargs)

    return wrapper  # type: ignore[return-value]


def depth_option(default: int) -> Callable[[F], F]:
    """Add --depth K with a command-specific default."""

    def decorator(func: F) -> F:
        return click.option(
            "--depth",
            type=click.IntRange(min=1),
            default=default,
            show_default=True,
            help="Deepest Whitney level sampled.",
        )(func)

    return decorator


def per_square_option(func: F) -> F:
    """Add --per-square M to a command."""
    return click.option(
        "--per-square",
        type=click.IntRange(min=1),
        default=DEFAULT_PER_SQUARE,
        show_default=True,
        help="Quasi-random samples per Whitney square.",
    )(func)


# ==================== Combined Decorators ====================


def run_options(func: F) -> F:
    """Apply --out, --seed and --config."""
    return out_option(seed_option(config_option(func)))
