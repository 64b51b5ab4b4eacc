"""Evaluation command for blaschkectl.

Commands:
- blaschke eval logB: log|B| of a zero set
- blaschke eval HLambda: H_Λ of a zero set
- blaschke eval hQ: harmonic measure of the projection of a Whitney square
- blaschke eval kernel: the Poisson kernel at a boundary angle

Writes eval.csv with columns re,im,value; -inf is written as the literal string.
"""

from typing import Optional

import click
import numpy as np

from ..blaschke import ZeroSet, log_modulus_many
from ..context import BlaschkeCliContext
from ..errors import BlaschkeError, DomainError, ParseError
from ..formatting import build_eval_panel
from ..harmonic import H_Lambda_fn, h_Q_many, poisson_kernel_many
from ..hypgeo import WhitneySquare
from ..options import apply_options, depth_option, output_option, per_square_option, run_options
from ..output import write_csv
from ..transformers import load_points, parse_point_flags, square_grid
from .base import fail, finish_run, start_run, zeros_from_options

QUANTITIES = ("logB", "HLambda", "hQ", "kernel")
EVAL_CSV = "eval.csv"


def parse_square(text: str) -> WhitneySquare:
    """``k,j`` from the --square flag."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) != 2:
            raise ValueError
        return WhitneySquare(int(parts[0]), int(parts[1]))
    except (ValueError, DomainError):
        raise ParseError(f"--square expects k,j with k >= 1 and 0 <= j < 2^k, got {text!r}")


def evaluate_quantity(
    what: str,
    points: np.ndarray,
    zeros: Optional[ZeroSet] = None,
    square: Optional[WhitneySquare] = None,
    theta: float = 0.0,
) -> np.ndarray:
    """Values of one quantity at ``points``.

    Raises:
        ParseError: If the quantity's input (zeros or square) is missing.
    """
    if what in ("logB", "HLambda"):
        if zeros is None:
            raise ParseError(f"{what} needs a zero set (--zeros FILE or --zero re,im[,mult])")
        if what == "logB":
            return log_modulus_many(zeros, points)
        return H_Lambda_fn(zeros)(points)
    if what == "hQ":
        if square is None:
            raise ParseError("hQ needs --square k,j")
        return h_Q_many(square, points)
    return poisson_kernel_many(points, np.array([theta]))[:, 0]


def _grid(cli_ctx: BlaschkeCliContext, p: dict) -> np.ndarray:
    if p["points"] and p["point"]:
        raise ParseError("give either --points or --point, not both")
    if p["points"]:
        return load_points(p["points"])
    if p["point"]:
        return parse_point_flags(tuple(p["point"]))
    with cli_ctx.status("Sampling Whitney squares..."):
        return square_grid(p["depth"], p["per_square"])


@click.command(name="eval")
@click.argument("what", type=click.Choice(QUANTITIES))
@click.option("--zeros", type=click.Path(exists=True, dir_okay=False), help="ZeroSet JSON file.")
@click.option("--zero", multiple=True, help="Zero as re,im[,mult]; repeatable.")
@click.option("--square", default=None, help="Whitney square k,j (for hQ).")
@click.option("--theta", type=float, default=0.0, show_default=True, help="Kernel angle.")
@click.option("--points", type=click.Path(exists=True, dir_okay=False), help="Point list JSON.")
@click.option("--point", multiple=True, help="Evaluation point re,im; repeatable.")
@depth_option(default=6)
@per_square_option
@run_options
@output_option
@click.pass_context
def eval_command(
    ctx: click.Context,
    what: str,
    zeros: Optional[str],
    zero: tuple[str, ...],
    square: Optional[str],
    theta: float,
    points: Optional[str],
    point: tuple[str, ...],
    depth: int,
    per_square: int,
    out,
    seed,
    config,
    output,
) -> None:
    """Evaluate a quantity on a point list or on Whitney-square samples.

    Without --points/--point the grid is --per-square samples of every square up to
    --depth.

    \b
    Examples:
      blaschke eval logB --zero 0.5,0 --point 0,0
      blaschke eval kernel --theta 0 --depth 4 --per-square 8
    """
    cli_ctx = apply_options(ctx, output=output, out=out, seed=seed, config=config)
    params = {
        "what": what,
        "zeros": zeros,
        "zero": zero,
        "square": square,
        "theta": theta,
        "points": points,
        "point": point,
        "depth": depth,
        "per_square": per_square,
    }
    try:
        run = start_run(ctx, cli_ctx, f"eval.{what}", params)
        p = run.params
        zero_set = zeros_from_options(p["zeros"], tuple(p["zero"]), required=False)
        cell = parse_square(p["square"]) if p["square"] else None
        grid = _grid(cli_ctx, p)
        values = evaluate_quantity(what, grid, zero_set, cell, p["theta"])
        write_csv(
            run.path(EVAL_CSV),
            ["re", "im", "value"],
            ([z.real, z.imag, v] for z, v in zip(grid, values)),
        )
        finish_run(cli_ctx, run, [EVAL_CSV])
    except BlaschkeError as e:
        fail(cli_ctx, e, f"eval {what}")

    if cli_ctx.is_structured_output():
        finite = values[np.isfinite(values)]
        data = {
            "what": what,
            "points": int(values.size),
            "min": float(np.min(finite)) if finite.size else None,
            "max": float(np.max(finite)) if finite.size else None,
            "non_finite": int(values.size - finite.size),
            "outputs": [EVAL_CSV],
        }
        cli_ctx.render_structured(data, "blaschke.eval.summary/v1")
    else:
        cli_ctx.console.print(build_eval_panel(what, values, str(run.path(EVAL_CSV))))
