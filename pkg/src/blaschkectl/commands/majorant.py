"""Majorant sweep command for blaschkectl.

Commands:
- blaschke majorant: minimal majorant mass of -log|B| on the filtered set, per depth

Writes sweep.csv (depth,count,mass,runtime_ms) and classification.txt. With
--constraints FILE it instead solves one constraint set and writes solve.json.
"""

from typing import Optional

import click

from ..config import RunConfig
from ..const import DEFAULT_GRID_N, Classification
from ..context import BlaschkeCliContext
from ..errors import BlaschkeError
from ..formatting import build_classification_panel, create_sweep_table, format_number
from ..majorant import SweepRow, majorant_diagnostic, min_mass, wep_gap
from ..options import INT_LIST, apply_options, output_option, per_square_option, run_options
from ..output import atomic_write, write_csv, write_json
from ..transformers import load_constraints, parse_h_spec
from .base import fail, finish_run, start_run, zeros_from_options

SWEEP_CSV = "sweep.csv"
CLASSIFICATION_TXT = "classification.txt"
SOLVE_JSON = "solve.json"


@click.command(name="majorant")
@click.option("--zeros", type=click.Path(exists=True, dir_okay=False), help="ZeroSet JSON file.")
@click.option("--zero", multiple=True, help="Zero as re,im[,mult]; repeatable.")
@click.option("--h", default="const:1", show_default=True, help="H spec of the filter level.")
@click.option(
    "--depths",
    type=INT_LIST,
    default="6,8,10,12",
    show_default=True,
    help="Strictly increasing comma-separated depths.",
)
@per_square_option
@click.option("--grid-n", type=click.IntRange(min=1), default=DEFAULT_GRID_N, show_default=True)
@click.option(
    "--scale",
    type=click.FloatRange(min=0.0, min_open=True),
    default=1.0,
    show_default=True,
    help="Filter at scale·H.",
)
@click.option("--wep", is_flag=True, help="Treat H as H1 and report the WEP gap sweep.")
@click.option("--timings", is_flag=True, help="Record runtime_ms (not reproducible).")
@click.option(
    "--constraints",
    type=click.Path(exists=True, dir_okay=False),
    help="Solve one ConstraintSet file instead of sweeping.",
)
@run_options
@output_option
@click.pass_context
def majorant_command(
    ctx: click.Context,
    zeros: Optional[str],
    zero: tuple[str, ...],
    h: str,
    depths: list[int],
    per_square: int,
    grid_n: int,
    scale: float,
    wep: bool,
    timings: bool,
    constraints: Optional[str],
    out,
    seed,
    config,
    output,
) -> None:
    """Sweep the minimal majorant mass over depths and classify the sequence.

    The classification line reads bounded, growth or inconclusive. Compare --scale 1
    with --scale 1+η0 on a thm5b zero set to see the dichotomy.

    \b
    Examples:
      blaschke majorant --zeros runs/b/zeros.json --h atom:0:4 --scale 1
      blaschke majorant --zeros runs/b/zeros.json --h atom:0:4 --scale 2
    """
    cli_ctx = apply_options(ctx, output=output, out=out, seed=seed, config=config)
    if timings:
        cli_ctx.timings = True
    params = {
        "zeros": zeros,
        "zero": zero,
        "h": h,
        "depths": depths,
        "per_square": per_square,
        "grid_n": grid_n,
        "scale": scale,
        "wep": wep,
        "constraints": constraints,
    }
    try:
        run = start_run(ctx, cli_ctx, "majorant", params)
        p = run.params
        if p["constraints"]:
            _solve_one(cli_ctx, run, p)
            return

        depth_list = list(p["depths"])
        zero_set = zeros_from_options(p["zeros"], tuple(p["zero"]))
        level = parse_h_spec(p["h"], zero_set)

        def progress(row: SweepRow) -> None:
            if not cli_ctx.quiet and not cli_ctx.is_structured_output():
                cli_ctx.err_console.print(
                    f"[dim]depth={row.depth} count={row.count} mass={row.mass:.12g}[/dim]"
                )

        common = dict(
            per_square=p["per_square"],
            grid_n=p["grid_n"],
            seed=run.seed,
            timings=cli_ctx.timings,
            progress=progress,
        )
        if p["wep"]:
            record = wep_gap(zero_set, level, depth_list, **common)
        else:
            record = majorant_diagnostic(zero_set, level, depth_list, scale=p["scale"], **common)

        write_csv(
            run.path(SWEEP_CSV),
            ["depth", "count", "mass", "runtime_ms"],
            ([r.depth, r.count, r.mass, r.runtime_ms] for r in record.rows),
        )
        atomic_write(run.path(CLASSIFICATION_TXT), record.classification.value + "\n")
        finish_run(cli_ctx, run, [SWEEP_CSV, CLASSIFICATION_TXT])
    except BlaschkeError as e:
        fail(cli_ctx, e, "majorant")

    if not record.is_monotone():
        cli_ctx.warn("mass sequence is not monotone; check solver tolerances")
    if record.classification == Classification.INCONCLUSIVE:
        cli_ctx.warn("sweep is inconclusive; add depths or samples per square")
    if cli_ctx.is_structured_output():
        data = {
            "classification": record.classification.value,
            "growth_exponent": record.growth_exponent,
            "scale": p["scale"],
            "wep": p["wep"],
            "rows": [
                {"depth": r.depth, "count": r.count, "mass": r.mass, "runtime_ms": r.runtime_ms}
                for r in record.rows
            ],
            "outputs": [CLASSIFICATION_TXT, SWEEP_CSV],
        }
        cli_ctx.render_structured(data, "blaschke.majorant.sweep/v1")
    else:
        title = "WEP Gap" if p["wep"] else "Minimal Majorant Mass"
        cli_ctx.console.print(create_sweep_table(record, title))
        cli_ctx.console.print(build_classification_panel(record, p["scale"]))


def _solve_one(cli_ctx: BlaschkeCliContext, run: RunConfig, p: dict) -> None:
    cset = load_constraints(p["constraints"])
    with cli_ctx.status("Solving..."):
        report = min_mass(cset, p["grid_n"]).require_optimal()
    data = {
        "optimal_mass": report.optimal_mass,
        "status": report.status.value,
        "grid_size": report.grid_size,
        "pivots": report.pivots,
        "rounds": report.rounds,
        "duality_gap": report.duality_gap,
        "min_slack": report.min_slack,
        "measure": report.measure.to_dict(),
    }
    write_json(run.path(SOLVE_JSON), data)
    finish_run(cli_ctx, run, [SOLVE_JSON])
    if cli_ctx.is_structured_output():
        cli_ctx.render_structured(data, "blaschke.majorant.solve/v1")
    else:
        cli_ctx.renderer.render_success(
            f"optimal mass {format_number(report.optimal_mass, 12)} "
            f"({len(cset)} constraints, {report.grid_size} angles)"
        )
