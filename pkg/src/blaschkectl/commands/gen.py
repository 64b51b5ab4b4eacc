"""Construction commands for blaschkectl.

Commands:
- blaschke gen family: B(Λ, N) from separated points and multiplicities
- blaschke gen thm2: square weights and the harmonic function H for a zero set
- blaschke gen thm5a: multiple zeros separating two harmonic filter levels
- blaschke gen thm5b: the discriminating construction for a given H

Every subcommand writes zeros.json, log.jsonl and manifest.json to --out.
"""

from typing import Any, Optional

import click
import numpy as np

from ..blaschke import ZeroSet
from ..config import RunConfig
from ..const import DEFAULT_POINT_CAP, HQ_LOWER_BOUND_C, LEMMA3_GRID, Thinning
from ..constructions import (
    Check,
    ConstructionLog,
    ConstructionRecord,
    Thm5bParams,
    disjoint_threshold,
    family_blaschke,
    thm2_weights,
    thm5a_build,
    thm5b_build,
)
from ..context import BlaschkeCliContext, ensure_cli_context
from ..errors import BlaschkeError
from ..formatting import build_zeros_panel, create_log_table, format_bool, format_number
from ..harmonic import H_Lambda_fn
from ..hypgeo import WhitneySquare, whitney_index_many
from ..options import apply_options, depth_option, output_option, run_options
from ..output import write_csv, write_json, write_jsonl
from ..transformers import log_records, params_to_dict, parse_h_spec, zeros_to_dict
from .base import fail, finish_run, start_run, zeros_from_options

_ZEROS = "zeros.json"
_LOG = "log.jsonl"


@click.group(name="gen")
@click.pass_context
def gen_group(ctx: click.Context) -> None:
    """Build zero sets and their construction logs.

    \b
    Commands:
      family - B(Λ, N) from separated points with multiplicities
      thm2   - weights M̃_j and the function H for a zero set
      thm5a  - multiplicities tuned between two filter levels H1, H2
      thm5b  - zero set whose majorant exists at level H but not (1+η0)H

    \b
    Examples:
      blaschke gen family --zero 0.5,0 --zero 0,-0.5,3 --out runs/family
      blaschke gen thm5b --h atom:0:4 --eta0 1 --eta 0.5 --depth 14 --out runs/b
    """
    ensure_cli_context(ctx)


def _write_zero_artifacts(run: RunConfig, zeros: ZeroSet, log: ConstructionLog) -> list[str]:
    write_json(run.path(_ZEROS), zeros_to_dict(zeros))
    write_jsonl(run.path(_LOG), log_records(log))
    return [_ZEROS, _LOG]


def _show(
    cli_ctx: BlaschkeCliContext,
    schema: str,
    kind: str,
    zeros: ZeroSet,
    log: ConstructionLog,
    outputs: list[str],
    extra: dict[str, Any],
) -> None:
    if cli_ctx.is_structured_output():
        data = {
            "kind": kind,
            "zeros": zeros_to_dict(zeros)["zeros"],
            "log": log_records(log),
            "outputs": sorted(outputs),
            **extra,
        }
        cli_ctx.render_structured(data, schema)
        return
    if len(log):
        cli_ctx.console.print(create_log_table(log))
    shown = {k.replace("_", " ").capitalize(): str(v) for k, v in extra.items()}
    cli_ctx.console.print(build_zeros_panel(kind, zeros, outputs, shown))


# ==================== family ====================


def family_log(zeros: ZeroSet, eta: float, radius: float) -> ConstructionLog:
    """One record per point: level, H_Λ at the point and the disjointness check."""
    levels, sectors = whitney_index_many(zeros.array)
    h_lambda = H_Lambda_fn(zeros)(zeros.array)
    log = ConstructionLog()
    for z, n, k, j, h in zip(zeros.points, zeros.mults, levels, sectors, h_lambda):
        checks = {}
        if len(zeros) > 1:
            checks["disjoint"] = Check.at_least(eta, disjoint_threshold(radius))
        log.append(
            ConstructionRecord(
                k=int(k),
                z=z,
                h_value=float(h),
                radius=radius,
                multiplicity=n,
                square=WhitneySquare(int(k), int(j)) if k >= 1 else None,
                checks=checks,
            )
        )
    return log


@gen_group.command(name="family")
@click.option("--zero", multiple=True, help="Zero as re,im[,mult]; repeatable.")
@click.option("--zeros", type=click.Path(exists=True, dir_okay=False), help="ZeroSet JSON file.")
@run_options
@output_option
@click.pass_context
def gen_family(ctx: click.Context, zero, zeros, out, seed, config, output) -> None:
    """B(Λ, N): separated points with prescribed multiplicities."""
    cli_ctx = apply_options(ctx, output=output, out=out, seed=seed, config=config)
    try:
        run = start_run(ctx, cli_ctx, "gen.family", {"zero": zero, "zeros": zeros})
        given = zeros_from_options(run.params["zeros"], tuple(run.params["zero"]))
        result = family_blaschke(list(given.points), list(given.mults))
        log = family_log(result.zeros, result.eta, result.disk_radius)
        outputs = _write_zero_artifacts(run, result.zeros, log)
        finish_run(cli_ctx, run, outputs)
    except BlaschkeError as e:
        fail(cli_ctx, e, "gen family")

    extra = {"eta": result.eta, "disk_radius": result.disk_radius, "disjoint": result.disjoint}
    if not cli_ctx.is_structured_output():
        extra = {
            "eta": format_number(result.eta),
            "disk_radius": format_number(result.disk_radius),
            "disjoint": format_bool(result.disjoint),
        }
    _show(cli_ctx, "blaschke.gen.family/v1", "family", result.zeros, log, outputs, extra)


# ==================== thm2 ====================


def geometric_zeros(count: int) -> ZeroSet:
    """λ_j = 1 - 2^{-j}, j = 1..count, on the positive axis."""
    return ZeroSet.simple(1.0 - np.ldexp(1.0, -np.arange(1, count + 1)))


@gen_group.command(name="thm2")
@click.option("--zeros", type=click.Path(exists=True, dir_okay=False), help="ZeroSet JSON file.")
@click.option(
    "--geometric",
    type=click.IntRange(min=1),
    default=None,
    help="Use λ_j = 1 - 2^-j, j = 1..N, instead of a zero file.",
)
@depth_option(default=10)
@click.option("--grid", type=click.IntRange(min=2), default=LEMMA3_GRID, show_default=True)
@click.option("--max-selections", type=click.IntRange(min=1), default=None)
@run_options
@output_option
@click.pass_context
def gen_thm2(
    ctx: click.Context,
    zeros: Optional[str],
    geometric: Optional[int],
    depth: int,
    grid: int,
    max_selections: Optional[int],
    out,
    seed,
    config,
    output,
) -> None:
    """Weights M̃_j = M(Q_j)/sqrt(t_j) and the function H with bounded majorant at level H.

    Writes measure.json (H), majorant.json (Σ M̃_j h_Q) and weights.csv next to the log.
    """
    cli_ctx = apply_options(ctx, output=output, out=out, seed=seed, config=config)
    params = {
        "zeros": zeros,
        "geometric": geometric,
        "depth": depth,
        "grid": grid,
        "max_selections": max_selections,
    }
    try:
        run = start_run(ctx, cli_ctx, "gen.thm2", params)
        p = run.params
        if p["geometric"] is not None and not p["zeros"]:
            zero_set = geometric_zeros(p["geometric"])
        else:
            zero_set = zeros_from_options(p["zeros"], ())
        with cli_ctx.status("Building square weights..."):
            result = thm2_weights(zero_set, p["depth"], p["grid"], p["max_selections"])

        log = ConstructionLog()
        lemma3 = result.lemma3
        for m, (index, coef, radius) in enumerate(
            zip(lemma3.selected, lemma3.coefficients, lemma3.radii)
        ):
            square = result.squares[index]
            step_rows = [row for row in lemma3.certificate if row.step == m + 1]
            excess = max(row.sup - row.bound for row in step_rows)
            log.append(
                ConstructionRecord(
                    k=square.level,
                    z=square.center,
                    h_value=lemma3.selected_sups[m],
                    radius=radius,
                    multiplicity=int(result.counts[index]),
                    square=square,
                    checks={
                        "certificate": Check.at_most(excess, 0.0),
                        "growth": Check.at_least(
                            lemma3.selected_sups[m], HQ_LOWER_BOUND_C * coef
                        ),
                    },
                )
            )

        outputs = _write_zero_artifacts(run, zero_set, log)
        write_json(run.path("measure.json"), result.h.to_dict())
        write_json(run.path("majorant.json"), result.majorant.to_dict())
        write_csv(
            run.path("weights.csv"),
            ["level", "sector", "count", "tail", "weight"],
            (
                [q.level, q.sector, int(c), t, w]
                for q, c, t, w in zip(result.squares, result.counts, result.tails, result.weights)
            ),
        )
        outputs += ["measure.json", "majorant.json", "weights.csv"]
        finish_run(cli_ctx, run, outputs)
    except BlaschkeError as e:
        fail(cli_ctx, e, "gen thm2")

    extra = {
        "squares": len(result.squares),
        "selections": len(lemma3.selected),
        "threshold_selections": lemma3.branches.count("threshold"),
        "bound_holds": result.bound_holds,
        "growth_holds": lemma3.growth_holds,
    }
    _show(cli_ctx, "blaschke.gen.thm2/v1", "thm2", zero_set, log, outputs, extra)


# ==================== thm5a ====================


@gen_group.command(name="thm5a")
@click.option("--h1", default="atom:0:1", show_default=True, help="H spec of the larger level.")
@click.option("--h2", default="const:1", show_default=True, help="H spec of the smaller level.")
@click.option("--count", type=click.IntRange(min=1), default=8, show_default=True)
@depth_option(default=12)
@click.option("--angles", type=click.IntRange(min=1), default=256, show_default=True)
@click.option(
    "--thinning",
    type=click.Choice([t.value for t in Thinning]),
    default=Thinning.GREEDY.value,
    show_default=True,
)
@run_options
@output_option
@click.pass_context
def gen_thm5a(
    ctx: click.Context,
    h1: str,
    h2: str,
    count: int,
    depth: int,
    angles: int,
    thinning: str,
    out,
    seed,
    config,
    output,
) -> None:
    """Points along which H1/H2 grows, with N_j between the two levels.

    --depth is the deepest scan level. Writes majorant.json (H3 = Σ N_j H2(a_j) h_Q).
    """
    cli_ctx = apply_options(ctx, output=output, out=out, seed=seed, config=config)
    params = {
        "h1": h1,
        "h2": h2,
        "count": count,
        "depth": depth,
        "angles": angles,
        "thinning": thinning,
    }
    try:
        run = start_run(ctx, cli_ctx, "gen.thm5a", params)
        p = run.params
        with cli_ctx.status("Scanning H1/H2..."):
            result = thm5a_build(
                parse_h_spec(p["h1"]),
                parse_h_spec(p["h2"]),
                count=p["count"],
                max_level=p["depth"],
                angles=p["angles"],
                thinning=Thinning(p["thinning"]),
            )
        outputs = _write_zero_artifacts(run, result.zeros, result.log)
        write_json(run.path("majorant.json"), result.majorant.to_dict())
        outputs.append("majorant.json")
        finish_run(cli_ctx, run, outputs)
    except BlaschkeError as e:
        fail(cli_ctx, e, "gen thm5a")

    if len(result.zeros) < p["count"]:
        cli_ctx.warn(f"accepted {len(result.zeros)} of {p['count']} requested points")
    extra = {"candidates": result.candidates, "margins_monotone": result.margins_monotone}
    _show(cli_ctx, "blaschke.gen.thm5a/v1", "thm5a", result.zeros, result.log, outputs, extra)


# ==================== thm5b ====================


@gen_group.command(name="thm5b")
@click.option("--h", default="atom:0:4", show_default=True, help="H spec.")
@click.option("--eta0", type=float, default=1.0, show_default=True)
@click.option("--eta", type=float, default=0.5, show_default=True)
@depth_option(default=14)
@click.option("--point-cap", type=int, default=DEFAULT_POINT_CAP, show_default=True)
@click.option(
    "--gamma", type=float, default=None, help="Selection band fraction γ (default 0.9)."
)
@click.option(
    "--thinning",
    type=click.Choice([t.value for t in Thinning]),
    default=Thinning.GREEDY.value,
    show_default=True,
)
@click.option("--min-level", type=int, default=None, help="First level (default depth // 2 + 1).")
@click.option("--claim-angles", type=int, default=64, show_default=True)
@run_options
@output_option
@click.pass_context
def gen_thm5b(
    ctx: click.Context,
    h: str,
    eta0: float,
    eta: float,
    depth: int,
    point_cap: int,
    gamma: Optional[float],
    thinning: str,
    min_level: Optional[int],
    claim_angles: int,
    out,
    seed,
    config,
    output,
) -> None:
    """Zero set with a majorant of -log|B| at level H but none at level (1+η0)H.

    Writes params.json so that `blaschke verify claims --run DIR` can re-check the claims.
    """
    cli_ctx = apply_options(ctx, output=output, out=out, seed=seed, config=config)
    params = {
        "h": h,
        "eta0": eta0,
        "eta": eta,
        "depth": depth,
        "point_cap": point_cap,
        "gamma": gamma,
        "thinning": thinning,
        "min_level": min_level,
        "claim_angles": claim_angles,
    }
    try:
        run = start_run(ctx, cli_ctx, "gen.thm5b", params)
        p = run.params
        build_params = Thm5bParams(
            h=parse_h_spec(p["h"]),
            eta0=p["eta0"],
            eta=p["eta"],
            max_depth=p["depth"],
            point_cap=p["point_cap"],
            gamma=p["gamma"],
            thinning=Thinning(p["thinning"]),
            min_level=p["min_level"],
            claim_angles=p["claim_angles"],
        )
        with cli_ctx.status("Placing zeros..."):
            result = thm5b_build(build_params)
        outputs = _write_zero_artifacts(run, result.zeros, result.log)
        write_json(run.path("params.json"), params_to_dict(build_params))
        outputs.append("params.json")
        finish_run(cli_ctx, run, outputs)
    except BlaschkeError as e:
        fail(cli_ctx, e, "gen thm5b")

    capped = sum(1 for r in result.log if r.capped)
    if capped:
        cli_ctx.warn(f"{capped} square(s) hit the point cap of {build_params.point_cap}")
    extra = {
        "gamma": result.gamma if cli_ctx.is_structured_output() else format_number(result.gamma),
        "harnack_gamma": (
            result.harnack_gamma
            if cli_ctx.is_structured_output()
            else format_number(result.harnack_gamma)
        ),
        "squares": len(result.log),
        "skipped_levels": len(result.skipped),
        "all_checks_pass": all(r.passed for r in result.log),
    }
    _show(cli_ctx, "blaschke.gen.thm5b/v1", "thm5b", result.zeros, result.log, outputs, extra)
