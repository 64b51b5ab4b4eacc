"""Verification command for blaschkectl.

Commands:
- blaschke verify SUITE: run a property suite and write report.json

Exits 1 when any property fails, after the report has been written.
"""

import inspect
from pathlib import Path
from typing import Any, Optional

import click

from ..constructions import ClaimsReport, claims_check
from ..errors import BlaschkeError, ParseError, VerificationError
from ..formatting import create_claims_table, create_suite_table
from ..options import apply_options, output_option, run_options
from ..output import write_json
from ..suites import SUITES, SuiteReport, claims_to_suite
from ..transformers import load_log, load_params, load_zeros
from .base import fail, finish_run, start_run

REPORT_JSON = "report.json"

# --samples feeds a different knob in each randomized suite.
SAMPLE_KWARG = {
    "geometry": "samples",
    "harmonic": "samples",
    "lp": "instances",
    "lemma1": "sets",
}


def suite_kwargs(suite: str, p: dict[str, Any], seed: int) -> dict[str, Any]:
    """Keyword arguments accepted by the suite function, taken from resolved params."""
    accepted = inspect.signature(SUITES[suite]).parameters
    kwargs: dict[str, Any] = {}
    if "seed" in accepted:
        kwargs["seed"] = seed
    if p.get("samples") is not None and suite in SAMPLE_KWARG:
        kwargs[SAMPLE_KWARG[suite]] = p["samples"]
    for name in ("depth", "per_square"):
        if p.get(name) is not None and name in accepted:
            kwargs[name] = p[name]
    return kwargs


def load_claims_inputs(p: dict[str, Any]) -> ClaimsReport:
    """Claims of a thm5b run, from --run DIR or from explicit files.

    Raises:
        ParseError: If any of the zero set, log or parameters is missing.
    """
    run_dir = Path(p["run"]) if p.get("run") else None
    paths = {
        "zeros": p.get("zeros") or (run_dir / "zeros.json" if run_dir else None),
        "log": p.get("log") or (run_dir / "log.jsonl" if run_dir else None),
        "params": p.get("params_file") or (run_dir / "params.json" if run_dir else None),
    }
    missing = [name for name, path in paths.items() if path is None or not Path(path).exists()]
    if missing:
        raise ParseError(
            "claims needs a thm5b run (--run DIR, or --zeros, --log and --params); "
            f"missing {', '.join(missing)}"
        )
    return claims_check(
        load_zeros(paths["zeros"]), load_log(paths["log"]), load_params(paths["params"])
    )


@click.command(name="verify")
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@click.option("--samples", type=click.IntRange(min=1), help="Sample or instance count.")
@click.option("--depth", type=click.IntRange(min=1), help="Construction depth (thm4).")
@click.option("--per-square", type=click.IntRange(min=1), help="Samples per square.")
@click.option(
    "--run", type=click.Path(exists=True, file_okay=False), help="A gen thm5b output directory."
)
@click.option("--zeros", type=click.Path(exists=True, dir_okay=False), help="ZeroSet JSON file.")
@click.option("--log", type=click.Path(exists=True, dir_okay=False), help="Construction log.")
@click.option(
    "--params", "params_file", type=click.Path(exists=True, dir_okay=False), help="params.json."
)
@run_options
@output_option
@click.pass_context
def verify_command(
    ctx: click.Context,
    suite: str,
    samples: Optional[int],
    depth: Optional[int],
    per_square: Optional[int],
    run: Optional[str],
    zeros: Optional[str],
    log: Optional[str],
    params_file: Optional[str],
    out,
    seed,
    config,
    output,
) -> None:
    """Run a verification suite and report each property against its bound.

    Suites: geometry, harmonic, lp, lemma1, lemma3, thm2, thm3, thm4, thm5a and claims. The
    claims suite re-checks a thm5b construction from its run directory.

    \b
    Examples:
      blaschke verify geometry --samples 2000
      blaschke verify claims --run runs/b
    """
    cli_ctx = apply_options(ctx, output=output, out=out, seed=seed, config=config)
    params = {
        "suite": suite,
        "samples": samples,
        "depth": depth,
        "per_square": per_square,
        "run": run,
        "zeros": zeros,
        "log": log,
        "params_file": params_file,
    }
    claims: Optional[ClaimsReport] = None
    try:
        resolved = start_run(ctx, cli_ctx, f"verify.{suite}", params)
        p = resolved.params
        with cli_ctx.status(f"Running {suite} suite..."):
            if suite == "claims":
                claims = load_claims_inputs(p)
                report: SuiteReport = claims_to_suite(claims)
            else:
                report = SUITES[suite](**suite_kwargs(suite, p, resolved.seed))
        write_json(resolved.path(REPORT_JSON), report.to_dict())
        finish_run(cli_ctx, resolved, [REPORT_JSON])
    except BlaschkeError as e:
        fail(cli_ctx, e, f"verify {suite}")

    if cli_ctx.is_structured_output():
        cli_ctx.render_structured(report.to_dict(), "blaschke.verify.report/v1")
    else:
        if claims is not None:
            cli_ctx.console.print(create_claims_table(claims))
        cli_ctx.console.print(create_suite_table(report))

    if not report.passed:
        fail(
            cli_ctx,
            VerificationError(
                f"{len(report.failing)} of {len(report.properties)} properties failed",
                report.failing,
            ),
            f"verify {suite}",
        )
    if not cli_ctx.is_structured_output():
        cli_ctx.renderer.render_success(f"{suite}: all {len(report.properties)} properties hold")
