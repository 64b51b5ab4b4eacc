"""Run-wide state shared by every command through ``click.Context.obj``.

Holds the consoles, the output format and the run defaults given on the group
(``--out``, ``--seed``, ``--config``, ``--timings``), plus warnings collected for the
structured output envelope.
"""

from contextlib import nullcontext
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, ContextManager, Optional

import click
from rich.console import Console

from .output import OutputContext, OutputFormat, OutputMeta, OutputRenderer

STRUCTURED_FORMATS = ("json", "yaml", "text")


@dataclass
class BlaschkeCliContext:
    console: Console = field(default_factory=Console)
    err_console: Console = field(default_factory=lambda: Console(stderr=True))

    output_format: str = "table"
    quiet: bool = False
    no_color: bool = False
    debug: bool = False
    verbose: bool = False

    out_dir: Optional[Path] = None
    seed: Optional[int] = None
    config_path: Optional[Path] = None
    timings: bool = False

    warnings: list[str] = field(default_factory=list)
    _renderer: Optional[OutputRenderer] = field(default=None, repr=False)

    @property
    def renderer(self) -> OutputRenderer:
        """Renderer bound to this context's consoles, built on first use."""
        if self._renderer is None:
            try:
                fmt = OutputFormat(self.output_format)
            except ValueError:
                fmt = OutputFormat.TABLE
            self._renderer = OutputRenderer(
                OutputContext(
                    format=fmt,
                    quiet=self.quiet,
                    no_color=self.no_color,
                    _console=self.console,
                    _err_console=self.err_console,
                )
            )
        return self._renderer

    def is_json_output(self) -> bool:
        return self.output_format == "json"

    def is_yaml_output(self) -> bool:
        return self.output_format == "yaml"

    def is_structured_output(self) -> bool:
        return self.output_format in STRUCTURED_FORMATS

    def status(self, message: str) -> ContextManager:
        """Spinner for table output; a no-op under --quiet or a structured format."""
        if self.is_structured_output() or self.quiet:
            return nullcontext()
        return self.console.status(message)

    def warn(self, message: str) -> None:
        """Keep ``message`` for ``meta.warnings``; table output also prints it on stderr."""
        self.warnings.append(message)
        if not self.is_structured_output():
            self.renderer.render_warning(message)

    def render_structured(self, data: Any, schema: str) -> None:
        """Emit ``data`` under ``schema`` in the selected structured format."""
        meta = OutputMeta(warnings=list(self.warnings))
        if self.is_json_output():
            self.renderer.render_json(data, schema, meta)
        elif self.is_yaml_output():
            self.renderer.render_yaml(data, schema, meta)
        else:
            self.renderer.render_text(data, schema, meta)


def ensure_cli_context(ctx: click.Context) -> BlaschkeCliContext:
    if not isinstance(ctx.obj, BlaschkeCliContext):
        ctx.obj = BlaschkeCliContext()
    return ctx.obj


def get_cli_context(ctx: click.Context) -> BlaschkeCliContext:
    """The nearest BlaschkeCliContext up the Click context chain.

    A command invoked on its own (as in tests) gets a default context.

    Raises:
        RuntimeError: If ``ctx.obj`` is set to some other object.
    """
    if ctx.obj is None:
        node = ctx.parent
        while node is not None:
            if isinstance(node.obj, BlaschkeCliContext):
                return node.obj
            node = node.parent
        ctx.obj = BlaschkeCliContext()
    if not isinstance(ctx.obj, BlaschkeCliContext):
        raise RuntimeError(f"ctx.obj is a {type(ctx.obj).__name__}, not a BlaschkeCliContext")
    return ctx.obj


def create_cli_context(
    debug: bool = False,
    verbose: bool = False,
    output_format: str = "table",
    quiet: bool = False,
    no_color: bool = False,
    out_dir: Optional[Path] = None,
    seed: Optional[int] = None,
    config_path: Optional[Path] = None,
    timings: bool = False,
) -> BlaschkeCliContext:
    """Build the context for one ``blaschke`` invocation from the group flags."""
    return BlaschkeCliContext(
        console=Console(force_terminal=not no_color, no_color=no_color, quiet=quiet),
        err_console=Console(stderr=True, no_color=no_color),
        output_format=output_format,
        quiet=quiet,
        no_color=no_color,
        debug=debug,
        verbose=verbose,
        out_dir=out_dir,
        seed=seed,
        config_path=config_path,
        timings=timings,
    )
