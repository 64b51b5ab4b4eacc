"""Unit tests for blaschkectl.context module.

Tests cover:
- BlaschkeCliContext defaults and format predicates
- status spinner selection and warning collection
- create_cli_context, ensure_cli_context and get_cli_context
"""

from contextlib import nullcontext
from io import StringIO
from pathlib import Path

import click
import pytest
from rich.console import Console

from blaschkectl.context import (
    BlaschkeCliContext,
    create_cli_context,
    ensure_cli_context,
    get_cli_context,
)
from blaschkectl.output import OutputFormat

# ========================== BlaschkeCliContext Tests ==========================


class TestBlaschkeCliContext:
    """Tests for BlaschkeCliContext dataclass."""

    def test_default_initialization(self):
        """Test defaults."""
        ctx = BlaschkeCliContext()

        assert ctx.output_format == "table"
        assert ctx.out_dir is None
        assert ctx.seed is None
        assert ctx.config_path is None
        assert ctx.timings is False
        assert ctx.warnings == []

    @pytest.mark.parametrize(
        "fmt,structured", [("table", False), ("json", True), ("yaml", True), ("text", True)]
    )
    def test_is_structured_output(self, fmt, structured):
        """Test which formats are parseable."""
        assert BlaschkeCliContext(output_format=fmt).is_structured_output() is structured

    def test_status_is_noop_for_structured(self):
        """Test no spinner is shown for JSON output."""
        ctx = BlaschkeCliContext(output_format="json")
        assert isinstance(ctx.status("working"), nullcontext)

    def test_status_is_noop_when_quiet(self):
        """Test no spinner is shown under --quiet."""
        ctx = BlaschkeCliContext(quiet=True)
        assert isinstance(ctx.status("working"), nullcontext)

    def test_warn_collects_and_prints_for_table(self):
        """Test warnings are recorded and shown on stderr in table mode."""
        err = StringIO()
        ctx = BlaschkeCliContext(err_console=Console(file=err, no_color=True))

        ctx.warn("sweep is inconclusive")

        assert ctx.warnings == ["sweep is inconclusive"]
        assert "sweep is inconclusive" in err.getvalue()

    def test_warn_silent_for_structured(self):
        """Test warnings only go to the envelope for structured output."""
        err = StringIO()
        ctx = BlaschkeCliContext(
            output_format="json", err_console=Console(file=err, no_color=True)
        )

        ctx.warn("capped")

        assert ctx.warnings == ["capped"]
        assert err.getvalue() == ""

    def test_render_structured_includes_warnings(self):
        """Test recorded warnings reach the envelope."""
        out = StringIO()
        ctx = BlaschkeCliContext(output_format="json", console=Console(file=out, width=200))
        ctx.warn("w1")

        ctx.render_structured({"x": 1}, "blaschke.test/v1")

        assert '"w1"' in out.getvalue()

    def test_unknown_format_falls_back_to_table(self):
        """Test the renderer treats an unknown format as table output."""
        ctx = BlaschkeCliContext(output_format="csv")

        assert ctx.renderer.ctx.format == OutputFormat.TABLE
        assert ctx.renderer is ctx.renderer


# ========================== Factory and Helper Tests ==========================


class TestCreateCliContext:
    """Tests for create_cli_context."""

    def test_passes_settings(self):
        """Test every setting lands on the context."""
        ctx = create_cli_context(
            debug=True,
            output_format="yaml",
            out_dir=Path("runs/a"),
            seed=7,
            timings=True,
        )

        assert ctx.debug is True
        assert ctx.output_format == "yaml"
        assert ctx.out_dir == Path("runs/a")
        assert ctx.seed == 7
        assert ctx.timings is True


class TestContextHelpers:
    """Tests for ensure_cli_context and get_cli_context."""

    def test_ensure_creates(self):
        """Test a context is created when missing."""
        ctx = click.Context(click.Command("x"))
        assert isinstance(ensure_cli_context(ctx), BlaschkeCliContext)

    def test_get_walks_parents(self):
        """Test the parent's context is found."""
        parent = click.Context(click.Group("root"), obj=BlaschkeCliContext(seed=3))
        child = click.Context(click.Command("x"), parent=parent)

        assert get_cli_context(child).seed == 3

    def test_get_rejects_foreign_obj(self):
        """Test a foreign ctx.obj raises RuntimeError."""
        ctx = click.Context(click.Command("x"), obj={"not": "a context"})

        with pytest.raises(RuntimeError):
            get_cli_context(ctx)
