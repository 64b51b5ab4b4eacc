"""Formatting of verification suite reports and evaluation summaries."""

import numpy as np
from rich.panel import Panel
from rich.table import Table

from ..suites import SuiteReport
from .base import build_panel, field, format_number, format_pass


def create_suite_table(report: SuiteReport) -> Table:
    table = Table(title=f"Verification: {report.suite}")
    table.add_column("Property", style="cyan")
    table.add_column("Result")
    table.add_column("Measured", justify="right")
    table.add_column("Bound", justify="right", style="dim")
    table.add_column("Detail", style="dim")
    for prop in report.properties:
        table.add_row(
            prop.name,
            format_pass(prop.passed),
            format_number(prop.measured, 8),
            format_number(prop.bound, 8),
            prop.detail,
        )
    return table


def build_eval_panel(what: str, values: np.ndarray, path: str) -> Panel:
    finite = values[np.isfinite(values)]
    lines = [
        field("Quantity", what),
        field("Points", values.size),
        field("Min", format_number(float(np.min(finite))) if finite.size else None),
        field("Max", format_number(float(np.max(finite))) if finite.size else None),
        field("Non-finite", int(values.size - finite.size)),
        field("Wrote", path),
    ]
    return build_panel(lines, "Evaluation", "blue")
