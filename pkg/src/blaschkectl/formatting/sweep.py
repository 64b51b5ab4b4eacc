"""Formatting of majorant sweeps."""

from rich.panel import Panel
from rich.table import Table

from ..majorant import SweepRecord
from .base import build_panel, field, format_classification, format_number


def create_sweep_table(record: SweepRecord, title: str = "Minimal Majorant Mass") -> Table:
    table = Table(title=title)
    table.add_column("Depth", justify="right", style="cyan")
    table.add_column("Constraints", justify="right")
    table.add_column("Mass", justify="right", style="green")
    table.add_column("Ratio", justify="right", style="dim")
    table.add_column("ms", justify="right", style="dim")

    previous = None
    for row in record.rows:
        ratio = "-"
        if previous is not None and previous > 0.0:
            ratio = format_number(row.mass / previous, 4)
        table.add_row(
            str(row.depth),
            str(row.count),
            format_number(row.mass, 10),
            ratio,
            format_number(row.runtime_ms, 4),
        )
        previous = row.mass
    return table


def build_classification_panel(record: SweepRecord, scale: float) -> Panel:
    text, style = format_classification(record.classification)
    lines = [
        field("Classification", f"[{style}]{text}[/{style}]"),
        field("Filter scale", format_number(scale)),
        field("Growth exponent", format_number(record.growth_exponent, 4)),
        field("Monotone", "yes" if record.is_monotone() else "[red]no[/red]"),
    ]
    return build_panel(lines, "Sweep", style if style != "dim" else "blue")
