"""Formatting of construction logs and generated zero sets."""

from typing import Optional

from rich.panel import Panel
from rich.table import Table

from ..blaschke import ZeroSet
from ..constructions import ClaimsReport, ConstructionLog
from .base import build_panel, field, format_complex, format_number, format_pass


def create_log_table(log: ConstructionLog, title: str = "Construction Log") -> Table:
    """One row per record; a check column lists failing inequalities by name."""
    table = Table(title=title)
    table.add_column("k", justify="right", style="cyan")
    table.add_column("z", style="blue")
    table.add_column("H", justify="right")
    table.add_column("R", justify="right")
    table.add_column("N", justify="right", style="green")
    table.add_column("Placed", justify="right")
    table.add_column("Checks")

    for record in log:
        failing = [name for name, check in record.checks.items() if not check.passed]
        checks = format_pass(True) if not failing else "[red]" + ", ".join(failing) + "[/red]"
        placed = str(record.placed) + (" [yellow](capped)[/yellow]" if record.capped else "")
        table.add_row(
            str(record.k),
            format_complex(record.z, 5),
            format_number(record.h_value),
            format_number(record.radius),
            str(record.multiplicity),
            placed,
            checks,
        )
    return table


def build_zeros_panel(
    kind: str, zeros: ZeroSet, outputs: list[str], extra: Optional[dict[str, str]] = None
) -> Panel:
    lines = [
        field("Construction", kind),
        field("Distinct zeros", len(zeros)),
        field("Total multiplicity", zeros.total_multiplicity),
    ]
    for label, value in (extra or {}).items():
        lines.append(field(label, value))
    lines.append(field("Wrote", ", ".join(sorted(outputs))))
    return build_panel(lines, "Generated", "green")


def create_claims_table(report: ClaimsReport) -> Table:
    late = {row.k for row in report.late()}
    table = Table(title="Claims per Square")
    table.add_column("k", justify="right", style="cyan")
    table.add_column("Hidden")
    table.add_column("Survivors", justify="right")
    table.add_column("Witness")
    table.add_column("Margin", justify="right")
    table.add_column("Late")
    for row in report.rows:
        table.add_row(
            str(row.k),
            format_pass(row.hidden),
            str(row.survivors),
            format_pass(row.witness_found),
            format_number(row.lower_bound_margin),
            "yes" if row.k in late else "",
        )
    return table
