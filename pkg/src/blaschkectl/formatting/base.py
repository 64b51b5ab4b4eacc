"""Base formatting utilities shared by the formatting modules."""

import math
from typing import Any, List, Optional

from rich.panel import Panel

from ..const import Classification


def format_number(value: Optional[float], digits: int = 6) -> str:
    """Compact display of a float; the CSV files keep full precision."""
    if value is None:
        return "[dim]-[/dim]"
    value = float(value)
    if math.isnan(value):
        return "[dim]nan[/dim]"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def format_complex(z: complex, digits: int = 6) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real:.{digits}g} {sign} {abs(z.imag):.{digits}g}i"


def format_pass(passed: bool) -> str:
    if passed:
        return "[green]pass[/green]"
    return "[bold red]FAIL[/bold red]"


def format_bool(value: bool, true_text: str = "Yes", false_text: str = "No") -> str:
    if value:
        return f"[green]{true_text}[/green]"
    return f"[dim]{false_text}[/dim]"


def format_classification(classification: Classification) -> tuple[str, str]:
    """Display text and style for a sweep classification."""
    if classification == Classification.BOUNDED:
        return "bounded", "green"
    if classification == Classification.GROWTH:
        return "growth", "yellow"
    return "inconclusive", "dim"


# ==================== Panel Building Helpers ====================


def build_panel(lines: List[str], title: str, border_style: str = "blue") -> Panel:
    """Build a panel from formatted lines, skipping empty ones."""
    content = "\n".join(line for line in lines if line)
    return Panel(content, title=title, border_style=border_style)


def field(label: str, value: Any, default: str = "-") -> str:
    display_value = value if value is not None else default
    if display_value == "":
        display_value = default
    return f"[bold]{label}:[/bold] {display_value}"
