"""Output rendering and artifact writing for blaschkectl.

Console output, in the format selected with ``--output``:
- table: Rich formatted tables and panels (default)
- json: Structured JSON with schema envelope
- yaml: YAML with the same envelope
- text: Plain text key-value format

Artifacts (CSV, JSON, JSON lines) are written atomically and with round-trip floats,
so identical runs produce byte-identical files.
"""

import json as json_lib
import math
import os
import tempfile
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import yaml  # type: ignore[import-untyped]
from rich.console import Console


class OutputFormat(str, Enum):
    """Output format options."""

    TABLE = "table"
    JSON = "json"
    YAML = "yaml"
    TEXT = "text"


@dataclass
class OutputMeta:
    """Metadata for the structured output envelope. No timestamp, for reproducibility."""

    warnings: List[str] = field(default_factory=list)


@dataclass
class OutputContext:
    """Context for output rendering."""

    format: OutputFormat = OutputFormat.TABLE
    quiet: bool = False
    no_color: bool = False

    _console: Optional[Console] = field(default=None, repr=False)
    _err_console: Optional[Console] = field(default=None, repr=False)

    @property
    def console(self) -> Console:
        """Get the main console for stdout."""
        if self._console is None:
            self._console = Console(
                no_color=self.no_color,
                force_terminal=None if not self.no_color else False,
            )
        return self._console

    @property
    def err_console(self) -> Console:
        """Get the error console for stderr."""
        if self._err_console is None:
            self._err_console = Console(
                stderr=True,
                no_color=self.no_color,
                force_terminal=None if not self.no_color else False,
            )
        return self._err_console


# ==================== Serialization ====================


def format_float(value: float) -> str:
    """Shortest round-trip text of a float; infinities and NaN as literal strings."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def json_safe(data: Any) -> Any:
    """Replace non-finite floats with their literal strings, recursively.

    Also converts numpy scalars and tuples so ``json.dumps`` sees plain types.
    """
    if isinstance(data, dict):
        return {str(k): json_safe(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [json_safe(v) for v in data]
    if isinstance(data, bool) or data is None or isinstance(data, str):
        return data
    if isinstance(data, Enum):
        return data.value
    if hasattr(data, "item") and callable(data.item):
        data = data.item()
    if isinstance(data, float):
        return data if math.isfinite(data) else format_float(data)
    if isinstance(data, complex):
        return {"re": json_safe(data.real), "im": json_safe(data.imag)}
    return data


def dumps_json(data: Any) -> str:
    return json_lib.dumps(json_safe(data), indent=2, sort_keys=True, allow_nan=False) + "\n"


def atomic_write(path: Union[str, Path], text: str) -> Path:
    """Write ``text`` to a temporary file next to ``path`` and rename it into place."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if hasattr(value, "item") and callable(value.item):
        return _csv_cell(value.item())
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_csv(
    path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> Path:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(v) for v in row) for row in rows)
    return atomic_write(path, "\n".join(lines) + "\n")


def write_json(path: Union[str, Path], data: Any) -> Path:
    return atomic_write(path, dumps_json(data))


def write_jsonl(path: Union[str, Path], records: Iterable[Dict[str, Any]]) -> Path:
    lines = [
        json_lib.dumps(json_safe(r), sort_keys=True, allow_nan=False, separators=(",", ":"))
        for r in records
    ]
    return atomic_write(path, "".join(line + "\n" for line in lines))


# ==================== Console Rendering ====================


class OutputRenderer:
    """Renders command results in the selected console format."""

    def __init__(self, ctx: OutputContext):
        self.ctx = ctx

    def _envelope(self, data: Any, schema: str, meta: Optional[OutputMeta]) -> Dict[str, Any]:
        meta = meta or OutputMeta()
        return {"schema": schema, "data": json_safe(data), "meta": {"warnings": meta.warnings}}

    def render_json(self, data: Any, schema: str, meta: Optional[OutputMeta] = None) -> None:
        """Render data as JSON with envelope.

        Args:
            data: The data to render
            schema: Schema identifier (e.g., "blaschke.verify.report/v1")
            meta: Optional metadata
        """
        envelope = self._envelope(data, schema, meta)
        text = json_lib.dumps(envelope, indent=2)
        self.ctx.console.print(text, highlight=False, markup=False, soft_wrap=True)

    def render_yaml(self, data: Any, schema: str, meta: Optional[OutputMeta] = None) -> None:
        envelope = self._envelope(data, schema, meta)
        output = yaml.dump(envelope, default_flow_style=False, sort_keys=False, allow_unicode=True)
        self.ctx.console.print(output, highlight=False, markup=False, soft_wrap=True)

    def render_text(self, data: Any, schema: str, meta: Optional[OutputMeta] = None) -> None:
        """Render data as plain text key-value pairs (schema and meta are not shown)."""
        data = json_safe(data)
        if isinstance(data, dict):
            self._render_text_dict(data)
        elif isinstance(data, list):
            for i, item in enumerate(data):
                if i > 0:
                    self.ctx.console.print("---", highlight=False)
                if isinstance(item, dict):
                    self._render_text_dict(item)
                else:
                    self.ctx.console.print(str(item), highlight=False)
        else:
            self.ctx.console.print(str(data), highlight=False)

    def _render_text_dict(self, data: Dict[str, Any], prefix: str = "") -> None:
        for key, value in data.items():
            label = key.replace("_", " ").title()
            if isinstance(value, dict):
                self.ctx.console.print(f"{prefix}{label}:", highlight=False)
                self._render_text_dict(value, prefix=prefix + "  ")
            elif isinstance(value, list):
                if not value:
                    self.ctx.console.print(f"{prefix}{label}: (none)", highlight=False)
                elif all(not isinstance(v, (dict, list)) for v in value):
                    joined = ", ".join(str(v) for v in value)
                    self.ctx.console.print(f"{prefix}{label}: {joined}", highlight=False)
                else:
                    self.ctx.console.print(f"{prefix}{label}:", highlight=False)
                    for item in value:
                        if isinstance(item, dict):
                            self._render_text_dict(item, prefix=prefix + "  - ")
                        else:
                            self.ctx.console.print(f"{prefix}  - {item}", highlight=False)
            else:
                self.ctx.console.print(f"{prefix}{label}: {value}", highlight=False)

    def render_warning(self, message: str) -> None:
        self.ctx.err_console.print(f"[yellow]Warning:[/yellow] {message}")

    def render_success(self, message: str) -> None:
        if not self.ctx.quiet:
            self.ctx.console.print(f"[bold green]✓[/bold green] {message}")
