"""Base helpers for reading artifact files into plain Python data."""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

from ..errors import ParseError


def read_json_file(path: Union[str, Path]) -> Any:
    """Load a JSON file.

    Raises:
        ParseError: If the file cannot be read or is not valid JSON.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror or exc}", str(path))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}", str(path))


def extract_list(raw: Any, key: str, source: str = "") -> List[Dict[str, Any]]:
    """Return ``raw[key]`` as a list of objects.

    Accepts both the bare file format and the structured output envelope
    ``{"schema": ..., "data": {key: [...]}}``.
    """
    if isinstance(raw, dict) and key not in raw and isinstance(raw.get("data"), dict):
        raw = raw["data"]
    if not isinstance(raw, dict) or not isinstance(raw.get(key), list):
        raise ParseError(f"expected an object with a {key!r} list", source or None)
    items = raw[key]
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise ParseError(f"{key}[{i}] is not an object", source or None)
    return items


def parse_number(value: Any, name: str, source: str = "") -> float:
    """A finite-or-infinite float from a JSON number or its literal string form."""
    if isinstance(value, bool):
        raise ParseError(f"{name} must be a number, got {value!r}", source or None)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ParseError(f"{name} must be a number, got {value!r}", source or None)


def parse_complex(text: str, name: str = "point") -> complex:
    """``re,im`` text, as given to repeatable flags."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParseError(f"{name} must be re,im, got {text!r}")
    return complex(parse_number(parts[0], f"{name}.re"), parse_number(parts[1], f"{name}.im"))
