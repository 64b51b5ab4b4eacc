"""ZeroSet files: ``{"zeros": [{"re": r, "im": i, "mult": n}, ...]}``."""

from pathlib import Path
from typing import Any, Dict, Union

from ..blaschke import ZeroSet
from ..errors import DomainError, ParseError
from .base import extract_list, parse_number, read_json_file


def zeros_to_dict(zeros: ZeroSet) -> Dict[str, Any]:
    return {
        "zeros": [
            {"re": z.real, "im": z.imag, "mult": n} for z, n in zip(zeros.points, zeros.mults)
        ]
    }


def zeros_from_dict(raw: Any, source: str = "") -> ZeroSet:
    """Build a ZeroSet; ``mult`` defaults to 1 and a zero at the origin is allowed.

    Raises:
        ParseError: On missing fields, non-numeric values, points outside the disc
            or non-positive multiplicities.
    """
    entries = []
    for i, row in enumerate(extract_list(raw, "zeros", source)):
        if "re" not in row or "im" not in row:
            raise ParseError(f"zeros[{i}] needs 're' and 'im'", source or None)
        z = complex(parse_number(row["re"], "re", source), parse_number(row["im"], "im", source))
        mult = row.get("mult", 1)
        if isinstance(mult, bool) or not isinstance(mult, int):
            raise ParseError(f"zeros[{i}].mult must be an integer, got {mult!r}", source or None)
        entries.append((z, mult))
    try:
        return ZeroSet.from_entries(entries, allow_origin=True)
    except DomainError as exc:
        raise ParseError(exc.message, source or None)


def load_zeros(path: Union[str, Path]) -> ZeroSet:
    return zeros_from_dict(read_json_file(path), str(path))


def parse_zero_flag(text: str) -> tuple[complex, int]:
    """``re,im`` or ``re,im,mult`` from a repeatable ``--zero`` flag."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 3):
        raise ParseError(f"--zero expects re,im[,mult], got {text!r}")
    z = complex(parse_number(parts[0], "re"), parse_number(parts[1], "im"))
    if len(parts) == 2:
        return z, 1
    try:
        return z, int(parts[2])
    except ValueError:
        raise ParseError(f"multiplicity must be an integer, got {parts[2]!r}")
