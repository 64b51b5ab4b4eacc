"""ConstructionLog files: one JSON record per line."""

import json
from pathlib import Path
from typing import Union

from ..constructions import ConstructionLog, ConstructionRecord
from ..errors import ParseError


def load_log(path: Union[str, Path]) -> ConstructionLog:
    """Read a ``log.jsonl`` written by ``gen``; blank lines are skipped."""
    source = str(path)
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror or exc}", source)
    log = ConstructionLog()
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {number}: {exc.msg}", source)
        try:
            log.append(ConstructionRecord.from_dict(raw))
        except ParseError as exc:
            raise ParseError(f"line {number}: {exc.message}", source)
    return log


def log_records(log: ConstructionLog) -> list[dict]:
    return [record.to_dict() for record in log]
