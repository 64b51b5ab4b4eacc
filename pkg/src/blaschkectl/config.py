"""Run configuration: config files, flag precedence and the run manifest.

Every command resolves its parameters as explicit flag > config file value > command
default, then records the result in ``manifest.json`` next to its artifacts. The
manifest carries no timestamps, so rerunning it reproduces byte-identical outputs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Optional

import click
from click.core import ParameterSource

from ._coercion import Value, coerce_value, normalize_key, warn_once
from .context import BlaschkeCliContext
from .errors import ParseError
from .output import write_json

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
DEFAULT_OUT_DIR = Path("out")
DEFAULT_SEED = 0

# Keys consumed by the run itself rather than by a command parameter.
_RUN_KEYS = frozenset({"seed", "out"})


def tool_version() -> str:
    try:
        return version("blaschkectl")
    except PackageNotFoundError:
        return "unknown"


# ==================== Config Files ====================


def parse_config_text(text: str, source: Optional[str] = None) -> dict[str, Value]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment.

    Raises:
        ParseError: On a line without ``=``, an empty key or a duplicate key.
    """
    values: dict[str, Value] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError(f"line {number}: expected key = value, got {line.strip()!r}", source)
        key, raw = stripped.split("=", 1)
        key = normalize_key(key)
        if not key:
            raise ParseError(f"line {number}: empty key", source)
        if key in values:
            raise ParseError(f"line {number}: duplicate key {key!r}", source)
        values[key] = coerce_value(raw)
    return values


def load_config(path: Path) -> dict[str, Value]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read config file: {exc}", str(path))
    return parse_config_text(text, str(path))


# ==================== Run Configuration ====================


def _plain(value: Any) -> Any:
    """JSON-friendly copy of a parameter value."""
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass
class RunConfig:
    """Resolved parameters of one command run."""

    command: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    out_dir: Path = DEFAULT_OUT_DIR
    config_file: Optional[Path] = None

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def manifest(self, outputs: list[str]) -> dict[str, Any]:
        return {
            "tool": "blaschkectl",
            "version": tool_version(),
            "command": self.command,
            "seed": self.seed,
            "params": _plain(self.params),
            "config_file": None if self.config_file is None else str(self.config_file),
            "outputs": sorted(outputs),
        }

    def write_manifest(self, outputs: list[str]) -> Path:
        return write_json(self.path(MANIFEST_NAME), self.manifest(outputs))


def _from_command_line(ctx: click.Context, name: str) -> bool:
    source = ctx.get_parameter_source(name)
    return source in (ParameterSource.COMMANDLINE, ParameterSource.ENVIRONMENT)


def resolve_run(
    ctx: click.Context,
    cli_ctx: BlaschkeCliContext,
    command: str,
    params: dict[str, Any],
) -> RunConfig:
    """Merge config-file values into ``params`` wherever no flag was given.

    File values are converted with the click type of the parameter they override.
    Keys that match no parameter are kept in the manifest and warned about once.

    Raises:
        ParseError: If the config file is malformed or a value does not fit its parameter.
    """
    resolved = dict(params)
    file_values: dict[str, Value] = {}
    if cli_ctx.config_path is not None:
        file_values = load_config(cli_ctx.config_path)

    by_name = {p.name: p for p in ctx.command.params if p.name}
    for key, value in file_values.items():
        if key in _RUN_KEYS:
            continue
        param = by_name.get(key)
        if param is None or key not in resolved:
            warn_once("config", key, f"config key {key!r} is not used by {command}")
            resolved[key] = value
            continue
        if _from_command_line(ctx, key):
            logger.debug("flag --%s overrides config value %r", key, value)
            continue
        if param.multiple and not isinstance(value, list):
            value = [value]
        try:
            resolved[key] = param.type_cast_value(ctx, value)
        except click.BadParameter as exc:
            raise ParseError(f"{key}: {exc.message}", str(cli_ctx.config_path))

    seed = cli_ctx.seed
    if seed is None:
        raw_seed = file_values.get("seed", DEFAULT_SEED)
        if isinstance(raw_seed, bool) or not isinstance(raw_seed, int):
            raise ParseError(f"seed must be an integer, got {raw_seed!r}", str(cli_ctx.config_path))
        seed = raw_seed

    out_dir = cli_ctx.out_dir
    if out_dir is None:
        raw_out = file_values.get("out")
        out_dir = Path(str(raw_out)) if raw_out is not None else DEFAULT_OUT_DIR

    run = RunConfig(
        command=command,
        params=resolved,
        seed=seed,
        out_dir=out_dir,
        config_file=cli_ctx.config_path,
    )
    logger.debug("resolved %s: seed=%d out=%s params=%s", command, seed, out_dir, resolved)
    return run
