"""Value coercion for config files and repeatable text flags.

Config files are flat ``key = value`` text, so every value arrives as a string.
``coerce_value`` turns it into the most specific scalar it spells; ``warn_once``
keeps repeated warnings about the same key from flooding the log.
"""

from __future__ import annotations

import logging
from typing import Union

logger = logging.getLogger(__name__)

Scalar = Union[bool, int, float, str]
Value = Union[Scalar, list[Scalar]]

_TRUE = frozenset({"true", "yes", "on"})
_FALSE = frozenset({"false", "no", "off"})

# (category, key) pairs already warned about.
_warned: set[tuple[str, str]] = set()


def normalize_key(key: str) -> str:
    """``Per-Square`` and ``per_square`` name the same setting."""
    return key.strip().lower().replace("-", "_")


def coerce_scalar(raw: str) -> Scalar:
    """Parse one token as bool, int, float or string, in that order.

    ``inf`` and ``-inf`` become floats; quoted tokens stay strings with the quotes removed.
    """
    text = raw.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "'\"":
        return text[1:-1]

    lowered = text.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False

    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def coerce_value(raw: str) -> Value:
    """Parse a config value; comma-separated values become a list of scalars."""
    text = raw.strip()
    if "," in text and not (text[:1] in "'\"" and text[:1] == text[-1:]):
        return [coerce_scalar(part) for part in text.split(",") if part.strip()]
    return coerce_scalar(text)


def coerce_int_list(value: Value) -> list[int]:
    """Depth lists arrive as ``6,8,10`` strings, bare ints or lists."""
    if isinstance(value, bool):
        raise ValueError(f"expected integers, got {value!r}")
    if isinstance(value, list):
        return [int(v) for v in value]
    if isinstance(value, str):
        return [int(v) for v in value.split(",") if v.strip()]
    return [int(value)]


def warn_once(category: str, key: str, message: str) -> None:
    """Log ``message`` at WARNING the first time a (category, key) pair is seen."""
    marker = (category, key)
    if marker in _warned:
        logger.debug("%s (repeated)", message)
        return
    _warned.add(marker)
    logger.warning(message)
