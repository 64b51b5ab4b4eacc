"""Point-list files for evaluation grids: ``{"points": [{"re": r, "im": i}, ...]}``."""

from pathlib import Path
from typing import Sequence, Union

import numpy as np

from ..errors import ParseError
from ..harmonic import square_samples
from ..hypgeo import squares_up_to
from .base import extract_list, parse_complex, parse_number, read_json_file


def load_points(path: Union[str, Path]) -> np.ndarray:
    source = str(path)
    rows = extract_list(read_json_file(path), "points", source)
    re = [parse_number(r.get("re"), "re", source) for r in rows]
    im = [parse_number(r.get("im"), "im", source) for r in rows]
    points = np.array(re, dtype=float) + 1j * np.array(im, dtype=float)
    if points.size and np.any(np.abs(points) >= 1.0):
        raise ParseError("every point must lie inside the unit disc", source)
    return points


def parse_point_flags(values: Sequence[str]) -> np.ndarray:
    points = np.array([parse_complex(v) for v in values], dtype=complex)
    if points.size and np.any(np.abs(points) >= 1.0):
        raise ParseError("every --point must lie inside the unit disc")
    return points


def square_grid(depth: int, per_square: int) -> np.ndarray:
    """Quasi-random samples of every Whitney square up to ``depth``, in level order."""
    return np.concatenate([square_samples(q, per_square) for q in squares_up_to(depth)])
