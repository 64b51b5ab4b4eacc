"""ConstraintSet files: ``{"constraints": [{"re": r, "im": i, "value": v}, ...]}``."""

from pathlib import Path
from typing import Union

from ..errors import BlaschkeError, ParseError
from ..majorant import ConstraintSet
from .base import read_json_file


def load_constraints(path: Union[str, Path]) -> ConstraintSet:
    """Read a constraint set; points outside the disc or negative values are ParseErrors."""
    try:
        return ConstraintSet.from_dict(read_json_file(path))
    except BlaschkeError as exc:
        raise ParseError(exc.message, str(path))
