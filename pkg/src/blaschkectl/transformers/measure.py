"""H specifications: how the command line names a positive harmonic function.

Accepted forms:
- ``const:C``            the constant C
- ``atom:THETA:MASS``    MASS times the Poisson kernel at angle THETA
- ``hlambda[:SCALE]``    SCALE times H_Λ of the zero set given to the command
- a path                 a BoundaryMeasure JSON file
"""

import logging
from pathlib import Path
from typing import Optional

from ..blaschke import ZeroSet
from ..errors import BlaschkeError, ParseError
from ..harmonic import BoundaryMeasure, HarmonicFn, H_Lambda_fn
from .base import parse_number, read_json_file

logger = logging.getLogger(__name__)


def load_measure(path: Path) -> HarmonicFn:
    try:
        return HarmonicFn(BoundaryMeasure.from_dict(read_json_file(path)))
    except BlaschkeError as exc:
        raise ParseError(exc.message, str(path))


def parse_h_spec(spec: str, zeros: Optional[ZeroSet] = None) -> HarmonicFn:
    """Turn an H specification into a HarmonicFn.

    Raises:
        ParseError: On an unknown form, bad numbers, a negative constant or mass, or
            ``hlambda`` without a zero set.
    """
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()

    if kind == "const":
        value = parse_number(rest, "constant")
        if not value >= 0.0:
            raise ParseError(f"constant must be >= 0, got {rest!r}")
        return HarmonicFn.constant(value)

    if kind == "atom":
        theta_text, _, mass_text = rest.partition(":")
        theta = parse_number(theta_text, "atom angle")
        mass = parse_number(mass_text, "atom mass") if mass_text else 1.0
        if not mass > 0.0:
            raise ParseError(f"atom mass must be positive, got {mass_text!r}")
        return HarmonicFn.atom(theta, mass)

    if kind == "hlambda":
        if zeros is None:
            raise ParseError("hlambda needs a zero set (--zeros)")
        scale = parse_number(rest, "hlambda scale") if rest else 1.0
        if not scale > 0.0:
            raise ParseError(f"hlambda scale must be positive, got {rest!r}")
        return H_Lambda_fn(zeros).scaled(scale)

    path = Path(spec)
    if path.exists():
        logger.debug("reading boundary measure from %s", path)
        return load_measure(path)
    raise ParseError(f"unknown H specification {spec!r}")
