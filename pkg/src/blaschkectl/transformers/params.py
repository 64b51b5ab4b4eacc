"""Thm5bParams files (``params.json``), so claims can be re-checked from a run directory."""

from pathlib import Path
from typing import Any, Dict, Union

from ..const import Thinning
from ..constructions import Thm5bParams
from ..errors import BlaschkeError, ParseError
from ..harmonic import HarmonicFn
from .base import read_json_file


def params_to_dict(params: Thm5bParams) -> Dict[str, Any]:
    return {
        "h": params.h.to_dict(),
        "eta0": params.eta0,
        "eta": params.eta,
        "max_depth": params.max_depth,
        "point_cap": params.point_cap,
        "gamma": params.gamma,
        "thinning": params.thinning.value,
        "min_level": params.min_level,
        "claim_angles": params.claim_angles,
    }


def params_from_dict(raw: Any, source: str = "") -> Thm5bParams:
    if not isinstance(raw, dict) or not isinstance(raw.get("h"), dict):
        raise ParseError("expected an object with an 'h' measure", source or None)
    try:
        gamma = raw.get("gamma")
        min_level = raw.get("min_level")
        return Thm5bParams(
            h=HarmonicFn.from_dict(raw["h"]),
            eta0=float(raw.get("eta0", 1.0)),
            eta=float(raw.get("eta", 0.5)),
            max_depth=int(raw.get("max_depth", 14)),
            point_cap=int(raw.get("point_cap", Thm5bParams.point_cap)),
            gamma=None if gamma is None else float(gamma),
            thinning=Thinning(raw.get("thinning", Thinning.GREEDY.value)),
            min_level=None if min_level is None else int(min_level),
            claim_angles=int(raw.get("claim_angles", Thm5bParams.claim_angles)),
        )
    except BlaschkeError as exc:
        raise ParseError(exc.message, source or None)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed parameters: {exc}", source or None)


def load_params(path: Union[str, Path]) -> Thm5bParams:
    return params_from_dict(read_json_file(path), str(path))
