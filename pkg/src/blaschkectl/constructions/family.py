"""The B(Λ, N) family: separated points carrying prescribed multiplicities."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..blaschke import ZeroSet
from ..errors import DomainError
from ..hypgeo import PointLike, as_array

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamilyResult:
    """Zero set of B(Λ, N) with the disjointness check of the disks D_ρ(λ_j, η/4)."""

    zeros: ZeroSet
    eta: float
    disk_radius: float
    disjoint: bool


def disjoint_threshold(t: float) -> float:
    """Pseudo-distance beyond which D_ρ(a, t) and D_ρ(b, t) are disjoint."""
    return 2.0 * t / (1.0 + t * t)


def family_blaschke(points: Sequence[PointLike], mults: Sequence[int]) -> FamilyResult:
    """Build B(Λ, N) from separated points Λ and multiplicities N.

    A single point has no separation constraint and reports η = 1.

    Raises:
        DomainError: If the lengths differ, the set is empty or two points coincide.
    """
    if len(points) != len(mults):
        raise DomainError("points and multiplicities differ in length")
    if not points:
        raise DomainError("the family needs at least one point")
    zs = as_array(points)
    zeros = ZeroSet(tuple(complex(z) for z in zs), tuple(int(n) for n in mults))

    if zs.size == 1:
        return FamilyResult(zeros, 1.0, 0.25, True)

    rho = np.abs(zs[:, None] - zs[None, :]) / np.abs(1.0 - np.conj(zs)[None, :] * zs[:, None])
    eta = float(np.min(rho[np.triu_indices(zs.size, k=1)]))
    if eta <= 0.0:
        raise DomainError("points of the family must be separated (two coincide)")
    t = eta / 4.0
    disjoint = eta > disjoint_threshold(t)
    logger.debug("family of %d points: eta=%.6g, disks of radius %.6g", zs.size, eta, t)
    return FamilyResult(zeros, eta, t, disjoint)
