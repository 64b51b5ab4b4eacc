"""Deterministic samples of the target set {z : ρ(z, Λ) >= e^{-sH(z)}}."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..blaschke import ZeroSet, anchored_logs, log_modulus_many, pseudo_dist_to_set_many
from ..const import (
    DEFAULT_PER_SQUARE,
    DEFAULT_PROBE_ANGLES,
    DEFAULT_PROBE_RUNGS,
    DEFAULT_PROBE_ZEROS,
)
from ..errors import DomainError
from ..harmonic import HarmonicFn
from ..hypgeo import (
    TWO_PI,
    WhitneySquare,
    mobius_many,
    squares_up_to,
    unit_square_samples,
    whitney_index_many,
)

logger = logging.getLogger(__name__)

_LOG_HALF = math.log(0.5)
# a probe on the innermost rung sits exactly on the filter boundary
_PROBE_RTOL = 1e-12


@dataclass
class TargetSample:
    """Retained sample points with the level of the cell each belongs to.

    Probe points take the level of the cell they fall in (0 for the central cell). Probes
    around a deeper zero can land at a shallow level, so ``up_to(d)`` is a nested
    truncation of this sample that may hold more probes than a sample drawn at depth d.

    ``known`` holds -log|B| wherever it was computed from an exact local factor (NaN
    elsewhere).
    """

    points: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    levels: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    extremal: dict[WhitneySquare, complex] = field(default_factory=dict)
    considered: int = 0
    known: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.known is None:
            self.known = np.full(self.points.size, np.nan)

    def __len__(self) -> int:
        return int(self.points.size)

    def up_to(self, depth: int) -> "TargetSample":
        mask = self.levels <= depth
        return TargetSample(
            self.points[mask],
            self.levels[mask],
            {q: a for q, a in self.extremal.items() if q.level <= depth},
            self.considered,
            self.known[mask],
        )

    def targets(self, zeros: ZeroSet) -> np.ndarray:
        """-log|B| at every retained point."""
        values = self.known.copy()
        pending = ~np.isfinite(values)
        values[pending] = -log_modulus_many(zeros, self.points[pending])
        return values


@dataclass
class ProbeSet:
    """Points on pseudo-circles around zeros, with their exact log distance to that zero."""

    points: np.ndarray
    anchors: np.ndarray
    log_rho: np.ndarray

    def __len__(self) -> int:
        return int(self.points.size)

    @classmethod
    def empty(cls) -> "ProbeSet":
        return cls(np.zeros(0, dtype=complex), np.zeros(0, dtype=np.int64), np.zeros(0))


def filter_points(
    zeros: ZeroSet, h: HarmonicFn, points: np.ndarray, scale: float = 1.0
) -> np.ndarray:
    """Mask of the points with ρ(z, Λ) >= e^{-scale·H(z)}."""
    if not len(zeros):
        return np.ones(points.size, dtype=bool)
    if not points.size:
        return np.zeros(0, dtype=bool)
    rho = pseudo_dist_to_set_many(zeros, points)
    with np.errstate(divide="ignore"):
        return np.log(rho) >= -scale * h(points)


def probe_points(
    zeros: ZeroSet,
    h: HarmonicFn,
    depth: int,
    scale: float = 1.0,
    angles: int = DEFAULT_PROBE_ANGLES,
    max_zeros: int = DEFAULT_PROBE_ZEROS,
    rungs: int = DEFAULT_PROBE_RUNGS,
) -> ProbeSet:
    """Probes on pseudo-circles from radius e^{-sH(λ)} up to 1/2 around zeros up to depth.

    Radii double from the innermost circle; when that would take more than ``rungs``
    circles they are spread evenly in log t instead. Radii are handled as logarithms, so
    circles far below machine resolution keep their exact distance in ``log_rho``.
    Zeros are taken by decreasing multiplicity, at most ``max_zeros`` of them.
    """
    if not len(zeros) or angles < 1 or rungs < 1:
        return ProbeSet.empty()
    levels, _ = whitney_index_many(zeros.array)
    inside = np.flatnonzero(levels <= depth)
    order = inside[np.argsort(-zeros.weights[inside], kind="stable")][:max_zeros]
    if order.size < inside.size:
        logger.warning("probing %d of %d zeros", order.size, inside.size)

    unit = np.exp(1j * TWO_PI * np.arange(angles) / angles)
    points, anchors, log_rho = [], [], []
    for idx, hv in zip(order, h(zeros.array[order])):
        low = -scale * float(hv)
        if not low < _LOG_HALF:
            continue
        span = _LOG_HALF - low
        doublings = math.ceil(span / math.log(2.0))
        if doublings <= rungs:
            log_t = low + math.log(2.0) * np.arange(doublings)
        else:
            log_t = low + span * np.arange(rungs) / rungs
        w = (np.exp(log_t)[:, None] * unit[None, :]).ravel()
        points.append(mobius_many(zeros.array[idx], w))
        anchors.append(np.full(w.size, idx, dtype=np.int64))
        log_rho.append(np.repeat(log_t, angles))
    if not points:
        return ProbeSet.empty()
    return ProbeSet(np.concatenate(points), np.concatenate(anchors), np.concatenate(log_rho))


def sample_target_set(
    zeros: ZeroSet,
    h: HarmonicFn,
    depth: int,
    per_square: int = DEFAULT_PER_SQUARE,
    scale: float = 1.0,
    seed: Optional[int] = None,
    probes: bool = True,
) -> TargetSample:
    """Filtered samples of every square up to ``depth`` plus filter-boundary probes.

    For every square meeting {ρ(·, Λ) <= 1/2} the retained point maximizing -log|B| is
    recorded as its near-extremal point a(Q). A square whose sample is filtered out entirely
    contributes nothing.

    Raises:
        DomainError: If depth < 1 or per_square < 1.
    """
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    if per_square < 1:
        raise DomainError(f"per_square must be >= 1, got {per_square}")

    squares = squares_up_to(depth)
    uv = unit_square_samples(per_square, seed)
    points = np.concatenate([q.polar_points(uv[:, 0], uv[:, 1]) for q in squares])
    levels = np.repeat([q.level for q in squares], per_square)
    owner = np.repeat(np.arange(len(squares)), per_square)
    considered = int(points.size)

    keep = filter_points(zeros, h, points, scale)
    points, levels, owner = points[keep], levels[keep], owner[keep]
    known = np.full(points.size, np.nan)

    probe = probe_points(zeros, h, depth, scale) if probes else ProbeSet.empty()
    if len(probe):
        considered += len(probe)
        p_levels, p_sectors = whitney_index_many(probe.points)
        log_b, log_dist = anchored_logs(zeros, probe.points, probe.anchors, probe.log_rho)
        bound = -scale * h(probe.points)
        ok = (p_levels <= depth) & (log_dist >= bound - _PROBE_RTOL * np.maximum(1.0, -bound))
        index = {q: i for i, q in enumerate(squares)}
        p_owner = np.array(
            [
                index[WhitneySquare(int(k), int(j))] if k > 0 else -1
                for k, j in zip(p_levels[ok], p_sectors[ok])
            ],
            dtype=np.int64,
        )
        points = np.concatenate([points, probe.points[ok]])
        levels = np.concatenate([levels, p_levels[ok]])
        owner = np.concatenate([owner, p_owner])
        known = np.concatenate([known, -log_b[ok]])

    sample = TargetSample(points, levels.astype(np.int64), {}, considered, known)
    if len(zeros) and points.size:
        near = pseudo_dist_to_set_many(zeros, points) <= 0.5
        cost = sample.targets(zeros)
        for i in np.unique(owner[near & (owner >= 0)]):
            mine = np.flatnonzero(owner == i)
            sample.extremal[squares[int(i)]] = complex(points[mine[np.argmax(cost[mine])]])

    logger.debug(
        "target sample depth=%d: kept %d of %d points, %d near-extremal",
        depth,
        points.size,
        considered,
        len(sample.extremal),
    )
    return sample
