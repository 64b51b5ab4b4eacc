"""Mass sweeps: minimal-mass majorants over growing truncations of a target set."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from ..blaschke import ZeroSet, log_modulus_many
from ..const import (
    BOUNDED_FACTOR,
    DEFAULT_GRID_N,
    DEFAULT_PER_SQUARE,
    GROWTH_FACTOR,
    Classification,
)
from ..errors import DomainError
from ..harmonic import HarmonicFn
from ..hypgeo import as_array
from .sampling import TargetSample, sample_target_set
from .simplex import ConstraintSet, boundary_grid, min_mass

logger = logging.getLogger(__name__)


# ==================== Sweep Records ====================


@dataclass(frozen=True)
class SweepRow:
    depth: int
    count: int
    mass: float
    runtime_ms: float = 0.0


@dataclass
class SweepRecord:
    """Minimal masses of successive truncations, one row per depth."""

    rows: list[SweepRow] = field(default_factory=list)

    @property
    def depths(self) -> list[int]:
        return [row.depth for row in self.rows]

    @property
    def masses(self) -> list[float]:
        return [row.mass for row in self.rows]

    @property
    def classification(self) -> Classification:
        return classify_masses(self.masses)

    @property
    def growth_exponent(self) -> float:
        """Least-squares slope of log mass against log 1/l = depth·log 2."""
        pairs = [(r.depth, r.mass) for r in self.rows if r.mass > 0.0]
        if len(pairs) < 2:
            return 0.0
        x = np.array([d for d, _ in pairs], dtype=float) * math.log(2.0)
        y = np.log([m for _, m in pairs])
        return float(np.polyfit(x, y, 1)[0])

    def is_monotone(self, rtol: float = 1e-9) -> bool:
        m = self.masses
        return all(b >= a - rtol * max(1.0, abs(a)) for a, b in zip(m, m[1:]))


def classify_masses(masses: Sequence[float]) -> Classification:
    """Classify the tail of a mass sequence.

    Bounded: the last three masses lie within a factor 1.5 of each other (or all vanish).
    Growth: the last three increase monotonically by a total factor of at least 2.
    """
    values = list(masses)
    if values and all(m <= 0.0 for m in values):
        return Classification.BOUNDED
    if len(values) < 3:
        return Classification.INCONCLUSIVE
    a, b, c = values[-3:]
    if a <= b <= c and a > 0.0 and c >= GROWTH_FACTOR * a:
        return Classification.GROWTH
    low, high = min(a, b, c), max(a, b, c)
    if low > 0.0 and high <= BOUNDED_FACTOR * low:
        return Classification.BOUNDED
    return Classification.INCONCLUSIVE


# ==================== Sweeps ====================


def target_constraints(zeros: ZeroSet, sample: TargetSample) -> ConstraintSet:
    """(z, -log|B(z)|) over the retained sample."""
    values = np.maximum(sample.targets(zeros), 0.0)
    return ConstraintSet(sample.points, values)


def majorant_diagnostic(
    zeros: ZeroSet,
    h: HarmonicFn,
    depths: Sequence[int],
    per_square: int = DEFAULT_PER_SQUARE,
    grid_n: int = DEFAULT_GRID_N,
    scale: float = 1.0,
    seed: Optional[int] = None,
    timings: bool = False,
    progress: Optional[Callable[[SweepRow], None]] = None,
) -> SweepRecord:
    """Minimal majorant mass of -log|B| on the filtered target set, depth by depth.

    The sample is drawn once at the largest depth and truncated by level, and the boundary
    grid is built from that sample, so the constraint sets are nested and the mass
    sequence is nondecreasing.

    Raises:
        DomainError: If depths are empty or not strictly increasing.
        SolverError: If a solve does not reach a verified optimum.
    """
    depths = list(depths)
    if not depths:
        raise DomainError("at least one depth is required")
    if any(b <= a for a, b in zip(depths, depths[1:])):
        raise DomainError(f"depths must be strictly increasing, got {depths}")

    full = sample_target_set(zeros, h, depths[-1], per_square, scale=scale, seed=seed)
    grid = boundary_grid(grid_n, full.points)
    record = SweepRecord()
    for depth in depths:
        started = time.perf_counter()
        constraints = target_constraints(zeros, full.up_to(depth))
        report = min_mass(constraints, grid).require_optimal()
        elapsed = (time.perf_counter() - started) * 1000.0 if timings else 0.0
        row = SweepRow(depth, len(constraints), report.optimal_mass, elapsed)
        record.rows.append(row)
        logger.info("depth=%d count=%d mass=%.12g", row.depth, row.count, row.mass)
        if progress is not None:
            progress(row)
    return record


def wep_gap(
    zeros: ZeroSet,
    h1: HarmonicFn,
    depths: Sequence[int],
    per_square: int = DEFAULT_PER_SQUARE,
    grid_n: int = DEFAULT_GRID_N,
    seed: Optional[int] = None,
    timings: bool = False,
    progress: Optional[Callable[[SweepRow], None]] = None,
) -> SweepRecord:
    """Best discretized H2(0) with |B| >= e^{-H2} off {ρ(z, Λ) < e^{-H1(z)}}, per depth."""
    return majorant_diagnostic(
        zeros,
        h1,
        depths,
        per_square=per_square,
        grid_n=grid_n,
        scale=1.0,
        seed=seed,
        timings=timings,
        progress=progress,
    )


# ==================== Corona Data ====================


def corona_data(zeros_b: ZeroSet, witnesses: Sequence[ZeroSet], grid: Sequence) -> ConstraintSet:
    """Constraints (z, max(0, -log(Σ_i |B_i(z)| + |B(z)|))) over ``grid``.

    Grid points where every input vanishes are dropped with a warning.

    Raises:
        DomainError: If no witnesses are given.
    """
    if not witnesses:
        raise DomainError("corona data needs at least one witness")
    points = as_array(grid)
    inputs = [*witnesses, zeros_b]
    logs = np.vstack([log_modulus_many(zs, points) for zs in inputs])
    with np.errstate(divide="ignore"):
        total = logsumexp(logs, axis=0)
    finite = np.isfinite(total)
    if not np.all(finite):
        logger.warning("dropping %d common zeros from the corona grid", int(np.sum(~finite)))
    return ConstraintSet(points[finite], np.maximum(-total[finite], 0.0))
