"""Zero sets with multiplicities and Blaschke products through their log-modulus.

A Blaschke product is never formed as a complex number: every quantity is accumulated
as a sum of N_k log ρ(z, λ_k), which stays stable near the boundary and for large
multiplicities.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .errors import DomainError, PreconditionError
from .hypgeo import (
    CENTRAL_CELL,
    DiskPoint,
    PointLike,
    WhitneyCell,
    WhitneySquare,
    as_complex,
    central_neighbors,
    pseudo_dist_many,
    whitney_index_many,
    whitney_neighbors,
)

logger = logging.getLogger(__name__)

# Upper bound on the size of one (points x zeros) block in vectorised evaluation.
_BLOCK_ELEMENTS = 2_000_000


# ==================== Zero Sets ====================


@dataclass(frozen=True)
class ZeroSet:
    """Finite zero divisor: distinct entries of (point, multiplicity)."""

    points: tuple[complex, ...] = ()
    mults: tuple[int, ...] = ()
    allow_origin: bool = False

    def __post_init__(self):
        if len(self.points) != len(self.mults):
            raise DomainError("points and multiplicities differ in length")
        for z, n in zip(self.points, self.mults):
            if abs(z) >= 1.0 or not math.isfinite(abs(z)):
                raise DomainError(f"zero {z} is not inside the unit disc")
            if int(n) != n or n < 1:
                raise DomainError(f"multiplicity must be a positive integer, got {n}")
            if z == 0 and not self.allow_origin:
                raise DomainError("zero at the origin requires allow_origin=True")

    @classmethod
    def from_entries(
        cls, entries: Iterable[tuple[PointLike, int]], allow_origin: bool = False
    ) -> "ZeroSet":
        pts, mults = [], []
        for point, mult in entries:
            pts.append(as_complex(point))
            mults.append(int(mult))
        return cls(tuple(pts), tuple(mults), allow_origin=allow_origin)

    @classmethod
    def simple(cls, points: Iterable[PointLike], allow_origin: bool = False) -> "ZeroSet":
        return cls.from_entries(((p, 1) for p in points), allow_origin=allow_origin)

    @classmethod
    def empty(cls) -> "ZeroSet":
        return cls()

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[DiskPoint, int]]:
        for z, n in zip(self.points, self.mults):
            yield DiskPoint.from_complex(z), n

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=complex)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array(self.mults, dtype=float)

    @property
    def total_multiplicity(self) -> int:
        return int(sum(self.mults))

    @property
    def is_simple(self) -> bool:
        return all(n == 1 for n in self.mults)

    def with_zero(self, point: PointLike, mult: int = 1) -> "ZeroSet":
        return ZeroSet(
            self.points + (as_complex(point),),
            self.mults + (int(mult),),
            allow_origin=self.allow_origin,
        )

    def merge(self, other: "ZeroSet") -> "ZeroSet":
        return ZeroSet(
            self.points + other.points,
            self.mults + other.mults,
            allow_origin=self.allow_origin or other.allow_origin,
        )


def blaschke_sum(zeros: ZeroSet) -> float:
    """Σ N_j (1 - |λ_j|)."""
    if not len(zeros):
        return 0.0
    return float(np.sum(zeros.weights * (1.0 - np.abs(zeros.array))))


# ==================== Log-Modulus ====================


def log_modulus(zeros: ZeroSet, z: PointLike) -> float:
    """log|B(z)| = Σ N_k log ρ(z, λ_k); -inf at a zero, 0 for the empty set."""
    if not len(zeros):
        return 0.0
    rho = pseudo_dist_many(zeros.array, as_complex(z))
    with np.errstate(divide="ignore"):
        return float(np.sum(zeros.weights * np.log(rho)))


def _blocks(count: int, width: int) -> Iterator[slice]:
    step = max(1, _BLOCK_ELEMENTS // max(1, width))
    for start in range(0, count, step):
        yield slice(start, min(count, start + step))


def _rho_block(zs: np.ndarray, zeros: np.ndarray) -> np.ndarray:
    return np.abs(zs[:, None] - zeros[None, :]) / np.abs(
        1.0 - np.conj(zeros)[None, :] * zs[:, None]
    )


def log_modulus_many(zeros: ZeroSet, zs: np.ndarray) -> np.ndarray:
    """Vectorised ``log_modulus`` over a complex array."""
    zs = np.asarray(zs, dtype=complex)
    out = np.zeros(zs.shape[0])
    if not len(zeros) or not zs.size:
        return out
    lam, w = zeros.array, zeros.weights
    with np.errstate(divide="ignore"):
        for block in _blocks(zs.shape[0], lam.size):
            out[block] = np.log(_rho_block(zs[block], lam)) @ w
    return out


def anchored_logs(
    zeros: ZeroSet, zs: np.ndarray, anchors: np.ndarray, log_rho: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """log|B(z)| and log ρ(z, Λ) for points at a known distance from one zero each.

    ``zs[i]`` lies at log pseudo-distance ``log_rho[i]`` from zero ``anchors[i]``; that
    factor comes from ``log_rho`` rather than from the rounded point, which may coincide
    with the zero once the distance is below machine resolution.
    """
    zs = np.asarray(zs, dtype=complex)
    anchors = np.asarray(anchors, dtype=np.int64)
    log_rho = np.asarray(log_rho, dtype=float)
    log_b = np.zeros(zs.shape[0])
    log_min = np.zeros(zs.shape[0])
    if not len(zeros) or not zs.size:
        return log_b, log_min
    lam, w = zeros.array, zeros.weights
    with np.errstate(divide="ignore"):
        for block in _blocks(zs.shape[0], lam.size):
            logs = np.log(_rho_block(zs[block], lam))
            logs[np.arange(logs.shape[0]), anchors[block]] = log_rho[block]
            log_b[block] = logs @ w
            log_min[block] = np.min(logs, axis=1)
    return log_b, log_min


def pseudo_dist_to_set(zeros: ZeroSet, z: PointLike) -> float:
    """ρ(z, Λ), with ρ(z, ∅) = 1."""
    if not len(zeros):
        return 1.0
    return float(np.min(pseudo_dist_many(zeros.array, as_complex(z))))


def pseudo_dist_to_set_many(zeros: ZeroSet, zs: np.ndarray) -> np.ndarray:
    zs = np.asarray(zs, dtype=complex)
    out = np.ones(zs.shape[0])
    if not len(zeros) or not zs.size:
        return out
    for block in _blocks(zs.shape[0], len(zeros)):
        out[block] = np.min(_rho_block(zs[block], zeros.array), axis=1)
    return out


# ==================== Interpolation Criteria ====================


def carleson_quantity(zeros: ZeroSet, k: int) -> float:
    """Π_{j≠k} ρ(λ_k, λ_j)^{N_j}; 0 when λ_k is a multiple zero."""
    if not 0 <= k < len(zeros):
        raise DomainError(f"index {k} out of range for {len(zeros)} zeros")
    if zeros.mults[k] > 1:
        logger.warning(
            "zero %d has multiplicity %d; such a sequence is never interpolating",
            k,
            zeros.mults[k],
        )
        return 0.0
    others = np.arange(len(zeros)) != k
    if not np.any(others):
        return 1.0
    rho = pseudo_dist_many(zeros.array[others], zeros.points[k])
    with np.errstate(divide="ignore"):
        return float(np.exp(np.sum(zeros.weights[others] * np.log(rho))))


@dataclass(frozen=True)
class InterpolationRow:
    index: int
    point: complex
    quantity: float
    h_value: float
    margin: float
    passes: bool


@dataclass
class InterpolationReport:
    rows: list[InterpolationRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passes for row in self.rows)

    @property
    def min_margin(self) -> float:
        return min((row.margin for row in self.rows), default=math.inf)


def nevanlinna_interp_check(
    zeros: ZeroSet, h: Callable[[complex], float]
) -> InterpolationReport:
    """Check carleson_quantity(k) >= exp(-H(λ_k)) at every zero.

    Raises:
        PreconditionError: If some zero is multiple; the criterion presupposes simple zeros.
    """
    if not zeros.is_simple:
        multiple = [i for i, n in enumerate(zeros.mults) if n > 1]
        raise PreconditionError(
            f"zeros {multiple} are multiple; a sequence with multiple points is never "
            "interpolating, so the criterion does not apply"
        )
    report = InterpolationReport()
    for k, z in enumerate(zeros.points):
        q = carleson_quantity(zeros, k)
        hv = float(h(z))
        margin = (math.log(q) if q > 0.0 else -math.inf) + hv
        report.rows.append(InterpolationRow(k, z, q, hv, margin, margin >= 0.0))
    return report


# ==================== Census ====================


@dataclass
class SquareCensus:
    """Zero counts per dyadic square and over their neighborhoods."""

    counts: dict[WhitneySquare, int] = field(default_factory=dict)
    neighborhood: dict[WhitneySquare, int] = field(default_factory=dict)
    central: int = 0

    def n(self, square: WhitneySquare) -> int:
        """N(Q)."""
        return self.counts.get(square, 0)

    def m(self, square: WhitneySquare) -> int:
        """M(Q), the count over all cells touching Q."""
        return self.neighborhood.get(square, 0)

    def occupied(self, max_level: Optional[int] = None) -> list[WhitneySquare]:
        """Squares with N(Q) > 0 in decreasing side order."""
        return sorted(
            q
            for q, n in self.counts.items()
            if n > 0 and (max_level is None or q.level <= max_level)
        )

    def with_mass(self, max_level: Optional[int] = None) -> list[WhitneySquare]:
        """Squares with M(Q) > 0 in decreasing side order."""
        return sorted(
            q
            for q, m in self.neighborhood.items()
            if m > 0 and (max_level is None or q.level <= max_level)
        )

    def total(self) -> int:
        return sum(self.counts.values()) + self.central

    def __bool__(self) -> bool:
        return bool(self.counts) or self.central > 0


def census(zeros: ZeroSet) -> SquareCensus:
    """Per-square counts N(Q) and neighborhood counts M(Q)."""
    result = SquareCensus()
    if not len(zeros):
        return result

    levels, sectors = whitney_index_many(zeros.array)
    counts: dict[WhitneySquare, int] = defaultdict(int)
    for level, sector, mult in zip(levels, sectors, zeros.mults):
        if level == 0:
            result.central += int(mult)
        else:
            counts[WhitneySquare(int(level), int(sector))] += int(mult)
    result.counts = dict(counts)

    neighborhood: dict[WhitneySquare, int] = defaultdict(int)
    occupied: list[tuple[WhitneyCell, int]] = list(counts.items())
    if result.central:
        occupied.append((CENTRAL_CELL, result.central))
    for cell, n in occupied:
        if isinstance(cell, WhitneySquare):
            touching = whitney_neighbors(cell)
        else:
            touching = central_neighbors()
        for other in touching:
            if isinstance(other, WhitneySquare):
                neighborhood[other] += n
    result.neighborhood = dict(neighborhood)
    return result
