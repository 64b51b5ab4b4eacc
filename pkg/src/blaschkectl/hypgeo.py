"""Geometry of the unit disc.

Pseudohyperbolic distance, disc automorphisms, pseudohyperbolic disks, the dyadic
Whitney decomposition and boundary arcs. Scalar operations accept a ``DiskPoint`` or a
plain ``complex``; the ``*_many`` variants work on numpy arrays of complex points.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.stats import qmc

from .const import CENTRAL_RADIUS
from .errors import CentralCellError, DomainError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


# ==================== Points ====================


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disc."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"non-finite point ({self.re}, {self.im})")
        if self.re * self.re + self.im * self.im >= 1.0:
            raise DomainError(f"point ({self.re}, {self.im}) is not inside the unit disc")

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        return cls(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @property
    def arg(self) -> float:
        """Argument normalized to [0, 2π)."""
        return normalize_angle(math.atan2(self.im, self.re))

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


PointLike = Union[DiskPoint, complex, float]


def as_complex(point: PointLike) -> complex:
    """Return ``point`` as a complex number, rejecting points outside the disc."""
    if isinstance(point, DiskPoint):
        return point.z
    z = complex(point)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)) or abs(z) >= 1.0:
        raise DomainError(f"point {z} is not inside the unit disc")
    return z


def as_array(points: Iterable[PointLike]) -> np.ndarray:
    """Convert an iterable of points to a complex numpy array."""
    if isinstance(points, np.ndarray):
        arr = points.astype(complex, copy=False)
    else:
        arr = np.array([as_complex(p) for p in points], dtype=complex)
    if arr.size and np.max(np.abs(arr)) >= 1.0:
        raise DomainError("point array leaves the unit disc")
    return arr


def normalize_angle(theta: float) -> float:
    """Map an angle to [0, 2π)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


# ==================== Metric and Automorphisms ====================


def pseudo_dist(a: PointLike, b: PointLike) -> float:
    """Pseudohyperbolic distance |a - b| / |1 - conj(b) a|."""
    za, zb = as_complex(a), as_complex(b)
    return abs(za - zb) / abs(1.0 - zb.conjugate() * za)


def pseudo_dist_many(zs: np.ndarray, w: complex) -> np.ndarray:
    """Pseudohyperbolic distances from every point of ``zs`` to ``w``."""
    return np.abs(zs - w) / np.abs(1.0 - np.conj(w) * zs)


def mobius(a: PointLike, z: PointLike) -> DiskPoint:
    """The involutive automorphism (a - z) / (1 - conj(a) z)."""
    za, zz = as_complex(a), as_complex(z)
    return DiskPoint.from_complex((za - zz) / (1.0 - za.conjugate() * zz))


def mobius_many(a: complex, zs: np.ndarray) -> np.ndarray:
    return (a - zs) / (1.0 - np.conj(a) * zs)


def pseudo_disk(center: PointLike, t: float) -> tuple[complex, float]:
    """Euclidean center and radius of the pseudohyperbolic disk D(center, t).

    Raises:
        DomainError: If t is outside (0, 1).
    """
    if not 0.0 < t < 1.0:
        raise DomainError(f"pseudo-radius must lie in (0, 1), got {t}")
    z0 = as_complex(center)
    r2 = abs(z0) ** 2
    denom = 1.0 - t * t * r2
    return z0 * (1.0 - t * t) / denom, t * (1.0 - r2) / denom


def pseudo_disk_area_ratio(center: PointLike, t: float) -> float:
    """Euclidean area of D(center, t) divided by t^2 (1 - |center|)^2."""
    _, radius = pseudo_disk(center, t)
    gap = 1.0 - abs(as_complex(center))
    return math.pi * radius * radius / (t * t * gap * gap)


def pseudo_circle(center: PointLike, t: float, count: int, phase: float = 0.0) -> np.ndarray:
    """``count`` points at pseudohyperbolic distance exactly ``t`` from ``center``."""
    z0 = as_complex(center)
    phi = phase + TWO_PI * np.arange(count) / count
    return mobius_many(z0, t * np.exp(1j * phi))


def separation(points: Sequence[PointLike]) -> float:
    """Minimum pairwise pseudohyperbolic distance of a finite set.

    Raises:
        DomainError: If fewer than two points are given.
    """
    if len(points) < 2:
        raise DomainError("separation needs at least two points")
    zs = as_array(points)
    diff = np.abs(zs[:, None] - zs[None, :])
    denom = np.abs(1.0 - np.conj(zs)[None, :] * zs[:, None])
    rho = diff / denom
    iu = np.triu_indices(len(zs), k=1)
    return float(np.min(rho[iu]))


# ==================== Boundary Arcs ====================


@dataclass(frozen=True)
class BoundaryArc:
    """Closed arc {e^{iθ} : theta_lo <= θ <= theta_hi} of the unit circle."""

    theta_lo: float
    theta_hi: float

    def __post_init__(self):
        length = self.theta_hi - self.theta_lo
        if not (length > 0.0 and length <= TWO_PI * (1.0 + 1e-15)):
            raise DomainError(
                f"arc [{self.theta_lo}, {self.theta_hi}] must have length in (0, 2π]"
            )

    @classmethod
    def full_circle(cls) -> "BoundaryArc":
        return cls(0.0, TWO_PI)

    @classmethod
    def centered(cls, center: float, half_width: float) -> "BoundaryArc":
        lo = normalize_angle(center - half_width)
        return cls(lo, lo + 2.0 * half_width)

    @property
    def length(self) -> float:
        return min(self.theta_hi - self.theta_lo, TWO_PI)

    @property
    def is_full(self) -> bool:
        return self.theta_hi - self.theta_lo >= TWO_PI

    @property
    def center(self) -> float:
        return normalize_angle(0.5 * (self.theta_lo + self.theta_hi))

    def normalized(self) -> "BoundaryArc":
        """Same arc with theta_lo in [0, 2π)."""
        lo = normalize_angle(self.theta_lo)
        return BoundaryArc(lo, lo + (self.theta_hi - self.theta_lo))

    def contains(self, theta: float, tol: float = 1e-12) -> bool:
        if self.is_full:
            return True
        offset = normalize_angle(theta - self.theta_lo)
        return offset <= self.length + tol or offset >= TWO_PI - tol


def privalov_shadow(lam: PointLike) -> BoundaryArc:
    """Arc of boundary points within Euclidean distance 1 - |λ| of λ/|λ|.

    The origin has no radial projection; its shadow is the full circle.
    """
    z = as_complex(lam)
    r = abs(z)
    if r == 0.0:
        return BoundaryArc.full_circle()
    half = 2.0 * math.asin((1.0 - r) / 2.0)
    return BoundaryArc.centered(math.atan2(z.imag, z.real), half)


# ==================== Whitney Decomposition ====================


@dataclass(frozen=True)
class CentralCell:
    """The disc {|z| < 1/2}, kept out of the dyadic decomposition."""

    radius: float = CENTRAL_RADIUS

    def contains(self, z: PointLike) -> bool:
        return abs(as_complex(z)) < self.radius

    def __str__(self) -> str:
        return "central"


CENTRAL_CELL = CentralCell()


@dataclass(frozen=True, order=True)
class WhitneySquare:
    """Dyadic polar cell Q_{k,j}: 2^-k <= 1-|z| < 2^(1-k), arg in [j w, (j+1) w)."""

    level: int
    sector: int

    def __post_init__(self):
        if self.level < 1:
            raise DomainError(f"Whitney level must be >= 1, got {self.level}")
        if not 0 <= self.sector < 2**self.level:
            raise DomainError(f"sector {self.sector} outside [0, 2^{self.level})")

    @classmethod
    def at_angle(cls, level: int, theta: float) -> "WhitneySquare":
        """The level-``level`` square whose sector contains the angle ``theta``."""
        n = 2**level
        return cls(level, min(int(normalize_angle(theta) / (TWO_PI / n)), n - 1))

    @property
    def side(self) -> float:
        """l(Q) = 2^-k."""
        return math.ldexp(1.0, -self.level)

    @property
    def angular_width(self) -> float:
        return TWO_PI * self.side

    @property
    def arc(self) -> BoundaryArc:
        w = self.angular_width
        return BoundaryArc(self.sector * w, (self.sector + 1) * w)

    @property
    def center(self) -> complex:
        """Midpoint of the square's part outside the central cell.

        Level 1 keeps only the circle |z| = 1/2, so its centre sits there.
        """
        radius = max(1.0 - 1.5 * self.side, CENTRAL_RADIUS)
        theta = (self.sector + 0.5) * self.angular_width
        return radius * complex(math.cos(theta), math.sin(theta))

    def contains(self, z: PointLike) -> bool:
        zz = as_complex(z)
        gap = 1.0 - abs(zz)
        l = self.side
        if not l <= gap < 2.0 * l:
            return False
        theta = normalize_angle(math.atan2(zz.imag, zz.real))
        w = self.angular_width
        return self.sector * w <= theta < (self.sector + 1) * w

    def polar_points(self, gap_fraction: np.ndarray, angle_fraction: np.ndarray) -> np.ndarray:
        """Map unit-square coordinates in [0, 1] onto the square.

        ``gap_fraction`` 0 is the outer edge 1-|z| = l, 1 the inner edge 1-|z| = 2l.
        """
        l = self.side
        radius = 1.0 - l * (1.0 + np.asarray(gap_fraction))
        theta = (self.sector + np.asarray(angle_fraction)) * self.angular_width
        return radius * np.exp(1j * theta)

    def sample_grid(self, n: int) -> np.ndarray:
        """n x n grid over the closed square, flattened."""
        u = np.linspace(0.0, 1.0, n)
        gu, gv = np.meshgrid(u, u, indexing="ij")
        return self.polar_points(gu.ravel(), gv.ravel())

    def boundary_samples(self, per_edge: int = 16) -> np.ndarray:
        """Points along the four edges of the closed square."""
        u = np.linspace(0.0, 1.0, per_edge)
        zeros, ones = np.zeros_like(u), np.ones_like(u)
        return np.concatenate(
            [
                self.polar_points(zeros, u),
                self.polar_points(ones, u),
                self.polar_points(u, zeros),
                self.polar_points(u, ones),
            ]
        )

    def __str__(self) -> str:
        return f"Q({self.level},{self.sector})"


WhitneyCell = Union[WhitneySquare, CentralCell]


def _level_from_gap(gap: float) -> int:
    # 2^-k <= gap < 2^(1-k); frexp gives gap = m 2^e with m in [1/2, 1)
    _, e = math.frexp(gap)
    return 1 - e


def whitney_index(z: PointLike) -> tuple[int, int]:
    """Level and sector of the dyadic square containing z.

    Raises:
        CentralCellError: If |z| < 1/2.
    """
    zz = as_complex(z)
    r = abs(zz)
    if r < CENTRAL_RADIUS:
        raise CentralCellError(f"|z| = {r} < 1/2 lies in the central cell")
    k = _level_from_gap(1.0 - r)
    theta = normalize_angle(math.atan2(zz.imag, zz.real))
    sectors = 2**k
    j = min(int(theta / (TWO_PI / sectors)), sectors - 1)
    return k, j


def locate_cell(z: PointLike) -> WhitneyCell:
    """The cell owning z: the central cell for |z| < 1/2, otherwise a dyadic square."""
    if abs(as_complex(z)) < CENTRAL_RADIUS:
        return CENTRAL_CELL
    return WhitneySquare(*whitney_index(z))


def whitney_index_many(zs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``whitney_index``; level 0 marks central-cell points."""
    r = np.abs(zs)
    _, e = np.frexp(1.0 - r)
    levels = (1 - e).astype(np.int64)
    theta = np.mod(np.angle(zs), TWO_PI)
    theta = np.where(theta >= TWO_PI, 0.0, theta)
    sectors = np.floor(theta / (TWO_PI * np.ldexp(1.0, -levels))).astype(np.int64)
    sectors = np.minimum(sectors, (1 << np.maximum(levels, 0)) - 1)
    central = r < CENTRAL_RADIUS
    levels = np.where(central, 0, levels)
    sectors = np.where(central, 0, sectors)
    return levels, sectors


def whitney_neighbors(square: WhitneySquare) -> frozenset[WhitneyCell]:
    """All cells whose closure meets the closure of ``square``, including itself."""
    k, j = square.level, square.sector
    cells: set[WhitneyCell] = set()

    n = 2**k
    for dj in (-1, 0, 1):
        cells.add(WhitneySquare(k, (j + dj) % n))

    if k == 1:
        cells.add(CENTRAL_CELL)
    else:
        n_parent = 2 ** (k - 1)
        parent = j // 2
        cells.add(WhitneySquare(k - 1, parent))
        # the shared corner touches one more parent-level square
        other = parent - 1 if j % 2 == 0 else parent + 1
        cells.add(WhitneySquare(k - 1, other % n_parent))

    n_child = 2 ** (k + 1)
    for jj in (2 * j - 1, 2 * j, 2 * j + 1, 2 * j + 2):
        cells.add(WhitneySquare(k + 1, jj % n_child))

    return frozenset(cells)


def central_neighbors() -> frozenset[WhitneyCell]:
    """Cells touching the central cell."""
    return frozenset({CENTRAL_CELL, WhitneySquare(1, 0), WhitneySquare(1, 1)})


def squares_up_to(depth: int) -> list[WhitneySquare]:
    """All dyadic squares of levels 1..depth, ordered by decreasing side then sector."""
    return [WhitneySquare(k, j) for k in range(1, depth + 1) for j in range(2**k)]


def square_distance(first: WhitneySquare, second: WhitneySquare, per_edge: int = 16) -> float:
    """Minimum pseudohyperbolic distance between the boundaries of two squares."""
    if first == second:
        return 0.0
    a = first.boundary_samples(per_edge)
    b = second.boundary_samples(per_edge)
    rho = np.abs(a[:, None] - b[None, :]) / np.abs(1.0 - np.conj(b)[None, :] * a[:, None])
    return float(np.min(rho))


def unit_square_samples(count: int, seed: Optional[int] = None) -> np.ndarray:
    """Deterministic low-discrepancy points of [0, 1]^2, shape (count, 2).

    Without a seed the unscrambled Halton sequence is used, whose first point is the
    corner (0, 0); with a seed the sequence is scrambled reproducibly.
    """
    if count <= 0:
        return np.zeros((0, 2))
    sampler = qmc.Halton(d=2, scramble=seed is not None, seed=seed)
    return sampler.random(count)
