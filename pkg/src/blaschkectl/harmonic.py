"""Positive harmonic functions as Poisson integrals of boundary measures.

A ``BoundaryMeasure`` is a finite sum of point masses and arcs of constant density; its
Poisson integral is evaluated in closed form (the harmonic measure of an arc is the
normalized length of its image under the automorphism sending z to 0). The module also
holds h_Q, H_Λ, Harnack bounds and the inductive builder of harmonic functions with
prescribed growth on a sequence of Whitney squares.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np
from scipy.integrate import quad

from .blaschke import ZeroSet
from .const import HQ_LOWER_BOUND_C, LEMMA3_GRID
from .errors import ConstructionError, DomainError, ParseError
from .hypgeo import (
    TWO_PI,
    BoundaryArc,
    PointLike,
    WhitneySquare,
    as_complex,
    privalov_shadow,
    pseudo_dist,
    squares_up_to,
    unit_square_samples,
)

logger = logging.getLogger(__name__)


# ==================== Kernels ====================


def poisson_kernel(z: PointLike, theta: float) -> float:
    """(1 - |z|^2) / |e^{iθ} - z|^2."""
    zz = as_complex(z)
    return (1.0 - abs(zz) ** 2) / abs(complex(math.cos(theta), math.sin(theta)) - zz) ** 2


def poisson_kernel_many(zs: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Kernel matrix of shape (len(zs), len(thetas))."""
    zs = np.asarray(zs, dtype=complex)
    xi = np.exp(1j * np.asarray(thetas, dtype=float))
    return (1.0 - np.abs(zs) ** 2)[:, None] / np.abs(xi[None, :] - zs[:, None]) ** 2


def _arc_measure_matrix(zs: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Harmonic measure of each arc [lo_k, hi_k] at each point z_i."""
    z = zs[:, None]
    length = np.minimum(hi - lo, TWO_PI)[None, :]
    ea = np.exp(1j * lo)[None, :]
    eb = np.exp(1j * hi)[None, :]
    pa = (ea - z) / (1.0 - np.conj(z) * ea)
    pb = (eb - z) / (1.0 - np.conj(z) * eb)
    delta = np.mod(np.angle(pb) - np.angle(pa), TWO_PI)

    # the image length is pinned between len (1-r)/(1+r) and len (1+r)/(1-r);
    # use that to undo wrap-around from rounding near 0 and 2π
    r = np.abs(z)
    upper = length * (1.0 + r) / (1.0 - r)
    lower = length * (1.0 - r) / (1.0 + r)
    delta = np.where((upper < math.pi) & (delta > math.pi), 0.0, delta)
    delta = np.where((lower > math.pi) & (delta < math.pi), TWO_PI, delta)
    omega = delta / TWO_PI
    return np.where(length >= TWO_PI, 1.0, omega)


def harmonic_measure_many(zs: np.ndarray, arc: BoundaryArc) -> np.ndarray:
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    return _arc_measure_matrix(zs, np.array([arc.theta_lo]), np.array([arc.theta_hi]))[:, 0]


def harmonic_measure(z: PointLike, arc: BoundaryArc) -> float:
    """Normalized Poisson integral of the arc's indicator at z, in [0, 1]."""
    return float(harmonic_measure_many(np.array([as_complex(z)]), arc)[0])


def harmonic_measure_quadrature(z: PointLike, arc: BoundaryArc) -> float:
    """Adaptive-quadrature evaluation of ``harmonic_measure``, used as an oracle."""
    zz = as_complex(z)
    breaks = []
    theta0 = math.atan2(zz.imag, zz.real)
    for shift in (-TWO_PI, 0.0, TWO_PI, 2 * TWO_PI):
        t = theta0 + shift
        if arc.theta_lo < t < arc.theta_hi:
            breaks.append(t)

    def integrand(theta: float) -> float:
        return poisson_kernel(zz, theta) / TWO_PI

    value, _ = quad(
        integrand,
        arc.theta_lo,
        arc.theta_hi,
        points=breaks or None,
        limit=500,
        epsabs=1e-13,
        epsrel=1e-12,
    )
    return value


def h_Q(square: WhitneySquare, z: PointLike) -> float:
    """Harmonic measure of the radial projection I(Q) of a Whitney square."""
    return harmonic_measure(z, square.arc)


def h_Q_many(square: WhitneySquare, zs: np.ndarray) -> np.ndarray:
    return harmonic_measure_many(zs, square.arc)


# ==================== Measures and Harmonic Functions ====================


@dataclass(frozen=True)
class BoundaryMeasure:
    """Finite positive measure on the circle: point masses plus constant-density arcs.

    Arc densities are per radian and enter Poisson integrals with the 1/2π
    normalization, so an arc of density d contributes d times its harmonic measure.
    """

    atom_thetas: tuple[float, ...] = ()
    atom_masses: tuple[float, ...] = ()
    arcs: tuple[BoundaryArc, ...] = ()
    densities: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.atom_thetas) != len(self.atom_masses):
            raise DomainError("atom angles and masses differ in length")
        if len(self.arcs) != len(self.densities):
            raise DomainError("arcs and densities differ in length")
        for value in (*self.atom_masses, *self.densities):
            if not value >= 0.0 or not math.isfinite(value):
                raise DomainError(f"measure weights must be finite and >= 0, got {value}")

    @cached_property
    def _atom_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.atom_thetas, dtype=float), np.array(self.atom_masses, dtype=float)

    @cached_property
    def _arc_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        lo = np.array([a.theta_lo for a in self.arcs], dtype=float)
        hi = np.array([a.theta_hi for a in self.arcs], dtype=float)
        return lo, hi, np.array(self.densities, dtype=float)

    @property
    def total_mass(self) -> float:
        arcs = sum(d * a.length for a, d in zip(self.arcs, self.densities)) / TWO_PI
        return float(sum(self.atom_masses) + arcs)

    def __add__(self, other: "BoundaryMeasure") -> "BoundaryMeasure":
        return BoundaryMeasure(
            self.atom_thetas + other.atom_thetas,
            self.atom_masses + other.atom_masses,
            self.arcs + other.arcs,
            self.densities + other.densities,
        )

    def scaled(self, factor: float) -> "BoundaryMeasure":
        if factor < 0.0:
            raise DomainError("measures can only be scaled by nonnegative factors")
        return BoundaryMeasure(
            self.atom_thetas,
            tuple(m * factor for m in self.atom_masses),
            self.arcs,
            tuple(d * factor for d in self.densities),
        )

    def poisson_integral(self, zs: np.ndarray, block: int = 4096) -> np.ndarray:
        """Poisson integral at every point of ``zs``."""
        zs = np.atleast_1d(np.asarray(zs, dtype=complex))
        out = np.zeros(zs.shape[0])
        thetas, masses = self._atom_arrays
        lo, hi, dens = self._arc_arrays
        for start in range(0, zs.shape[0], block):
            chunk = zs[start : start + block]
            if thetas.size:
                out[start : start + block] += poisson_kernel_many(chunk, thetas) @ masses
            if lo.size:
                out[start : start + block] += _arc_measure_matrix(chunk, lo, hi) @ dens
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "atoms": [{"theta": t, "mass": m} for t, m in zip(self.atom_thetas, self.atom_masses)],
            "arcs": [
                {"lo": a.theta_lo, "hi": a.theta_hi, "density": d}
                for a, d in zip(self.arcs, self.densities)
            ],
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "BoundaryMeasure":
        try:
            atoms = raw.get("atoms", [])
            arcs = raw.get("arcs", [])
            return cls(
                tuple(float(a["theta"]) for a in atoms),
                tuple(float(a["mass"]) for a in atoms),
                tuple(BoundaryArc(float(a["lo"]), float(a["hi"])) for a in arcs),
                tuple(float(a["density"]) for a in arcs),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed boundary measure: {exc}")


@dataclass(frozen=True)
class HarmonicFn:
    """Positive harmonic function given by the Poisson integral of a measure."""

    measure: BoundaryMeasure = field(default_factory=BoundaryMeasure)

    @classmethod
    def constant(cls, value: float) -> "HarmonicFn":
        return cls(BoundaryMeasure(arcs=(BoundaryArc.full_circle(),), densities=(float(value),)))

    @classmethod
    def atom(cls, theta: float, mass: float = 1.0) -> "HarmonicFn":
        return cls(BoundaryMeasure(atom_thetas=(float(theta),), atom_masses=(float(mass),)))

    @classmethod
    def from_squares(
        cls, squares: Sequence[WhitneySquare], coefficients: Sequence[float]
    ) -> "HarmonicFn":
        """Σ μ_m h_{Q_m}."""
        return cls(
            BoundaryMeasure(
                arcs=tuple(q.arc for q in squares),
                densities=tuple(float(c) for c in coefficients),
            )
        )

    @property
    def total_mass(self) -> float:
        return self.measure.total_mass

    def __call__(self, z: Union[PointLike, np.ndarray]) -> Any:
        if isinstance(z, np.ndarray):
            return self.measure.poisson_integral(z)
        return float(self.measure.poisson_integral(np.array([as_complex(z)]))[0])

    def __add__(self, other: "HarmonicFn") -> "HarmonicFn":
        return HarmonicFn(self.measure + other.measure)

    def scaled(self, factor: float) -> "HarmonicFn":
        return HarmonicFn(self.measure.scaled(factor))

    def to_dict(self) -> dict[str, Any]:
        return self.measure.to_dict()

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "HarmonicFn":
        return cls(BoundaryMeasure.from_dict(raw))


def H_Lambda_fn(zeros: ZeroSet) -> HarmonicFn:
    """H_Λ: unnormalized Poisson integrals over the Privalov shadows, with multiplicity."""
    arcs = tuple(privalov_shadow(z) for z in zeros.points)
    return HarmonicFn(
        BoundaryMeasure(arcs=arcs, densities=tuple(TWO_PI * n for n in zeros.mults))
    )


def H_Lambda(zeros: ZeroSet, z: PointLike) -> float:
    """2π Σ_k N_k ω(z, I_k)."""
    if not len(zeros):
        return 0.0
    return H_Lambda_fn(zeros)(z)


# ==================== Harnack ====================


@dataclass(frozen=True)
class HarnackBounds:
    """Sharp range of H(z)/H(w) for positive harmonic H with ρ(z, w) = r."""

    r: float
    lo: float
    hi: float

    def contains(self, ratio: float, rtol: float = 1e-12) -> bool:
        return self.lo * (1.0 - rtol) <= ratio <= self.hi * (1.0 + rtol)


def harnack_bounds(z: PointLike, w: PointLike) -> HarnackBounds:
    r = pseudo_dist(z, w)
    return HarnackBounds(r, (1.0 - r) / (1.0 + r), (1.0 + r) / (1.0 - r))


@lru_cache(maxsize=None)
def square_harnack_gamma(level: int = 8, per_edge: int = 24) -> float:
    """γ = (1 - d)/(1 + d) for the pseudohyperbolic diameter d of a Whitney square.

    The diameter is attained on the boundary and is nearly level-independent; level 8
    is representative of every deep square.
    """
    pts = WhitneySquare(level, 0).boundary_samples(per_edge)
    rho = np.abs(pts[:, None] - pts[None, :]) / np.abs(1.0 - np.conj(pts)[None, :] * pts[:, None])
    d = float(np.max(rho))
    return (1.0 - d) / (1.0 + d)


# ==================== Calibration ====================


def square_samples(square: WhitneySquare, count: int) -> np.ndarray:
    """``count`` fixed low-discrepancy points of the closed square, corners first."""
    corners = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    if count > 4:
        # the Halton sequence opens on the corner (0, 0), already present
        uv = np.vstack([corners, unit_square_samples(count - 3)[1:]])
    else:
        uv = corners[:count]
    return square.polar_points(uv[:, 0], uv[:, 1])


def calibrate_hq_constant(levels: int = 12, samples: int = 200) -> dict[int, float]:
    """Per-level minimum of h_Q over sample points of Q."""
    minima: dict[int, float] = {}
    for square in squares_up_to(levels):
        value = float(np.min(h_Q_many(square, square_samples(square, samples))))
        minima[square.level] = min(value, minima.get(square.level, math.inf))
    logger.debug("h_Q calibration minima: %s", minima)
    return minima


# ==================== Inductive Builder ====================


@dataclass(frozen=True)
class CertificateRow:
    """sup over Q_j of the k-th partial sum against M_j + Σ_{m<=k} 2^{-m/2}."""

    step: int
    index: int
    sup: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.sup <= self.bound + 1e-12 * max(1.0, abs(self.bound))


@dataclass
class Lemma3Result:
    h: HarmonicFn
    selected: list[int]
    coefficients: list[float]
    radii: list[float]
    certificate: list[CertificateRow]
    selected_sups: list[float]
    partial_constant: float
    hq_constant: float = HQ_LOWER_BOUND_C
    branches: list[str] = field(default_factory=list)

    @property
    def certificate_holds(self) -> bool:
        return all(row.holds for row in self.certificate)

    @property
    def growth_holds(self) -> bool:
        """sup over Q_{j_m} of H is at least c 2^{m/2} for every selection."""
        return all(
            s >= self.hq_constant * 2.0 ** ((m + 1) / 2.0) for m, s in enumerate(self.selected_sups)
        )


def _per_square_max(values: np.ndarray, per_square: int) -> np.ndarray:
    return values.reshape(-1, per_square).max(axis=1)


def _admissible_radius(
    sides: np.ndarray, room: np.ndarray, mu: float, ceiling: float
) -> Optional[float]:
    """Largest side R below ``ceiling`` with room >= mu on every square of side <= R."""
    for s in sorted(set(sides[sides < ceiling].tolist()), reverse=True):
        if np.all(room[sides <= s] >= mu):
            return s
    return None


def lemma3_build(
    squares: Sequence[WhitneySquare],
    bounds: Sequence[float],
    grid: int = LEMMA3_GRID,
    max_selections: Optional[int] = None,
) -> Lemma3Result:
    """Build H = Σ_m 2^{m/2} h_{Q_{j_m}} with sup_{Q_j} H <= M_j + C0.

    At step k the radius R is the largest input side below the last selection such that
    every square with side <= R leaves room M_j - sup H^(k) >= 2^{(k+1)/2}; the next
    selection is the first square with side <= R whose h_Q stays below 2^{-k-1} on the
    sample grids of all larger squares.

    A finite input often runs out before those thresholds are met. The step then takes
    the first square smaller than the last selection whose term keeps the partial-sum
    bound on every sample grid; ``branches`` records which rule made each selection.

    Raises:
        DomainError: If the input is not ordered by nonincreasing side, has repeated
            squares, or nonpositive bounds.
        ConstructionError: If no square can be selected, or fewer than
            ``max_selections`` could be.
    """
    n = len(squares)
    if n != len(bounds):
        raise DomainError("squares and bounds differ in length")
    if n == 0:
        raise ConstructionError("no input squares")
    if len(set(squares)) != n:
        raise DomainError("input squares must be distinct")
    sides = np.array([q.side for q in squares])
    if np.any(np.diff(sides) > 0):
        raise DomainError("input squares must have nonincreasing side lengths")
    m_bounds = np.asarray(bounds, dtype=float)
    if np.any(m_bounds <= 0.0):
        raise DomainError("bounds M_j must be positive")

    per_square = grid * grid
    points = np.concatenate([q.sample_grid(grid) for q in squares])
    values = np.zeros(points.shape[0])
    sups = np.zeros(n)

    selected: list[int] = []
    coefficients: list[float] = []
    radii: list[float] = []
    branches: list[str] = []
    certificate: list[CertificateRow] = []
    partial = 0.0
    step = 0

    while max_selections is None or step < max_selections:
        mu = 2.0 ** ((step + 1) / 2.0)
        ceiling = sides[selected[-1]] if selected else math.inf
        candidates = np.flatnonzero(sides < ceiling)
        if candidates.size == 0:
            logger.debug("step %d: no smaller square left, stopping", step + 1)
            break

        branch = "threshold"
        radius = _admissible_radius(sides, m_bounds - sups, mu, ceiling)
        choice = None
        if radius is not None:
            far_points = points[np.repeat(sides > radius, per_square)]
            threshold = 2.0 ** (-(step + 1))
            for idx in np.flatnonzero(sides <= radius):
                if far_points.size == 0 or np.max(h_Q_many(squares[idx], far_points)) < threshold:
                    choice = int(idx)
                    break
        if choice is None:
            # finite input: take the first smaller square that keeps (recdom) on every grid
            branch = "certificate"
            limit = m_bounds + (partial + 2.0 ** (-(step + 1) / 2.0))
            for idx in candidates:
                trial = _per_square_max(values + mu * h_Q_many(squares[idx], points), per_square)
                if np.all(trial <= limit):
                    choice = int(idx)
                    radius = float(sides[idx])
                    break
        if choice is None:
            logger.debug("step %d: no square keeps the certificate, stopping", step + 1)
            break

        values += mu * h_Q_many(squares[choice], points)
        sups = _per_square_max(values, per_square)
        step += 1
        partial += 2.0 ** (-step / 2.0)
        selected.append(choice)
        coefficients.append(mu)
        radii.append(radius)
        branches.append(branch)
        certificate.extend(
            CertificateRow(step, j, float(sups[j]), float(m_bounds[j] + partial)) for j in range(n)
        )
        logger.debug(
            "step %d: selected square %s (%s, radius %g)", step, squares[choice], branch, radius
        )

    if not selected:
        raise ConstructionError(
            "no input square keeps the partial-sum certificate; "
            "supply squares with larger bounds M_j"
        )
    if max_selections is not None and len(selected) < max_selections:
        raise ConstructionError(
            f"input exhausted after {len(selected)} of {max_selections} selections"
        )

    return Lemma3Result(
        h=HarmonicFn.from_squares([squares[i] for i in selected], coefficients),
        selected=selected,
        coefficients=coefficients,
        radii=radii,
        certificate=certificate,
        selected_sups=[float(sups[i]) for i in selected],
        partial_constant=partial,
        branches=branches,
    )


def evaluate(h: HarmonicFn, points: Iterable[PointLike]) -> np.ndarray:
    """Evaluate ``h`` at an iterable of points."""
    return h(np.array([as_complex(p) for p in points], dtype=complex))
