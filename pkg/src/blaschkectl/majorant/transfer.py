"""Transfer estimates between -log|B|, H_Λ and majorant data.

These checks evaluate, at desk scale, the inequalities that carry a majorant from one set
to another: point relocation away from the zeros, the comparison of -log|B| at nearby
points, and the explicit majorant built from square counts.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from ..blaschke import (
    ZeroSet,
    census,
    log_modulus,
    log_modulus_many,
    pseudo_dist_to_set,
    pseudo_dist_to_set_many,
)
from ..const import DEFAULT_PER_SQUARE, LEMMA4_C0, THEOREM4_C1, THEOREM4_C3
from ..errors import ConstructionError, DomainError, PreconditionError
from ..harmonic import HarmonicFn, H_Lambda_fn
from ..hypgeo import (
    DiskPoint,
    PointLike,
    WhitneySquare,
    as_array,
    as_complex,
    mobius_many,
    pseudo_dist_many,
)
from .sampling import sample_target_set

logger = logging.getLogger(__name__)

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
LEMMA4_MAX_CANDIDATES = 20_000


# ==================== Point Relocation ====================


def _spiral(radius: float, count: int) -> np.ndarray:
    """Golden-angle spiral of ``count`` points filling the disc |w| <= radius, from 0."""
    k = np.arange(count)
    return radius * np.sqrt(k / count) * np.exp(1j * GOLDEN_ANGLE * k)


def count_in_disk(zeros: ZeroSet, z: PointLike, t: float) -> int:
    """Zeros with multiplicity inside D_ρ(z, t)."""
    if not len(zeros):
        return 0
    rho = pseudo_dist_many(zeros.array, as_complex(z))
    return int(np.sum(zeros.weights[rho < t]))


def lemma4_search(
    zeros: ZeroSet, h: HarmonicFn, z: PointLike, c0: float = LEMMA4_C0
) -> DiskPoint:
    """A point z̃ with ρ(z̃, Λ) >= e^{-H(z̃)} and ρ(z̃, z) <= e^{-H(z)/C0}.

    Candidates fill D_ρ(z, e^{-H(z)/C0}) along a golden-angle spiral in the coordinates
    w = φ_z(z̃), starting at z itself; the first whose disk of radius e^{-H} misses Λ wins.

    Raises:
        PreconditionError: If e^{H(z)} < max(C0, #Λ ∩ D_ρ(z, 1/2)).
        ConstructionError: If no candidate qualifies.
    """
    zz = as_complex(z)
    hz = h(zz)
    needed = max(c0, count_in_disk(zeros, zz, 0.5))
    if hz < math.log(needed):
        raise PreconditionError(
            f"H(z) = {hz:.6g} is below log max(C0, count) = {math.log(needed):.6g}"
        )
    if not len(zeros):
        return DiskPoint.from_complex(zz)

    radius = math.exp(-hz / c0) * (1.0 - 1e-12)
    packing = (radius / math.exp(-hz)) ** 2
    count = int(min(LEMMA4_MAX_CANDIDATES, max(64.0, 4.0 * packing)))
    candidates = mobius_many(zz, _spiral(radius, count))

    rho = pseudo_dist_to_set_many(zeros, candidates)
    with np.errstate(divide="ignore"):
        ok = np.log(rho) >= -h(candidates)
    hits = np.flatnonzero(ok)
    if not hits.size:
        raise ConstructionError(
            f"no Λ-free disk among {count} candidates around {zz}; the hypothesis margin "
            "is too thin at this scale"
        )
    found = complex(candidates[hits[0]])
    logger.debug("lemma4: candidate %d of %d at %s", int(hits[0]), count, found)
    return DiskPoint.from_complex(found)


# ==================== Transfer Ratio ====================


@dataclass(frozen=True)
class TransferRow:
    point: complex
    moved: Optional[complex]
    lhs: float
    rhs: float
    ratio: float
    hypothesis: bool = True


@dataclass
class TransferReport:
    rows: list[TransferRow] = field(default_factory=list)
    skipped: int = 0

    @property
    def max_ratio(self) -> float:
        ratios = [r.ratio for r in self.rows if r.hypothesis]
        return max(ratios, default=1.0)

    @property
    def finite(self) -> bool:
        return math.isfinite(self.max_ratio)


def theorem3_transfer_check(
    zeros: ZeroSet,
    h: HarmonicFn,
    c: float,
    samples: Sequence[PointLike],
    c0: float = LEMMA4_C0,
) -> TransferReport:
    """Compare -log|B(z)| with -log|B(z̃)| + H_Λ(z̃) after relocating z by ``lemma4_search``.

    Samples outside e^{-cH(z)} <= ρ(z, Λ) <= 1/C0 are skipped. Relocation uses the level
    cH; samples where its hypothesis fails are recorded and excluded from the ratio.

    Raises:
        DomainError: If c <= 1.
    """
    if c <= 1.0:
        raise DomainError(f"C must exceed 1, got {c}")
    report = TransferReport()
    points = as_array(samples)
    if not len(zeros):
        report.rows = [TransferRow(complex(z), complex(z), 0.0, 0.0, 1.0) for z in points]
        return report

    level = h.scaled(c)
    h_lambda = H_Lambda_fn(zeros)
    rho = pseudo_dist_to_set_many(zeros, points)
    floor = np.exp(-level(points)) if points.size else np.zeros(0)
    for z, r, f in zip(points, rho, floor):
        if not f <= r <= 1.0 / c0:
            report.skipped += 1
            continue
        lhs = -log_modulus(zeros, complex(z))
        try:
            moved = lemma4_search(zeros, level, complex(z), c0).z
        except PreconditionError:
            report.rows.append(TransferRow(complex(z), None, lhs, math.nan, math.nan, False))
            continue
        rhs = -log_modulus(zeros, moved) + h_lambda(moved)
        ratio = 1.0 if lhs == rhs == 0.0 else (lhs / rhs if rhs > 0.0 else math.inf)
        report.rows.append(TransferRow(complex(z), moved, lhs, rhs, ratio))
    logger.debug(
        "transfer check: %d rows, %d skipped, max ratio %.6g",
        len(report.rows),
        report.skipped,
        report.max_ratio,
    )
    return report


# ==================== Multiplicity Majorant ====================


@dataclass(frozen=True)
class SquareCheck:
    square: WhitneySquare
    count: int
    h_value: float
    h1_value: float

    @property
    def holds(self) -> bool:
        return self.count * self.h_value <= self.h1_value * (1.0 + 1e-12)


@dataclass
class Theorem4Report:
    squares: list[SquareCheck] = field(default_factory=list)
    corollary_sum: float = 0.0
    majorant_checked: bool = False
    majorant_margin: float = math.inf
    sample_size: int = 0

    @property
    def hypothesis_holds(self) -> bool:
        return all(s.holds for s in self.squares)

    @property
    def majorant_holds(self) -> bool:
        return self.majorant_checked and self.majorant_margin >= 0.0


def theorem4_check(
    zeros: ZeroSet,
    h: HarmonicFn,
    h1: HarmonicFn,
    depth: int,
    per_square: int = DEFAULT_PER_SQUARE,
    c1: float = THEOREM4_C1,
    c3: float = THEOREM4_C3,
    seed: Optional[int] = None,
) -> Theorem4Report:
    """Check N(Q)H(z(Q)) <= H1(z(Q)) on occupied squares and test C1·H_Λ + C3·H1.

    The corollary sum Σ N(Q) H(z(Q)) l(Q) is always reported; the explicit majorant is
    checked on the filtered level-H sample only when the hypothesis holds.
    """
    report = Theorem4Report()
    counts = census(zeros)
    for square in counts.occupied(depth):
        z_q = square.center
        report.squares.append(SquareCheck(square, counts.n(square), h(z_q), h1(z_q)))
    report.corollary_sum = float(
        sum(s.count * s.h_value * s.square.side for s in report.squares)
    )
    if not report.hypothesis_holds:
        return report

    candidate = H_Lambda_fn(zeros).scaled(c1) + h1.scaled(c3)
    sample = sample_target_set(zeros, h, depth, per_square, seed=seed)
    report.sample_size = len(sample)
    report.majorant_checked = True
    if len(sample) and len(zeros):
        margin = candidate(sample.points) - sample.targets(zeros)
        report.majorant_margin = float(np.min(margin))
    return report


# ==================== Square Sum Ratios ====================


def lemma1_ratio(zeros: ZeroSet, samples: Sequence[PointLike]) -> float:
    """sup of -log|B| / H_Λ over samples with ρ(z, Λ) >= 1/2; 0 for an empty set."""
    if not len(zeros):
        return 0.0
    points = as_array(samples)
    points = points[pseudo_dist_to_set_many(zeros, points) >= 0.5]
    if not points.size:
        return 0.0
    ratio = -log_modulus_many(zeros, points) / H_Lambda_fn(zeros)(points)
    return float(np.max(ratio))


@dataclass(frozen=True)
class CompanionReport:
    """How closely a companion sequence A follows Λ."""

    gamma: float
    multiplicity: int


def companion_radius(zeros: ZeroSet, companion: ZeroSet) -> CompanionReport:
    """γ = max ρ(a, Λ) over a ∈ A and the most points of A in any D_ρ(λ, γ)."""
    if not len(companion):
        return CompanionReport(0.0, 0)
    if not len(zeros):
        raise DomainError("companion radius needs a nonempty zero set")
    gamma = max(pseudo_dist_to_set(zeros, a) for a in companion.points)
    k = max(
        int(np.sum(companion.weights[pseudo_dist_many(companion.array, lam) <= gamma]))
        for lam in zeros.points
    )
    return CompanionReport(gamma, k)


def lemma2_ratio(
    zeros: ZeroSet, companion: ZeroSet, delta: float, samples: Sequence[PointLike]
) -> float:
    """sup of Σ_{ρ(a,z) > δ} log ρ(a, z)^{-1} / H_Λ(z) over the samples."""
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    if not len(companion):
        return 0.0
    if not len(zeros):
        raise DomainError("lemma2 ratio needs a nonempty zero set")
    points = as_array(samples)
    if not points.size:
        return 0.0
    rho = np.abs(points[:, None] - companion.array[None, :]) / np.abs(
        1.0 - np.conj(companion.array)[None, :] * points[:, None]
    )
    terms = np.where(rho > delta, -np.log(np.where(rho > delta, rho, 1.0)), 0.0)
    total = terms @ companion.weights
    return float(np.max(total / H_Lambda_fn(zeros)(points)))


# ==================== Corona Hypothesis ====================


@dataclass(frozen=True)
class CoronaRow:
    index: int
    point: complex
    margin: float

    @property
    def holds(self) -> bool:
        return self.margin >= 0.0


def corona_hypothesis(
    zeros_b: ZeroSet, witnesses: Sequence[ZeroSet], h: HarmonicFn, c: float
) -> list[CoronaRow]:
    """Per zero λ_k of B: log(Σ_i |B_i(λ_k)|) + C·H(λ_k)."""
    if not witnesses:
        raise DomainError("the corona hypothesis needs at least one witness")
    if not len(zeros_b):
        return []
    logs = np.vstack([log_modulus_many(w, zeros_b.array) for w in witnesses])
    with np.errstate(divide="ignore"):
        total = logsumexp(logs, axis=0)
    margins = total + c * h(zeros_b.array)
    return [
        CoronaRow(k, complex(z), float(m)) for k, (z, m) in enumerate(zip(zeros_b.array, margins))
    ]
