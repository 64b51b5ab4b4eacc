"""A Blaschke product telling the filter levels H and (1 + η0)H apart.

Each accepted Whitney square Q_k receives a zero of multiplicity N_k at its centre z_k and a
maximal e^{-(1+η)H(z_k)}-separated packing of D_ρ(z_k, R_k). At level H the packing hides
the whole disk, so the majorant of -log|B| stays bounded; at level (1 + η0)H points at
distance e^{-(1+η)H(z_k)} from z_k survive, where -log|B| >= N_k (1 + η) H(z_k).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from ..blaschke import ZeroSet, log_modulus, pseudo_dist_to_set_many
from ..const import (
    DEFAULT_BAND_GAMMA,
    DEFAULT_POINT_CAP,
    SQUARE_SEPARATION,
    SquareBranch,
    Thinning,
)
from ..errors import PreconditionError
from ..harmonic import HarmonicFn, square_harnack_gamma
from ..hypgeo import (
    WhitneySquare,
    mobius_many,
    pseudo_circle,
    square_distance,
    whitney_index_many,
)
from ..majorant.sampling import filter_points
from .records import Check, ConstructionLog, ConstructionRecord

logger = logging.getLogger(__name__)

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
DEFAULT_CLAIM_ANGLES = 64
# spiral candidate spacing in units of the packing separation
_PACKING_SPACING = 0.25


# ==================== Parameters ====================


@dataclass(frozen=True)
class Thm5bParams:
    """Inputs of the discriminating construction.

    ``gamma`` sets the selection band [γ³, γ²] log(1/l) / (2(1 + η)). The sharp Harnack
    constant of a Whitney square (``square_harnack_gamma``, about 0.024) puts the band
    below 0.002 through level 14, where no square carries an H large enough for the
    claims, so the band defaults to DEFAULT_BAND_GAMMA. ``min_level`` defaults to the
    level after max_depth // 2.
    """

    h: HarmonicFn
    eta0: float = 1.0
    eta: float = 0.5
    max_depth: int = 14
    point_cap: int = DEFAULT_POINT_CAP
    gamma: Optional[float] = None
    thinning: Thinning = Thinning.GREEDY
    min_level: Optional[int] = None
    claim_angles: int = DEFAULT_CLAIM_ANGLES

    def __post_init__(self):
        if not self.eta0 > 0.0:
            raise PreconditionError(f"eta0 must be positive, got {self.eta0}")
        if not 0.0 < self.eta < self.eta0:
            raise PreconditionError(f"eta must lie in (0, eta0 = {self.eta0}), got {self.eta}")
        if not 1 <= self.first_level <= self.max_depth:
            raise PreconditionError(
                f"need 1 <= min_level <= max_depth, got {self.first_level}, {self.max_depth}"
            )
        if self.point_cap < 1:
            raise PreconditionError(f"point cap must be >= 1, got {self.point_cap}")
        if self.gamma is not None and not 0.0 < self.gamma <= 1.0:
            raise PreconditionError(f"gamma must lie in (0, 1], got {self.gamma}")
        if self.claim_angles < 1:
            raise PreconditionError(f"claim angles must be >= 1, got {self.claim_angles}")

    @property
    def resolved_gamma(self) -> float:
        return self.gamma if self.gamma is not None else DEFAULT_BAND_GAMMA

    @property
    def first_level(self) -> int:
        return self.min_level if self.min_level is not None else self.max_depth // 2 + 1


# ==================== Packing ====================


@dataclass(frozen=True)
class Packing:
    points: np.ndarray
    capped: bool
    expected: float


def greedy_packing(center: complex, radius: float, separation: float, cap: int) -> Packing:
    """Greedy maximal ``separation``-separated subset of D_ρ(center, radius).

    Candidates follow a golden-angle spiral in the coordinates w = φ_center(z), where the
    pseudohyperbolic metric is unchanged; ``center`` itself counts as already placed and is
    not returned.
    """
    expected = radius * radius / (separation * separation)
    spacing = _PACKING_SPACING * separation * (1.0 - radius * radius)
    count = math.ceil(math.pi * radius * radius / (spacing * spacing))
    capped = count > 4 * cap
    count = min(count, 4 * cap)

    k = np.arange(1, count + 1)
    w = radius * np.sqrt(k / count) * np.exp(1j * GOLDEN_ANGLE * k)
    tree = cKDTree(np.column_stack([w.real, w.imag]))
    reach = separation * (1.0 + radius * radius)

    blocked = np.abs(w) < separation
    chosen: list[int] = []
    for i in range(count):
        if blocked[i]:
            continue
        chosen.append(i)
        if len(chosen) >= cap:
            capped = True
            break
        near = np.array(tree.query_ball_point([w[i].real, w[i].imag], reach), dtype=np.int64)
        rho = np.abs(w[near] - w[i]) / np.abs(1.0 - np.conj(w[i]) * w[near])
        blocked[near[rho < separation]] = True

    if capped:
        logger.warning("packing capped at %d points (about %.3g expected)", len(chosen), expected)
    return Packing(mobius_many(center, w[chosen]), capped, expected)


# ==================== Square Selection ====================


@dataclass(frozen=True)
class SquareChoice:
    square: WhitneySquare
    h_value: float
    branch: SquareBranch
    gamma_check: Check


def choose_square(h: HarmonicFn, level: int, gamma: float, eta: float) -> Optional[SquareChoice]:
    """Pick the level's square: the maximizer if H stays below γ/(2(1+η)) log 1/l there,
    otherwise the largest H within [γ³, γ²]/(2(1+η)) log 1/l.
    """
    squares = [WhitneySquare(level, j) for j in range(2**level)]
    values = h(np.array([q.center for q in squares]))
    scale = level * math.log(2.0) / (2.0 * (1.0 + eta))

    top = int(np.argmax(values))
    if values[top] <= gamma * scale:
        check = Check.at_most(float(values[top]), gamma * scale)
        return SquareChoice(squares[top], float(values[top]), SquareBranch.MAX, check)

    lo, hi = gamma**3 * scale, gamma**2 * scale
    band = np.flatnonzero((values >= lo) & (values <= hi))
    if not band.size:
        return None
    pick = int(band[np.argmax(values[band])])
    v = float(values[pick])
    check = Check(True, min(v - lo, hi - v), v)
    return SquareChoice(squares[pick], v, SquareBranch.BAND, check)


# ==================== Construction ====================


@dataclass
class Thm5bResult:
    zeros: ZeroSet
    log: ConstructionLog
    params: Thm5bParams
    gamma: float
    harnack_gamma: float
    skipped: dict[int, str] = field(default_factory=dict)


def thm5b_build(params: Thm5bParams) -> Thm5bResult:
    """Place multiple zeros and separated packings on a sparse sequence of squares.

    Per level: choose the square, set R = exp(-sqrt(H(z))) and
    N = floor(1 / (l (H log 1/R)^{1/2})), require pseudo-distance >= 1/2 from every
    accepted square and, for greedy thinning, an H(z) above the last accepted one together
    with a summable term l (N log 1/R + e^{2(1+η)H} R^2 log 1/R) no larger than the last
    accepted term. Every finite window is summable; the thinning keeps the tail terms
    non-increasing and every margin sequence monotone. Geometric thinning instead bounds
    the term by 2^{-accepted}, which at desk scale admits a single square.

    Raises:
        PreconditionError: If no level yields an acceptable square.
    """
    h, eta = params.h, params.eta
    gamma = params.resolved_gamma
    log = ConstructionLog()
    entries: list[tuple[complex, int]] = []
    accepted: list[WhitneySquare] = []
    skipped: dict[int, str] = {}
    prev: dict[str, float] = {}
    prev_h, prev_term = 0.0, math.inf

    for level in range(params.first_level, params.max_depth + 1):
        choice = choose_square(h, level, gamma, eta)
        if choice is None:
            skipped[level] = "no square in the gamma band"
            continue
        hz = choice.h_value
        if hz <= 0.0:
            skipped[level] = "H vanishes on the chosen square"
            continue

        side = choice.square.side
        log_inv_r = math.sqrt(hz)
        radius = math.exp(-log_inv_r)
        n = math.floor(1.0 / (side * math.sqrt(hz * log_inv_r)))
        if n < 1:
            skipped[level] = "multiplicity rounds to zero"
            continue

        distance = min((square_distance(choice.square, q) for q in accepted), default=math.inf)
        if distance < SQUARE_SEPARATION:
            skipped[level] = "closer than 1/2 to an accepted square"
            continue

        expo = 2.0 * (1.0 + eta) * hz
        vanishexp = side * math.exp(expo - 2.0 * log_inv_r) * log_inv_r
        term = side * n * log_inv_r + vanishexp
        if params.thinning == Thinning.GEOMETRIC:
            threshold = 2.0 ** (-len(accepted))
        else:
            threshold = prev_term
        if params.thinning == Thinning.GREEDY and hz <= prev_h:
            skipped[level] = "H does not grow past the last accepted square"
            continue
        if params.thinning != Thinning.NONE and term > threshold:
            skipped[level] = "summable term above the thinning threshold"
            continue

        z_k = choice.square.center
        packing = greedy_packing(z_k, radius, math.exp(-(1.0 + eta) * hz), params.point_cap)
        values = {
            "defR": log_inv_r / hz,
            "vanishlog": side * n * log_inv_r,
            "blowupH": side * n * hz,
            "vanishexp": vanishexp,
        }
        checks = {
            "gamma": choice.gamma_check,
            "defR": Check.at_most(values["defR"], prev.get("defR", math.inf)),
            "defN": Check.at_least(float(n), 1.0),
            "vanishlog": Check.at_most(values["vanishlog"], prev.get("vanishlog", math.inf)),
            "blowupH": Check.at_least(values["blowupH"], prev.get("blowupH", 0.0)),
            "vanishexp": Check.at_most(values["vanishexp"], prev.get("vanishexp", math.inf)),
            "summable": Check.at_most(term, threshold),
            "separation": Check.at_least(min(distance, 1.0), SQUARE_SEPARATION),
        }
        prev = values
        prev_h, prev_term = hz, term

        entries.append((z_k, n))
        entries.extend((complex(p), 1) for p in packing.points)
        accepted.append(choice.square)
        log.append(
            ConstructionRecord(
                k=level,
                z=z_k,
                h_value=hz,
                radius=radius,
                multiplicity=n,
                placed=1 + int(packing.points.size),
                capped=packing.capped,
                square=choice.square,
                branch=choice.branch,
                checks=checks,
            )
        )
        logger.info(
            "accepted %s (%s): H=%.6g R=%.6g N=%d placed=%d",
            choice.square,
            choice.branch.value,
            hz,
            radius,
            n,
            1 + packing.points.size,
        )

    if not accepted:
        raise PreconditionError(
            f"no acceptable square on levels {params.first_level}..{params.max_depth}; "
            "H may be bounded there or gamma too small"
        )
    for level, reason in skipped.items():
        logger.debug("level %d skipped: %s", level, reason)
    return Thm5bResult(
        ZeroSet.from_entries(entries), log, params, gamma, square_harnack_gamma(), skipped
    )


# ==================== Claims ====================


@dataclass(frozen=True)
class ClaimRow:
    k: int
    capped: bool
    hidden: bool
    survivors: int
    witness_found: bool
    witness: Optional[complex]
    lower_bound_margin: float

    @property
    def passed(self) -> bool:
        return self.hidden and self.witness_found and self.lower_bound_margin >= 0.0


@dataclass
class ClaimsReport:
    rows: list[ClaimRow] = field(default_factory=list)

    def late(self) -> list[ClaimRow]:
        """Uncapped rows in the top half of the accepted levels."""
        if not self.rows:
            return []
        levels = sorted(r.k for r in self.rows)
        cut = levels[len(levels) // 2]
        return [r for r in self.rows if r.k >= cut and not r.capped]

    @property
    def late_passed(self) -> bool:
        return all(r.passed for r in self.late())


def claims_check(zeros: ZeroSet, log: ConstructionLog, params: Thm5bParams) -> ClaimsReport:
    """Per built square: the level-H filter hides Q_k ∩ D_ρ(z_k, R_k); at level (1 + η0)H a
    point ζ with ρ(z_k, ζ) = e^{-(1+η)H(z_k)} survives and -log|B(ζ)| >= N_k (1 + η) H(z_k).
    """
    h, eta = params.h, params.eta
    report = ClaimsReport()
    spiral = np.arange(1, 16 * params.claim_angles + 1)
    for record in log:
        if record.radius is None:
            continue
        z_k, hz, n = record.z, record.h_value, record.multiplicity

        inside = mobius_many(
            z_k,
            record.radius
            * (1.0 - 1e-12)
            * np.sqrt(spiral / spiral.size)
            * np.exp(1j * GOLDEN_ANGLE * spiral),
        )
        inside = np.concatenate([[z_k], inside])
        if record.square is not None:
            levels, sectors = whitney_index_many(inside)
            inside = inside[(levels == record.square.level) & (sectors == record.square.sector)]
        survivors = int(np.sum(filter_points(zeros, h, inside, 1.0)))

        t = math.exp(-(1.0 + eta) * hz)
        circle = pseudo_circle(z_k, t, params.claim_angles)
        alive = filter_points(zeros, h, circle, 1.0 + params.eta0)
        witness: Optional[complex] = None
        margin = -math.inf
        if np.any(alive):
            candidates = circle[alive]
            best = int(np.argmax(pseudo_dist_to_set_many(zeros, candidates)))
            witness = complex(candidates[best])
            bound = n * (1.0 + eta) * hz
            margin = -log_modulus(zeros, witness) - bound
            if -1e-9 * max(1.0, bound) <= margin < 0.0:
                margin = 0.0

        report.rows.append(
            ClaimRow(
                k=record.k,
                capped=record.capped,
                hidden=survivors == 0,
                survivors=survivors,
                witness_found=witness is not None,
                witness=witness,
                lower_bound_margin=margin,
            )
        )
    return report
