"""Blaschke products with multiple zeros separating two harmonic filter levels.

Given positive harmonic H1, H2 with H1/H2 unbounded, points a_j along which the ratio
grows receive multiplicities N_j = ceil(1 / ((1 - |a_j|) sqrt(H1(a_j) H2(a_j)))), so that
N_j (1 - |a_j|) H2(a_j) tends to 0 while N_j (1 - |a_j|) H1(a_j) blows up.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..blaschke import ZeroSet
from ..const import SQUARE_SEPARATION, Thinning
from ..errors import ConstructionError, DomainError
from ..harmonic import HarmonicFn
from ..hypgeo import TWO_PI, WhitneySquare, pseudo_dist_many
from .records import Check, ConstructionLog, ConstructionRecord, is_monotone

logger = logging.getLogger(__name__)

DEFAULT_SCAN_ANGLES = 256


@dataclass
class Thm5aResult:
    zeros: ZeroSet
    log: ConstructionLog
    majorant: HarmonicFn
    candidates: int

    @property
    def margins_monotone(self) -> bool:
        """Ratio and H1 blow-up increase, H2 vanishing term decreases along the output."""
        return (
            is_monotone(self.log.values("ratio"), increasing=True)
            and is_monotone(self.log.values("blowup_h1"), increasing=True)
            and is_monotone(self.log.values("vanish_h2"), increasing=False)
        )


def scan_candidates(
    h1: HarmonicFn, h2: HarmonicFn, max_level: int, angles: int = DEFAULT_SCAN_ANGLES
) -> list[tuple[int, complex, float]]:
    """Per level k, the point on |z| = 1 - 1.5·2^{-k} maximizing H1/H2.

    The angular grid is ``angles`` equispaced angles plus the atom angles of H1.
    """
    thetas = np.unique(
        np.concatenate(
            [TWO_PI * np.arange(angles) / angles, np.mod(h1.measure.atom_thetas, TWO_PI)]
        )
    )
    ray = np.exp(1j * thetas)
    out = []
    for k in range(1, max_level + 1):
        points = (1.0 - 1.5 * math.ldexp(1.0, -k)) * ray
        v2 = h2(points)
        if np.any(v2 <= 0.0):
            raise DomainError("H2 must be strictly positive on the scan")
        ratio = h1(points) / v2
        best = int(np.argmax(ratio))
        out.append((k, complex(points[best]), float(ratio[best])))
    return out


def multiplicity_for(gap: float, v1: float, v2: float) -> int:
    """N = ceil(1 / (gap sqrt(H1 H2)))."""
    return max(1, math.ceil(1.0 / (gap * math.sqrt(v1 * v2))))


def thm5a_build(
    h1: HarmonicFn,
    h2: HarmonicFn,
    count: int = 8,
    max_level: int = 12,
    angles: int = DEFAULT_SCAN_ANGLES,
    thinning: Thinning = Thinning.GREEDY,
) -> Thm5aResult:
    """Separated points with growing H1/H2 and multiplicities tuned between the two levels.

    Candidates are accepted in level order when 1/2-separated from every accepted point,
    with strictly larger ratio H1/H2, and (for greedy thinning) with summable term
    N (1 - |a|) H2(a) <= 2^{-accepted}.

    Raises:
        ConstructionError: If fewer than two points can be accepted (H1/H2 shows no growth).
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    candidates = scan_candidates(h1, h2, max_level, angles)

    log = ConstructionLog()
    accepted: list[complex] = []
    mults: list[int] = []
    squares: list[WhitneySquare] = []
    coeffs: list[float] = []
    prev_ratio = 0.0
    prev_vanish = math.inf
    prev_blowup = 0.0

    for level, a, ratio in candidates:
        if len(accepted) >= count:
            break
        if ratio <= prev_ratio:
            logger.debug("level %d: ratio %.6g does not grow, skipped", level, ratio)
            continue
        if accepted:
            rho = pseudo_dist_many(np.array(accepted), a)
            if float(np.min(rho)) < SQUARE_SEPARATION:
                logger.debug("level %d: candidate not 1/2-separated, skipped", level)
                continue

        gap = 1.0 - abs(a)
        v1, v2 = h1(a), h2(a)
        n = multiplicity_for(gap, v1, v2)
        vanish = n * gap * v2
        blowup = n * gap * v1
        threshold = 2.0 ** (-len(accepted))
        if thinning != Thinning.NONE and vanish > threshold:
            logger.debug("level %d: term %.6g above %.6g, thinned", level, vanish, threshold)
            continue

        square = WhitneySquare.at_angle(level, math.atan2(a.imag, a.real))
        record = ConstructionRecord(
            k=level,
            z=a,
            h_value=v1,
            radius=None,
            multiplicity=n,
            square=square,
            checks={
                "ratio": Check.at_least(ratio, prev_ratio),
                "vanish_h2": Check.at_most(vanish, prev_vanish),
                "blowup_h1": Check.at_least(blowup, prev_blowup),
                "summable": Check.at_most(vanish, threshold),
            },
        )
        log.append(record)
        accepted.append(a)
        mults.append(n)
        squares.append(square)
        coeffs.append(n * v2)
        prev_ratio, prev_vanish, prev_blowup = ratio, vanish, blowup
        logger.info("accepted level %d: N=%d ratio=%.6g", level, n, ratio)

    if len(accepted) < 2:
        raise ConstructionError(
            f"H1/H2 shows no growth up to level {max_level}: accepted {len(accepted)} point(s)"
        )
    if len(accepted) < count:
        logger.warning("accepted %d of %d requested points", len(accepted), count)

    return Thm5aResult(
        zeros=ZeroSet(tuple(accepted), tuple(mults)),
        log=log,
        majorant=HarmonicFn.from_squares(squares, coeffs),
        candidates=len(candidates),
    )


def sum_term(result: Thm5aResult, h: HarmonicFn) -> float:
    """Σ N_j (1 - |a_j|) H(a_j) for any harmonic H over the built points."""
    return float(
        sum(n * (1.0 - abs(a)) * h(a) for a, n in zip(result.zeros.points, result.zeros.mults))
    )

