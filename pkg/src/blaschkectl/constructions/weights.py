"""Square weights M̃_j and the harmonic function with unbounded square sups built on them."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..blaschke import ZeroSet, census
from ..const import LEMMA3_C0, LEMMA3_GRID
from ..errors import PreconditionError
from ..harmonic import HarmonicFn, Lemma3Result, lemma3_build
from ..hypgeo import WhitneySquare

logger = logging.getLogger(__name__)


@dataclass
class Thm2Result:
    squares: list[WhitneySquare]
    counts: np.ndarray
    tails: np.ndarray
    weights: np.ndarray
    lemma3: Lemma3Result
    majorant: HarmonicFn

    @property
    def h(self) -> HarmonicFn:
        return self.lemma3.h

    @property
    def ratios(self) -> np.ndarray:
        """M̃_j / M(Q_j), the bounds handed to the inductive builder."""
        return self.weights / self.counts

    @property
    def bound_holds(self) -> bool:
        """sup over Q_j of H stays below M̃_j / M(Q_j) + C0 on every sample grid."""
        return self.lemma3.certificate_holds and self.lemma3.partial_constant <= LEMMA3_C0


def tail_sums(counts: np.ndarray, sides: np.ndarray) -> np.ndarray:
    """t_j = Σ_{i >= j} M(Q_i) l(Q_i) in the given (decreasing side) order."""
    terms = counts * sides
    return np.cumsum(terms[::-1])[::-1]


def thm2_weights(
    zeros: ZeroSet,
    depth: int,
    grid: int = LEMMA3_GRID,
    max_selections: Optional[int] = None,
) -> Thm2Result:
    """Weights M̃_j = M(Q_j)/sqrt(t_j) and the function H built on M̃_j / M(Q_j).

    Also returns H1 = Σ M̃_j h_{Q_j}, the majorant candidate of -log|B| on the level-H set.

    Raises:
        PreconditionError: If no square up to ``depth`` has M(Q) > 0.
        ConstructionError: If the inductive builder cannot select a square.
    """
    counts = census(zeros)
    squares = counts.with_mass(depth)
    if not squares:
        raise PreconditionError(f"no square up to level {depth} touches a zero")

    m = np.array([counts.m(q) for q in squares], dtype=float)
    sides = np.array([q.side for q in squares])
    tails = tail_sums(m, sides)
    weights = m / np.sqrt(tails)
    logger.debug("thm2 weights on %d squares, max ratio %.6g", len(squares), np.max(weights / m))

    result = lemma3_build(squares, weights / m, grid=grid, max_selections=max_selections)
    return Thm2Result(
        squares=squares,
        counts=m,
        tails=tails,
        weights=weights,
        lemma3=result,
        majorant=HarmonicFn.from_squares(squares, weights.tolist()),
    )
