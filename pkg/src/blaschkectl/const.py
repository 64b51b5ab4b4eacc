"""Constants for blaschkectl.

Calibrated constants are measured values; the harmonic and thm4 verification suites
re-measure them and fail when a stored value is no longer a valid bound.
"""

import math
from enum import Enum

# ==================== Geometry ====================

CENTRAL_RADIUS = 0.5
"""Points with |z| < CENTRAL_RADIUS belong to the central cell, not a dyadic square."""

PSEUDO_DISK_MAX_T = 0.5
"""Largest pseudo-radius for which PSEUDO_DISK_AREA_C1 bounds the area ratio."""

PSEUDO_DISK_AREA_C1 = 4.0 * math.pi / (1.0 - PSEUDO_DISK_MAX_T**2) ** 2
"""Area of D(z0, t) lies in [t^2 (1-|z0|)^2 / C1, C1 t^2 (1-|z0|)^2] for t <= 1/2."""

# ==================== Harmonic ====================

HQ_LOWER_BOUND_C = 0.38
"""Lower bound of h_Q on Q, from a levels 1-12 calibration (minimum 0.394 at level 3)."""

HQ_CALIBRATION_LEVELS = 12
HQ_CALIBRATION_SAMPLES = 200
HQ_STABILITY_TOLERANCE = 0.10
"""Per-level minima for levels >= 4 may differ by at most this relative amount."""

LEMMA3_GRID = 32
"""Per-square sample grid (n x n) used for sup estimates in the inductive builder."""

LEMMA3_C0 = 1.0 / (1.0 - 2.0**-0.5)
"""Limit of the partial sums of 2^{-m/2}."""

# ==================== Majorant ====================

LEMMA4_C0 = 4.0
"""Shrinking exponent of the zero-free search disk, exp(-H(z)/C0)."""

THEOREM4_C1 = 2.0
"""Weight of H_Lambda in the explicit majorant candidate."""

THEOREM4_C3 = 19.0
"""Weight of H1 in the explicit majorant candidate (Harnack factor at distance 0.9)."""

SLACK_TOLERANCE = 1e-9
DUALITY_TOLERANCE = 1e-8
PIVOT_TOLERANCE = 1e-12
MAX_PIVOTS = 200_000
HARRIS_TOLERANCE = 1e-9
"""Primal infeasibility the first pass of the ratio test may accept."""

REFACTOR_INTERVAL = 256
"""Pivots between rebuilds of the tableau from its basis."""

WORKING_SET_BATCH = 64

DEFAULT_GRID_N = 256
DEFAULT_PER_SQUARE = 64
DEFAULT_PROBE_ANGLES = 8
DEFAULT_PROBE_RUNGS = 24
"""Most pseudo-circles probed around one zero."""
DEFAULT_PROBE_ZEROS = 4096
"""Most zeros probed per sample, taken by decreasing multiplicity."""

BOUNDED_FACTOR = 1.5
GROWTH_FACTOR = 2.0

# ==================== Constructions ====================

DEFAULT_POINT_CAP = 100_000
SQUARE_SEPARATION = 0.5
DEFAULT_BAND_GAMMA = 0.9
"""Fraction γ in the square-selection band [γ³, γ²] log(1/l) / (2(1 + η))."""


class Classification(str, Enum):
    """Outcome of a mass sweep."""

    BOUNDED = "bounded"
    GROWTH = "growth"
    INCONCLUSIVE = "inconclusive"


class SolveStatus(str, Enum):
    """Simplex termination status."""

    OPTIMAL = "optimal"
    INFEASIBLE_NUMERICS = "infeasible-numerics"
    UNBOUNDED_IMPOSSIBLE = "unbounded-impossible"


class SquareBranch(str, Enum):
    """How a square was selected by the multiplicity construction."""

    MAX = "max"
    BAND = "band"


class Thinning(str, Enum):
    """Subsequence thinning rule for summable tails.

    GEOMETRIC accepts a term only below 2^{-accepted}; GREEDY keeps the terms non-increasing
    (for the multiplicity construction both mean the geometric bound).
    """

    GREEDY = "greedy"
    GEOMETRIC = "geometric"
    NONE = "none"
