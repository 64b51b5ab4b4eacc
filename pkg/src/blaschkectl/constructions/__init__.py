"""Generators of zero sets and harmonic functions with prescribed behaviour.

- family: B(Λ, N) from separated points and multiplicities
- weights: square weights and the harmonic function with unbounded square sups
- multiplicity: multiple zeros separating two filter levels H1, H2
- discriminator: multiple zeros plus packings separating H from (1 + η0)H
"""

from .discriminator import (
    ClaimRow,
    ClaimsReport,
    Thm5bParams,
    Thm5bResult,
    claims_check,
    greedy_packing,
    thm5b_build,
)
from .family import FamilyResult, disjoint_threshold, family_blaschke
from .multiplicity import Thm5aResult, thm5a_build
from .records import Check, ConstructionLog, ConstructionRecord, is_monotone
from .weights import Thm2Result, thm2_weights

__all__ = [
    "Check",
    "ConstructionRecord",
    "ConstructionLog",
    "is_monotone",
    "FamilyResult",
    "family_blaschke",
    "disjoint_threshold",
    "Thm2Result",
    "thm2_weights",
    "Thm5aResult",
    "thm5a_build",
    "Thm5bParams",
    "Thm5bResult",
    "thm5b_build",
    "greedy_packing",
    "ClaimRow",
    "ClaimsReport",
    "claims_check",
]
