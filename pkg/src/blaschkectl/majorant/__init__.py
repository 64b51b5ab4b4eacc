"""Minimal-mass harmonic majorants and the diagnostics built on them.

- simplex: the minimal-mass linear program and its dual-vertex oracle
- sampling: filtered target-set samples with near-extremal points
- diagnostics: depth sweeps, classification, WEP gap, corona data
- transfer: point relocation and the transfer inequalities
"""

from .diagnostics import (
    SweepRecord,
    SweepRow,
    classify_masses,
    corona_data,
    majorant_diagnostic,
    target_constraints,
    wep_gap,
)
from .sampling import ProbeSet, TargetSample, filter_points, probe_points, sample_target_set
from .simplex import ConstraintSet, SolveReport, boundary_grid, dual_vertex_optimum, min_mass
from .transfer import (
    CompanionReport,
    CoronaRow,
    Theorem4Report,
    TransferReport,
    companion_radius,
    corona_hypothesis,
    lemma1_ratio,
    lemma2_ratio,
    lemma4_search,
    theorem3_transfer_check,
    theorem4_check,
)

__all__ = [
    # Simplex
    "ConstraintSet",
    "SolveReport",
    "boundary_grid",
    "min_mass",
    "dual_vertex_optimum",
    # Sampling
    "ProbeSet",
    "TargetSample",
    "filter_points",
    "probe_points",
    "sample_target_set",
    # Diagnostics
    "SweepRow",
    "SweepRecord",
    "classify_masses",
    "target_constraints",
    "majorant_diagnostic",
    "wep_gap",
    "corona_data",
    # Transfer
    "lemma4_search",
    "TransferReport",
    "theorem3_transfer_check",
    "Theorem4Report",
    "theorem4_check",
    "lemma1_ratio",
    "CompanionReport",
    "companion_radius",
    "lemma2_ratio",
    "CoronaRow",
    "corona_hypothesis",
]
