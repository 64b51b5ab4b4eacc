"""Verification suites: named properties with measured margins.

Each suite returns a ``SuiteReport``; the ``verify`` command renders it and exits with
VERIFICATION_FAILED when any property fails. Suites are deterministic for a fixed seed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from .blaschke import ZeroSet
from .const import (
    HQ_CALIBRATION_LEVELS,
    HQ_CALIBRATION_SAMPLES,
    HQ_LOWER_BOUND_C,
    HQ_STABILITY_TOLERANCE,
    LEMMA3_GRID,
    PSEUDO_DISK_AREA_C1,
    PSEUDO_DISK_MAX_T,
    SLACK_TOLERANCE,
    Classification,
    Thinning,
)
from .constructions import (
    ClaimsReport,
    ConstructionLog,
    Thm5bParams,
    claims_check,
    family_blaschke,
    thm2_weights,
    thm5a_build,
)
from .errors import DomainError
from .harmonic import (
    BoundaryMeasure,
    HarmonicFn,
    calibrate_hq_constant,
    harmonic_measure_many,
    harmonic_measure_quadrature,
    harnack_bounds,
    h_Q_many,
    lemma3_build,
    square_samples,
)
from .hypgeo import (
    BoundaryArc,
    WhitneySquare,
    mobius_many,
    pseudo_circle,
    pseudo_disk,
    pseudo_disk_area_ratio,
    squares_up_to,
    whitney_index_many,
)
from .majorant import (
    ConstraintSet,
    SweepRecord,
    dual_vertex_optimum,
    lemma1_ratio,
    majorant_diagnostic,
    min_mass,
    theorem3_transfer_check,
    theorem4_check,
    wep_gap,
)

logger = logging.getLogger(__name__)


# ==================== Reports ====================


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of one property: measured value against its bound."""

    name: str
    passed: bool
    measured: float
    bound: float
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "bound": self.bound,
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    suite: str
    properties: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    @property
    def failing(self) -> list[str]:
        return [p.name for p in self.properties if not p.passed]

    def add(self, name: str, measured: float, bound: float, passed: bool, detail: str = ""):
        self.properties.append(PropertyResult(name, bool(passed), float(measured), bound, detail))

    def at_most(self, name: str, measured: float, bound: float, detail: str = ""):
        self.add(name, measured, bound, measured <= bound, detail)

    def at_least(self, name: str, measured: float, bound: float, detail: str = ""):
        self.add(name, measured, bound, measured >= bound, detail)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "properties": [p.to_dict() for p in self.properties],
        }


# ==================== Random Inputs ====================


def random_disk_points(rng: np.random.Generator, count: int, max_radius: float) -> np.ndarray:
    """Points uniform in area on |z| <= max_radius."""
    r = max_radius * np.sqrt(rng.random(count))
    return r * np.exp(2j * math.pi * rng.random(count))


def random_measure(rng: np.random.Generator, atoms: int = 3, arcs: int = 2) -> BoundaryMeasure:
    lo = rng.random(arcs) * 2.0 * math.pi
    return BoundaryMeasure(
        atom_thetas=tuple(rng.random(atoms) * 2.0 * math.pi),
        atom_masses=tuple(rng.random(atoms) + 0.1),
        arcs=tuple(BoundaryArc(a, a + w) for a, w in zip(lo, rng.random(arcs) * 3.0 + 0.01)),
        densities=tuple(rng.random(arcs) + 0.1),
    )


# ==================== Geometry ====================


def geometry_suite(samples: int = 10_000, seed: int = 0) -> SuiteReport:
    rng = np.random.default_rng(seed)
    report = SuiteReport("geometry")

    a, z, w = (random_disk_points(rng, samples, 0.95) for _ in range(3))
    rho = np.abs(z - w) / np.abs(1.0 - np.conj(w) * z)
    za, wa = mobius_many(a, z), mobius_many(a, w)
    rho_a = np.abs(za - wa) / np.abs(1.0 - np.conj(wa) * za)
    report.at_most("mobius_invariance", float(np.max(np.abs(rho_a - rho))), 1e-12)
    report.at_most(
        "mobius_involution", float(np.max(np.abs(mobius_many(a, mobius_many(a, z)) - z))), 1e-12
    )

    u = random_disk_points(rng, samples, 0.95)
    rzu = np.abs(z - u) / np.abs(1.0 - np.conj(u) * z)
    ruw = np.abs(u - w) / np.abs(1.0 - np.conj(w) * u)
    strong = (rzu + ruw) / (1.0 + rzu * ruw)
    report.at_most("strong_triangle", float(np.max(rho - strong)), 1e-12)

    ring = np.sqrt(0.25 + 0.75 * rng.random(samples)) * np.exp(2j * math.pi * rng.random(samples))
    ring = ring[np.abs(ring) < 1.0]
    levels, sectors = whitney_index_many(ring)
    misses = 0
    for zz, k, j in zip(ring, levels, sectors):
        if k == 0:
            continue
        square = WhitneySquare(int(k), int(j))
        if not square.contains(complex(zz)):
            misses += 1
            continue
        n = 2 ** int(k)
        for step in (-1, 1):
            other = WhitneySquare(int(k), (int(j) + step) % n)
            if other.contains(complex(zz)):
                misses += 1
    report.at_most("whitney_tiling", misses, 0, f"{ring.size} points")

    worst = 0.0
    for center, t in zip(random_disk_points(rng, 200, 0.95), 0.01 + 0.98 * rng.random(200)):
        c, radius = pseudo_disk(complex(center), float(t))
        circle = pseudo_circle(complex(center), float(t), 64)
        worst = max(worst, float(np.max(np.abs(np.abs(circle - c) - radius))))
    report.at_most("pseudo_disk_boundary", worst, 1e-12)

    centers = random_disk_points(rng, 200, 0.95)
    radii = 0.01 + (PSEUDO_DISK_MAX_T - 0.01) * rng.random(200)
    areas = np.array(
        [pseudo_disk_area_ratio(complex(c), float(t)) for c, t in zip(centers, radii)]
    )
    report.at_most("pseudo_disk_area_upper", float(np.max(areas)), PSEUDO_DISK_AREA_C1)
    report.at_least("pseudo_disk_area_lower", float(np.min(areas)), 1.0 / PSEUDO_DISK_AREA_C1)
    return report


# ==================== Harmonic ====================


def harmonic_suite(
    samples: int = 1_000,
    seed: int = 0,
    levels: int = HQ_CALIBRATION_LEVELS,
    per_square: int = HQ_CALIBRATION_SAMPLES,
) -> SuiteReport:
    rng = np.random.default_rng(seed)
    report = SuiteReport("harmonic")

    worst = 0.0
    for z, lo, width in zip(
        random_disk_points(rng, samples, 0.95),
        rng.random(samples) * 2.0 * math.pi,
        rng.random(samples) * 2.0 * math.pi,
    ):
        arc = BoundaryArc(float(lo), float(lo + width))
        closed = float(harmonic_measure_many(np.array([z]), arc)[0])
        worst = max(worst, abs(closed - harmonic_measure_quadrature(complex(z), arc)))
    report.at_most("closed_form_vs_quadrature", worst, 1e-8, f"{samples} pairs")

    c = HQ_LOWER_BOUND_C
    upper_excess = 0.0
    decay_excess = 0.0
    for square in squares_up_to(levels):
        pts = square_samples(square, per_square)
        values = h_Q_many(square, pts)
        upper_excess = max(upper_excess, float(np.max(values)) - 1.0)
        decay = square.side / (c * (1.0 - np.abs(pts)))
        decay_excess = max(decay_excess, float(np.max(values - decay)))
    report.at_most("hq_at_most_one", upper_excess, 0.0)
    report.at_most("hq_decay_bound", decay_excess, 0.0)

    minima = calibrate_hq_constant(levels, per_square)
    report.at_least("hq_lower_bound", min(minima.values()), c, f"c = {c}")
    deep = [v for k, v in minima.items() if k >= 4]
    spread = (max(deep) - min(deep)) / min(deep) if deep else 0.0
    report.at_most("hq_level_stability", spread, HQ_STABILITY_TOLERANCE)

    mass_error = 0.0
    mean_error = 0.0
    harnack_excess = 0.0
    ring = np.exp(2j * math.pi * np.arange(4096) / 4096)
    for _ in range(100):
        h = HarmonicFn(random_measure(rng))
        mass_error = max(mass_error, abs(h(0j) - h.total_mass))
        r = 0.99 * rng.random()
        mean_error = max(mean_error, abs(float(np.mean(h(r * ring))) - h.total_mass))
        z, w = random_disk_points(rng, 2, 0.9)
        bounds = harnack_bounds(complex(z), complex(w))
        ratio = h(complex(z)) / h(complex(w))
        if not bounds.contains(ratio, rtol=1e-10):
            harnack_excess = max(harnack_excess, ratio - bounds.hi, bounds.lo - ratio)
    report.at_most("mass_at_origin", mass_error, 1e-12)
    report.at_most("mean_value", mean_error, 1e-8)
    report.at_most("harnack_bounds", harnack_excess, 0.0)
    return report


# ==================== LP ====================


def _random_constraints(rng: np.random.Generator, count: int) -> ConstraintSet:
    return ConstraintSet(random_disk_points(rng, count, 0.9), rng.random(count) * 3.0)


def lp_suite(instances: int = 100, seed: int = 0) -> SuiteReport:
    rng = np.random.default_rng(seed)
    report = SuiteReport("lp")

    single = min_mass(ConstraintSet.from_pairs([(0.5, 1.0)]), 8)
    report.at_most("single_point_optimum", abs(single.optimal_mass - 1.0 / 3.0), 1e-9)

    oracle_error = 0.0
    nested_excess = 0.0
    grid_excess = 0.0
    slack_deficit = 0.0
    duality_gap = 0.0
    failures = 0
    for i in range(instances):
        small = _random_constraints(rng, int(rng.integers(1, 5)))
        angles = np.sort(rng.random(int(rng.integers(1, 9))) * 2.0 * math.pi)
        got = min_mass(small, angles)
        want = dual_vertex_optimum(small, angles)
        oracle_error = max(oracle_error, abs(got.optimal_mass - want) / max(1.0, want))

        big = _random_constraints(rng, int(rng.integers(5, 40)))
        part = big.subset(np.arange(len(big)) < len(big) // 2)
        coarse = np.sort(rng.random(16) * 2.0 * math.pi)
        fine = np.union1d(coarse, rng.random(32) * 2.0 * math.pi)

        full = min_mass(big, coarse)
        half = min_mass(part, coarse)
        refined = min_mass(big, fine)
        for solve in (got, full, half, refined):
            failures += int(not solve.is_optimal)
            duality_gap = max(duality_gap, solve.duality_gap / max(1.0, solve.optimal_mass))
        nested_excess = max(nested_excess, half.optimal_mass - full.optimal_mass)
        grid_excess = max(grid_excess, refined.optimal_mass - full.optimal_mass)

        values = HarmonicFn(full.measure)(big.points)
        deficit = (big.values - values) / np.maximum(1.0, big.values)
        slack_deficit = max(slack_deficit, float(np.max(deficit)) if deficit.size else 0.0)
        logger.debug("lp instance %d: mass %.6g", i, full.optimal_mass)

    report.at_most("oracle_equivalence", oracle_error, 1e-9)
    report.at_most("constraint_monotonicity", nested_excess, 1e-9)
    report.at_most("grid_monotonicity", grid_excess, 1e-9)
    report.at_most("feasibility_certificate", slack_deficit, SLACK_TOLERANCE)
    report.at_most("duality_gap", duality_gap, 1e-8)
    report.at_most("solver_status", failures, 0)
    return report


# ==================== Square Sum Ratio ====================


def geometric_zero_set(rng: np.random.Generator, depth: int) -> ZeroSet:
    """λ_j = (1 - 2^{-j}) e^{iθ_j}, j = 1..depth, with random angles."""
    radii = 1.0 - np.ldexp(1.0, -np.arange(1, depth + 1))
    return ZeroSet.simple(radii * np.exp(2j * math.pi * rng.random(depth)))


def _square_points(depth: int, per_square: int) -> np.ndarray:
    return np.concatenate([square_samples(q, per_square) for q in squares_up_to(depth)])


def lemma1_suite(
    sets: int = 10, seed: int = 0, depths: tuple[int, int] = (8, 16), per_square: int = 4
) -> SuiteReport:
    rng = np.random.default_rng(seed)
    report = SuiteReport("lemma1")
    shallow_pts = _square_points(depths[0], per_square)
    deep_pts = _square_points(depths[1], per_square)
    worst_change = 0.0
    worst_ratio = 0.0
    for _ in range(sets):
        angles_seed = int(rng.integers(0, 2**31))
        shallow = geometric_zero_set(np.random.default_rng(angles_seed), depths[0])
        deep = geometric_zero_set(np.random.default_rng(angles_seed), depths[1])
        a = lemma1_ratio(shallow, shallow_pts)
        b = lemma1_ratio(deep, deep_pts)
        worst_ratio = max(worst_ratio, a, b)
        worst_change = max(worst_change, abs(b - a) / max(a, 1e-300))
    report.add("ratio_finite", worst_ratio, math.inf, math.isfinite(worst_ratio))
    report.at_most("ratio_stability", worst_change, 0.20, f"depth {depths[0]} -> {depths[1]}")
    return report


# ==================== Inductive Builder ====================


def lemma3_suite(grid: int = LEMMA3_GRID) -> SuiteReport:
    """Inductive builder on 50 squares: levels 3..12, five sectors each."""
    report = SuiteReport("lemma3")
    squares = [WhitneySquare(k, j * (2 ** (k - 3))) for k in range(3, 13) for j in range(5)]
    bounds = [2.0 ** (q.level / 2.0) for q in squares]
    result = lemma3_build(squares, bounds, grid=grid)
    worst = max((row.sup - row.bound for row in result.certificate), default=0.0)
    report.at_most("partial_sum_certificate", worst, 0.0, f"{len(result.selected)} selections")
    shortfall = max(
        (
            HQ_LOWER_BOUND_C * 2.0 ** ((m + 1) / 2.0) - s
            for m, s in enumerate(result.selected_sups)
        ),
        default=0.0,
    )
    report.at_most("selected_growth", shortfall, 0.0)
    return report


# ==================== Transfer ====================


def thm3_suite(samples: tuple[int, int] = (250, 1000)) -> SuiteReport:
    """Transfer ratio on a separated two-zero set, C = 2, H ≡ 2."""
    report = SuiteReport("thm3")
    zeros = ZeroSet.simple([0.6, -0.6j])
    h = HarmonicFn.constant(2.0)
    c = 2.0
    ratios = []
    for count in samples:
        pts = _shell_samples(zeros, count, math.exp(-c * 2.0), 0.25)
        ratios.append(theorem3_transfer_check(zeros, h, c, pts).max_ratio)
    report.add("ratio_finite", max(ratios), math.inf, all(math.isfinite(r) for r in ratios))
    change = abs(ratios[-1] - ratios[0]) / max(ratios[0], 1e-300)
    report.at_most("ratio_stability", change, 0.25, f"samples {samples[0]} -> {samples[-1]}")
    return report


def _shell_samples(zeros: ZeroSet, count: int, lo: float, hi: float) -> np.ndarray:
    """Points on pseudo-circles around each zero with radii log-spaced in [lo, hi]."""
    per_zero = max(1, count // len(zeros))
    rings = max(1, int(math.sqrt(per_zero)))
    angles = max(1, per_zero // rings)
    radii = np.exp(np.linspace(math.log(lo) * 0.999, math.log(hi) * 1.001, rings))
    blocks = [
        pseudo_circle(lam, float(t), angles, phase=0.5 * i)
        for lam in zeros.points
        for i, t in enumerate(radii)
    ]
    return np.concatenate(blocks)


def thm4_suite(seed: int = 0, depth: int = 10, per_square: int = 16) -> SuiteReport:
    """B(Λ, N) on the radial points λ_j = 1 - 4^{-j} with N_j = j, H ≡ 1 and H1 ≡ max N."""
    report = SuiteReport("thm4")
    levels = range(1, depth // 2 + 1)
    family = family_blaschke([1.0 - 4.0**-j for j in levels], list(levels))
    zeros = family.zeros
    report.add("family_separation", family.eta, 0.0, family.eta > 0.0, f"{len(zeros)} points")
    h = HarmonicFn.constant(1.0)
    h1 = HarmonicFn.constant(float(max(zeros.mults)))
    result = theorem4_check(zeros, h, h1, depth, per_square, seed=seed)
    report.add("hypothesis", float(result.hypothesis_holds), 1.0, result.hypothesis_holds)
    report.add("corollary_sum", result.corollary_sum, math.inf, math.isfinite(result.corollary_sum))
    report.add(
        "explicit_majorant",
        result.majorant_margin,
        0.0,
        result.majorant_holds,
        f"{result.sample_size} points",
    )
    return report


# ==================== Constructions ====================


def _classified(report: SuiteReport, name: str, record: SweepRecord, expected: Classification):
    """Last-to-first mass ratio over the final three depths against the classification bound."""
    tail = record.masses[-3:]
    ratio = tail[-1] / tail[0] if tail and tail[0] > 0.0 else math.inf
    bound = 1.5 if expected == Classification.BOUNDED else 2.0
    detail = f"{record.classification.value}: " + ", ".join(f"{m:.4g}" for m in record.masses)
    report.add(name, ratio, bound, record.classification == expected, detail)


def thm2_suite(depth: int = 6, per_square: int = 4, grid: int = 32) -> SuiteReport:
    """λ_j = 1 - 2^{-j}, j <= 4: H grows along the selection, -log|B| stays majorized at H."""
    report = SuiteReport("thm2")
    zeros = ZeroSet.simple(1.0 - np.ldexp(1.0, -np.arange(1, 5)))
    result = thm2_weights(zeros, depth=3, grid=grid)
    sups = result.lemma3.selected_sups
    report.add("selected_growth", sups[-1] if sups else 0.0, math.inf, result.lemma3.growth_holds)
    report.add("square_bounds", float(result.bound_holds), 1.0, result.bound_holds)
    record = majorant_diagnostic(
        zeros, result.h, [depth - 2, depth - 1, depth], per_square, grid, seed=0
    )
    _classified(report, "bounded_at_h", record, Classification.BOUNDED)
    return report


def thm5a_suite(depth: int = 10, per_square: int = 4, grid: int = 64) -> SuiteReport:
    """Atom kernel H1 against H2 ≡ 1: growth when filtered at H1, bounded at H2."""
    report = SuiteReport("thm5a")
    h1, h2 = HarmonicFn.atom(0.0, 1.0), HarmonicFn.constant(1.0)
    result = thm5a_build(h1, h2, count=6, max_level=12, angles=32, thinning=Thinning.NONE)
    report.add("margins_monotone", float(result.margins_monotone), 1.0, result.margins_monotone)
    depths = [depth - 6, depth - 3, depth]
    _classified(
        report,
        "growth_at_h1",
        wep_gap(result.zeros, h1, depths, per_square, grid, seed=0),
        Classification.GROWTH,
    )
    _classified(
        report,
        "bounded_at_h2",
        majorant_diagnostic(result.zeros, h2, depths, per_square, grid, seed=0),
        Classification.BOUNDED,
    )
    return report


# ==================== Claims ====================


def claims_suite(
    zeros: Optional[ZeroSet] = None,
    log: Optional[ConstructionLog] = None,
    params: Optional[Thm5bParams] = None,
) -> SuiteReport:
    """Claims on a discriminating construction, per square and on the late half."""
    if zeros is None or log is None or params is None:
        raise DomainError("the claims suite needs a zero set, its construction log and parameters")
    return claims_to_suite(claims_check(zeros, log, params))


def claims_to_suite(claims: ClaimsReport) -> SuiteReport:
    """One property per square; only late squares may fail."""
    report = SuiteReport("claims")
    for row in claims.rows:
        report.add(
            f"square_k{row.k}",
            row.lower_bound_margin,
            0.0,
            row.passed or row not in claims.late(),
            f"hidden={row.hidden} witness={row.witness_found} capped={row.capped}",
        )
    late = claims.late()
    report.add("late_squares", len(late), 1.0, bool(late) and claims.late_passed)
    return report


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "geometry": geometry_suite,
    "harmonic": harmonic_suite,
    "lp": lp_suite,
    "lemma1": lemma1_suite,
    "lemma3": lemma3_suite,
    "thm3": thm3_suite,
    "thm4": thm4_suite,
    "thm2": thm2_suite,
    "thm5a": thm5a_suite,
    "claims": claims_suite,
}

