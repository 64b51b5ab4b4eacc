"""Unit tests for blaschkectl.constructions package.

Tests cover:
- Construction records and monotonicity
- The B(Λ, N) family
- Square weights
- Multiplicities between two filter levels
- Packings, square choice, the discriminating construction and its claims
"""

import math

import numpy as np
import pytest

from blaschkectl.blaschke import ZeroSet
from blaschkectl.commands.gen import geometric_zeros
from blaschkectl.const import DEFAULT_BAND_GAMMA, Classification, SquareBranch, Thinning
from blaschkectl.constructions import (
    Check,
    ConstructionLog,
    ConstructionRecord,
    Thm5bParams,
    claims_check,
    disjoint_threshold,
    family_blaschke,
    greedy_packing,
    is_monotone,
    thm2_weights,
    thm5a_build,
    thm5b_build,
)
from blaschkectl.constructions.discriminator import choose_square
from blaschkectl.constructions.multiplicity import multiplicity_for, sum_term
from blaschkectl.constructions.weights import tail_sums
from blaschkectl.errors import ConstructionError, DomainError, PreconditionError
from blaschkectl.harmonic import HarmonicFn, square_harnack_gamma
from blaschkectl.hypgeo import WhitneySquare, pseudo_dist
from blaschkectl.majorant import majorant_diagnostic, wep_gap


class TestRecords:
    """Tests for Check, ConstructionRecord and is_monotone."""

    def test_check_margins(self):
        """Test signed margins in both directions."""
        assert Check.at_least(3.0, 1.0) == Check(True, 2.0, 3.0)
        assert Check.at_most(3.0, 1.0) == Check(False, -2.0, 3.0)

    def test_record_passes_when_all_checks_pass(self):
        """Test a record passes only if every check does."""
        record = ConstructionRecord(
            k=2, z=0.5j, h_value=1.0, radius=0.3, multiplicity=2,
            checks={"a": Check.at_least(1.0, 0.0), "b": Check.at_most(1.0, 0.0)},
        )

        assert not record.passed
        assert record.to_dict()["checks"]["b"]["margin"] == -1.0

    def test_log_values(self):
        """Test margins and values along a log."""
        log = ConstructionLog()
        for k, v in enumerate([1.0, 2.0, 4.0], start=1):
            log.append(ConstructionRecord(k, 0.5, v, None, 1, checks={"x": Check.at_least(v, 1.0)}))

        assert log.values("x") == [1.0, 2.0, 4.0]
        assert log.margins("x") == [0.0, 1.0, 3.0]
        assert log.margins("missing") == []

    @pytest.mark.parametrize(
        "values,increasing,expected",
        [([1, 2, 2, 3], True, True), ([3, 2, 1], False, True), ([1, 3, 2], True, False)],
    )
    def test_is_monotone(self, values, increasing, expected):
        """Test monotonicity in either direction."""
        assert is_monotone(values, increasing=increasing) is expected


# ========================== Family ==========================


class TestFamily:
    """Tests for family_blaschke."""

    def test_separation(self):
        """Test η is the minimum pseudo-distance."""
        result = family_blaschke([0.5, -0.5], [1, 3])

        assert result.eta == pytest.approx(0.8)
        assert result.disk_radius == pytest.approx(0.2)
        assert result.disjoint
        assert result.zeros.mults == (1, 3)

    def test_single_point(self):
        """Test one point reports η = 1."""
        assert family_blaschke([0.5j], [2]).eta == 1.0

    def test_threshold(self):
        """Test D(a, t) and D(b, t) are disjoint beyond 2t / (1 + t²)."""
        assert disjoint_threshold(0.2) == pytest.approx(0.4 / 1.04)

    @pytest.mark.parametrize(
        "points,mults", [([], []), ([0.5], [1, 2]), ([0.5, 0.5], [1, 1])]
    )
    def test_invalid(self, points, mults):
        """Test empty, mismatched and coinciding inputs."""
        with pytest.raises(DomainError):
            family_blaschke(points, mults)


# ========================== Weights ==========================


class TestWeights:
    """Tests for thm2_weights."""

    def test_tail_sums(self):
        """Test t_j = Σ_{i >= j} M_i l_i."""
        tails = tail_sums(np.array([1.0, 2.0, 4.0]), np.array([0.5, 0.25, 0.125]))

        np.testing.assert_allclose(tails, [1.5, 1.0, 0.5])

    def test_geometric_zero_set(self):
        """Test weights, ratios and the builder certificate on λ_j = 1 - 2^{-j}."""
        result = thm2_weights(geometric_zeros(4), depth=3, grid=64)

        assert result.squares == sorted(result.squares)
        np.testing.assert_allclose(result.weights, result.counts / np.sqrt(result.tails))
        assert np.all(result.ratios > 0.0)
        assert len(result.lemma3.certificate) > 0
        assert result.lemma3.selected
        assert result.bound_holds
        assert result.lemma3.growth_holds

    def test_no_mass(self):
        """Test a zero set with no square up to depth is a precondition failure."""
        zeros = ZeroSet.simple([1.0 - 2.0**-12])

        with pytest.raises(PreconditionError):
            thm2_weights(zeros, depth=3)


# ========================== Multiplicities ==========================


class TestThm5a:
    """Tests for thm5a_build."""

    def test_multiplicity_formula(self):
        """Test N = ceil(1 / (gap sqrt(H1 H2)))."""
        assert multiplicity_for(0.25, 4.0, 1.0) == 2
        assert multiplicity_for(1.0, 100.0, 100.0) == 1

    def test_build(self):
        """Test accepted points are 1/2-separated with growing ratio."""
        result = thm5a_build(
            HarmonicFn.atom(0.0, 1.0),
            HarmonicFn.constant(1.0),
            count=3,
            max_level=8,
            angles=32,
            thinning=Thinning.NONE,
        )

        points = result.zeros.points
        assert 2 <= len(points) <= 3
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                assert pseudo_dist(points[i], points[j]) >= 0.5
        ratios = result.log.values("ratio")
        assert ratios == sorted(ratios)
        assert sum_term(result, HarmonicFn.constant(1.0)) > 0.0

    @pytest.mark.slow
    def test_filter_levels_separate_growth(self):
        """Test the mass grows when filtered at H1 and stays bounded when filtered at H2."""
        h1, h2 = HarmonicFn.atom(0.0, 1.0), HarmonicFn.constant(1.0)
        result = thm5a_build(h1, h2, count=6, max_level=12, angles=32, thinning=Thinning.NONE)
        depths = [6, 9, 12]

        at_h1 = wep_gap(result.zeros, h1, depths, per_square=4, grid_n=64, seed=0)
        at_h2 = majorant_diagnostic(result.zeros, h2, depths, per_square=4, grid_n=64, seed=0)

        assert at_h1.classification == Classification.GROWTH
        assert at_h2.classification == Classification.BOUNDED
        assert at_h1.masses[-1] > at_h2.masses[-1]

    def test_no_growth(self):
        """Test equal levels cannot be separated."""
        with pytest.raises(ConstructionError):
            thm5a_build(HarmonicFn.constant(1.0), HarmonicFn.constant(1.0), count=2, max_level=6)

    def test_count_validated(self):
        """Test count must be positive."""
        with pytest.raises(DomainError):
            thm5a_build(HarmonicFn.atom(0.0), HarmonicFn.constant(1.0), count=0, max_level=4)


# ========================== Discriminating Construction ==========================


class TestPacking:
    """Tests for greedy_packing and choose_square."""

    def test_packing_separated(self):
        """Test packed points are separated from each other and the center."""
        center = 0.5 + 0j
        packing = greedy_packing(center, 0.4, 0.1, cap=500)
        pts = packing.points

        assert pts.size > 0
        assert not packing.capped
        for p in pts:
            assert 0.1 - 1e-9 <= pseudo_dist(p, center) <= 0.4 + 1e-9
        rho = np.abs(pts[:, None] - pts[None, :]) / np.abs(1 - np.conj(pts)[None, :] * pts[:, None])
        assert np.min(rho[np.triu_indices(pts.size, k=1)]) >= 0.1 - 1e-9

    def test_packing_cap(self):
        """Test the cap stops the packing."""
        packing = greedy_packing(0.0j, 0.9, 0.01, cap=5)

        assert packing.capped
        assert packing.points.size == 5

    def test_choose_max_branch(self):
        """Test a small constant H takes the maximizer branch."""
        choice = choose_square(HarmonicFn.constant(0.01), 4, 0.5, 0.5)

        assert choice is not None
        assert choice.branch == SquareBranch.MAX
        assert choice.square.level == 4

    def test_choose_none(self):
        """Test a large constant H fits neither branch."""
        assert choose_square(HarmonicFn.constant(100.0), 3, 0.5, 0.5) is None


class TestThm5b:
    """Tests for thm5b_build and claims_check."""

    def _params(self, **overrides):
        values = dict(
            h=HarmonicFn.constant(0.3),
            gamma=0.9,
            max_depth=5,
            min_level=2,
            point_cap=200,
            claim_angles=8,
            thinning=Thinning.NONE,
        )
        values.update(overrides)
        return Thm5bParams(**values)

    @pytest.mark.parametrize(
        "overrides",
        [dict(eta0=0.0), dict(eta=0.0), dict(eta=1.0), dict(min_level=6), dict(gamma=1.5)],
    )
    def test_params_validated(self, overrides):
        """Test parameter preconditions."""
        with pytest.raises(PreconditionError):
            self._params(**overrides)

    def test_build(self):
        """Test records carry R = exp(-sqrt H), N >= 1 and 1/2-separated squares."""
        result = thm5b_build(self._params())

        assert len(result.log) >= 1
        assert result.gamma == 0.9
        for record in result.log:
            assert record.radius == pytest.approx(math.exp(-math.sqrt(record.h_value)))
            assert record.multiplicity >= 1
            assert record.checks["separation"].passed
        assert result.zeros.total_multiplicity >= sum(r.multiplicity for r in result.log)

    def test_default_band_and_levels(self):
        """Test the default band fraction and first level."""
        params = Thm5bParams(h=HarmonicFn.atom(0.0, 1.0))

        assert params.resolved_gamma == DEFAULT_BAND_GAMMA
        assert params.first_level == 8
        assert square_harnack_gamma() < params.resolved_gamma

    def test_atom_late_claims_pass(self):
        """Test an atom kernel at depth 14 builds squares whose late claims hold."""
        params = Thm5bParams(h=HarmonicFn.atom(0.0, 1.0), eta0=1.0, eta=0.5, max_depth=14)

        result = thm5b_build(params)
        report = claims_check(result.zeros, result.log, result.params)

        assert len(result.log) >= 2
        assert result.harnack_gamma == pytest.approx(square_harnack_gamma())
        assert report.late()
        assert report.late_passed
        for row in report.late():
            assert row.hidden
            assert row.witness_found
            assert row.lower_bound_margin >= 0.0

    def test_greedy_thinning_keeps_margins_monotone(self):
        """Test accepted H values grow and every summable term stays below the last one."""
        result = thm5b_build(Thm5bParams(h=HarmonicFn.atom(0.0, 1.0), max_depth=14))

        h_values = [r.h_value for r in result.log]
        assert h_values == sorted(set(h_values))
        assert is_monotone(result.log.values("defR"), increasing=False)
        assert all(r.checks["summable"].passed for r in result.log)
        assert all(r.checks["separation"].passed for r in result.log)

    def test_geometric_thinning_admits_one_square(self):
        """Test 2^{-accepted} thinning keeps only the first square of a slowly decaying tail."""
        params = Thm5bParams(h=HarmonicFn.atom(0.0, 1.0), thinning=Thinning.GEOMETRIC)

        result = thm5b_build(params)

        assert len(result.log) == 1
        assert "summable term above the thinning threshold" in result.skipped.values()

    def test_no_acceptable_square(self):
        """Test a huge H with the default band places nothing."""
        with pytest.raises(PreconditionError):
            thm5b_build(self._params(h=HarmonicFn.constant(100.0), gamma=None, max_depth=3))

    @pytest.mark.slow
    def test_claims_rows(self):
        """Test one claims row per record with a radius."""
        result = thm5b_build(self._params())
        report = claims_check(result.zeros, result.log, result.params)

        assert len(report.rows) == len(result.log)
        assert {row.k for row in report.rows} == {r.k for r in result.log}
        assert set(report.late()) <= set(report.rows)
