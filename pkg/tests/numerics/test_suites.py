"""Unit tests for blaschkectl.suites module.

Tests cover:
- SuiteReport bookkeeping
- Geometry and LP suites at small sizes
- The thm2 and thm5a growth-versus-bounded dichotomies
- Claims rows folded into a suite report
- Suite registry and input checks
"""

import pytest

from blaschkectl.constructions import ClaimRow, ClaimsReport, Thm5bParams, thm5b_build
from blaschkectl.errors import DomainError
from blaschkectl.harmonic import HarmonicFn
from blaschkectl.suites import (
    SUITES,
    SuiteReport,
    claims_suite,
    claims_to_suite,
    geometry_suite,
    lemma3_suite,
    lp_suite,
    thm2_suite,
    thm4_suite,
    thm5a_suite,
)


def _row(k, passed=True, capped=False):
    return ClaimRow(
        k=k,
        capped=capped,
        hidden=passed,
        survivors=0 if passed else 3,
        witness_found=True,
        witness=0.5j,
        lower_bound_margin=1.0 if passed else -1.0,
    )


class TestSuiteReport:
    """Tests for SuiteReport."""

    def test_bounds(self):
        """Test at_most / at_least verdicts and failing names."""
        report = SuiteReport("x")
        report.at_most("small", 1.0, 2.0)
        report.at_least("big", 1.0, 2.0)

        assert not report.passed
        assert report.failing == ["big"]
        payload = report.to_dict()
        assert payload["suite"] == "x"
        assert [p["name"] for p in payload["properties"]] == ["small", "big"]

    def test_empty_passes(self):
        """Test a report with no properties passes."""
        assert SuiteReport("empty").passed

    def test_registry(self):
        """Test every suite is registered by name."""
        assert set(SUITES) >= {
            *("geometry", "harmonic", "lp", "lemma1", "lemma3"),
            *("thm2", "thm3", "thm4", "thm5a", "claims"),
        }


# ========================== Numerical Suites ==========================


class TestNumericalSuites:
    """Tests for the sampled suites at small sizes."""

    def test_geometry(self):
        """Test the geometry identities hold on a small sample."""
        report = geometry_suite(samples=200, seed=1)

        assert report.passed, report.failing
        names = {p.name for p in report.properties}
        assert {"whitney_tiling", "pseudo_disk_area_upper", "pseudo_disk_area_lower"} <= names

    def test_lp(self):
        """Test the LP properties on a few random instances."""
        report = lp_suite(instances=3, seed=2)

        assert report.passed, report.failing
        assert report.properties[0].name == "single_point_optimum"

    @pytest.mark.slow
    def test_lemma3_properties(self):
        """Test the builder suite reports both properties."""
        names = [p.name for p in lemma3_suite(grid=8).properties]

        assert names == ["partial_sum_certificate", "selected_growth"]

    @pytest.mark.slow
    def test_thm4_properties(self):
        """Test the radial family reports its hypothesis and majorant margin."""
        report = thm4_suite(depth=4, per_square=4)

        assert [p.name for p in report.properties] == [
            "family_separation",
            "hypothesis",
            "corollary_sum",
            "explicit_majorant",
        ]

    @pytest.mark.slow
    def test_thm2_dichotomy(self):
        """Test H grows along the selection while -log|B| stays majorized at level H."""
        report = thm2_suite()

        assert report.passed, report.failing
        assert [p.name for p in report.properties] == [
            "selected_growth",
            "square_bounds",
            "bounded_at_h",
        ]

    @pytest.mark.slow
    def test_thm5a_dichotomy(self):
        """Test growth when filtered at H1 and a bounded mass when filtered at H2."""
        report = thm5a_suite()

        assert report.passed, report.failing
        assert report.properties[1].measured >= 2.0
        assert report.properties[2].measured <= 1.5


# ========================== Claims Tests ==========================


class TestClaimsSuite:
    """Tests for claims_to_suite and claims_suite."""

    def test_early_failure_tolerated(self):
        """Test only late squares decide the verdict."""
        claims = ClaimsReport([_row(2, passed=False), _row(3), _row(4)])
        report = claims_to_suite(claims)

        assert report.passed
        assert [p.name for p in report.properties] == [
            "square_k2",
            "square_k3",
            "square_k4",
            "late_squares",
        ]

    def test_late_failure(self):
        """Test a failing late square fails the suite."""
        report = claims_to_suite(ClaimsReport([_row(2), _row(3), _row(4, passed=False)]))

        assert not report.passed
        assert "square_k4" in report.failing

    def test_all_late_capped(self):
        """Test a suite without uncapped late squares fails."""
        report = claims_to_suite(ClaimsReport([_row(2, capped=True)]))

        assert report.failing == ["late_squares"]

    def test_atom_construction_passes(self):
        """Test the claims suite passes on the default atom-kernel construction."""
        result = thm5b_build(Thm5bParams(h=HarmonicFn.atom(0.0, 1.0), max_depth=14))

        report = claims_suite(result.zeros, result.log, result.params)

        assert report.passed, report.failing
        assert report.properties[-1].name == "late_squares"

    def test_needs_inputs(self):
        """Test claims_suite without a construction."""
        with pytest.raises(DomainError):
            claims_suite()
