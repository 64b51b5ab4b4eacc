"""Unit tests for blaschkectl.harmonic module.

Tests cover:
- Poisson kernel and harmonic measure of arcs, against quadrature
- Boundary measures and HarmonicFn
- H_Λ
- Harnack bounds and the square constant
- The inductive square builder
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blaschkectl.blaschke import ZeroSet
from blaschkectl.const import HQ_LOWER_BOUND_C
from blaschkectl.errors import ConstructionError, DomainError
from blaschkectl.harmonic import (
    BoundaryMeasure,
    HarmonicFn,
    H_Lambda,
    calibrate_hq_constant,
    evaluate,
    h_Q,
    harmonic_measure,
    harmonic_measure_quadrature,
    harnack_bounds,
    lemma3_build,
    poisson_kernel,
    poisson_kernel_many,
    square_harnack_gamma,
    square_samples,
)
from blaschkectl.hypgeo import BoundaryArc, WhitneySquare, pseudo_dist


class TestKernels:
    """Tests for the Poisson kernel and harmonic measure."""

    def test_kernel_at_origin(self):
        """Test P(0, θ) = 1."""
        assert poisson_kernel(0.0, 2.1) == pytest.approx(1.0)

    def test_kernel_known_value(self):
        """Test P(r, 0) = (1 + r) / (1 - r)."""
        assert poisson_kernel(0.5, 0.0) == pytest.approx(3.0)

    def test_kernel_matrix_shape(self):
        """Test the kernel matrix has one row per point."""
        matrix = poisson_kernel_many(np.array([0.0, 0.5j]), np.array([0.0, 1.0, 2.0]))

        assert matrix.shape == (2, 3)
        np.testing.assert_allclose(matrix[0], 1.0)

    def test_measure_at_origin_is_length(self):
        """Test ω(0, I) = |I| / 2π."""
        arc = BoundaryArc(0.3, 1.3)

        assert harmonic_measure(0.0, arc) == pytest.approx(1.0 / (2 * math.pi))

    def test_full_circle(self):
        """Test the full circle has measure 1."""
        assert harmonic_measure(0.9j, BoundaryArc.full_circle()) == 1.0

    @settings(max_examples=30, deadline=None)
    @given(
        st.floats(min_value=0.0, max_value=0.97),
        st.floats(min_value=0.0, max_value=2 * math.pi),
        st.floats(min_value=-3.0, max_value=3.0),
        st.floats(min_value=0.01, max_value=6.0),
    )
    def test_closed_form_matches_quadrature(self, r, phi, lo, width):
        """Test the closed form against adaptive quadrature."""
        z = r * complex(math.cos(phi), math.sin(phi))
        arc = BoundaryArc(lo, lo + width)

        assert harmonic_measure(z, arc) == pytest.approx(
            harmonic_measure_quadrature(z, arc), abs=1e-8
        )

    def test_h_q_lower_bound_on_square(self):
        """Test h_Q stays above the lower bound constant on its own square."""
        square = WhitneySquare(5, 7)
        values = [h_Q(square, z) for z in square_samples(square, 32)]

        assert min(values) >= HQ_LOWER_BOUND_C

    @pytest.mark.parametrize("count", [1, 4, 5, 32])
    def test_square_samples_count(self, count):
        """Test square_samples returns exactly count points inside the square's closure."""
        square = WhitneySquare(4, 3)
        points = square_samples(square, count)
        gaps = 1.0 - np.abs(points)

        assert points.shape == (count,)
        assert np.all(gaps >= square.side - 1e-12)
        assert np.all(gaps <= 2.0 * square.side + 1e-12)

    def test_calibration(self):
        """Test per-level minima at small scale."""
        minima = calibrate_hq_constant(levels=3, samples=8)

        assert sorted(minima) == [1, 2, 3]
        assert all(HQ_LOWER_BOUND_C <= v <= 1.0 for v in minima.values())


# ========================== Measures ==========================


class TestHarmonicFn:
    """Tests for BoundaryMeasure and HarmonicFn."""

    def test_constant(self):
        """Test the constant function."""
        h = HarmonicFn.constant(2.0)

        np.testing.assert_allclose(h(np.array([0.0, 0.7j, -0.95])), 2.0, rtol=1e-12)
        assert h.total_mass == pytest.approx(2.0)

    def test_atom_value_at_origin(self):
        """Test an atom of mass m has H(0) = m."""
        assert HarmonicFn.atom(1.0, 3.5)(0.0) == pytest.approx(3.5)

    def test_sum_and_scale(self):
        """Test linearity."""
        h = HarmonicFn.atom(0.0, 1.0) + HarmonicFn.constant(1.0)

        assert h.scaled(2.0)(0.5) == pytest.approx(2.0 * (3.0 + 1.0))

    def test_negative_weights_rejected(self):
        """Test weights must be nonnegative."""
        with pytest.raises(DomainError):
            BoundaryMeasure(atom_thetas=(0.0,), atom_masses=(-1.0,))
        with pytest.raises(DomainError):
            HarmonicFn.constant(1.0).scaled(-1.0)

    def test_dict_round_trip(self):
        """Test to_dict/from_dict keep atoms and arcs."""
        h = HarmonicFn.atom(0.5, 2.0) + HarmonicFn.constant(1.0)
        back = HarmonicFn.from_dict(h.to_dict())

        assert back(0.3j) == pytest.approx(h(0.3j))

    def test_from_squares(self):
        """Test Σ μ h_Q equals the sum of harmonic measures."""
        squares = [WhitneySquare(2, 0), WhitneySquare(3, 5)]
        h = HarmonicFn.from_squares(squares, [2.0, 0.5])
        z = 0.4 - 0.2j

        expected = 2.0 * h_Q(squares[0], z) + 0.5 * h_Q(squares[1], z)
        assert h(z) == pytest.approx(expected)

    def test_evaluate(self):
        """Test evaluate on an iterable."""
        values = evaluate(HarmonicFn.constant(1.0), [0.1, 0.2j])

        np.testing.assert_allclose(values, 1.0)

    def test_h_lambda(self):
        """Test H_Λ(0) for a zero at 0.5 is the shadow length."""
        value = H_Lambda(ZeroSet.simple([0.5]), 0.0)

        assert value == pytest.approx(4.0 * math.asin(0.25), rel=1e-12)

    @pytest.mark.parametrize("lam", [0.5j, -0.5, 0.5 * complex(math.cos(2.0), math.sin(2.0))])
    def test_h_lambda_rotation_invariant(self, lam):
        """Test H_Λ(0) depends only on |λ|."""
        value = H_Lambda(ZeroSet.simple([lam]), 0.0)

        assert value == pytest.approx(H_Lambda(ZeroSet.simple([0.5]), 0.0), rel=1e-12)

    def test_h_lambda_empty(self):
        """Test H_Λ of no zeros vanishes."""
        assert H_Lambda(ZeroSet.empty(), 0.2) == 0.0


# ========================== Harnack ==========================


class TestHarnack:
    """Tests for Harnack bounds."""

    @settings(max_examples=30, deadline=None)
    @given(
        st.complex_numbers(max_magnitude=0.9),
        st.complex_numbers(max_magnitude=0.9),
        st.floats(min_value=0.0, max_value=2 * math.pi),
    )
    def test_kernel_ratio_within_bounds(self, z, w, theta):
        """Test P(z, θ)/P(w, θ) lies in the sharp range."""
        bounds = harnack_bounds(z, w)

        assert bounds.contains(poisson_kernel(z, theta) / poisson_kernel(w, theta), rtol=1e-9)

    def test_bounds_values(self):
        """Test the range for ρ = 0.5."""
        bounds = harnack_bounds(0.0, 0.5)

        assert bounds.r == pytest.approx(pseudo_dist(0.0, 0.5))
        assert bounds.lo == pytest.approx(1.0 / 3.0)
        assert bounds.hi == pytest.approx(3.0)

    def test_square_gamma(self):
        """Test the sharp square constant is about 0.024 at every deep level."""
        gamma = square_harnack_gamma()

        assert 0.02 < gamma < 0.03
        assert square_harnack_gamma(level=12) == pytest.approx(gamma, rel=0.05)


# ========================== Inductive Builder ==========================


class TestLemma3Build:
    """Tests for lemma3_build."""

    def _input(self):
        squares = [WhitneySquare(k, 0) for k in range(3, 11)]
        bounds = [2.0 ** (q.level / 2.0) for q in squares]
        return squares, bounds

    def test_certificate(self):
        """Test every partial sum respects M_j + Σ 2^{-m/2}."""
        squares, bounds = self._input()
        result = lemma3_build(squares, bounds, grid=8)

        assert result.selected
        assert result.certificate_holds
        assert result.partial_constant < 1.0 / (math.sqrt(2.0) - 1.0) + 1e-12
        assert result.coefficients[0] == pytest.approx(math.sqrt(2.0))

    def test_result_function(self):
        """Test H is the weighted sum of the selected h_Q."""
        squares, bounds = self._input()
        result = lemma3_build(squares, bounds, grid=8)
        expected = sum(
            c * h_Q(squares[i], 0.3) for i, c in zip(result.selected, result.coefficients)
        )

        assert result.h(0.3) == pytest.approx(expected)

    def test_unordered_input(self):
        """Test increasing sides are rejected."""
        with pytest.raises(DomainError):
            lemma3_build([WhitneySquare(4, 0), WhitneySquare(3, 0)], [1.0, 1.0])

    def test_repeated_square(self):
        """Test repeated squares are rejected."""
        with pytest.raises(DomainError):
            lemma3_build([WhitneySquare(3, 0), WhitneySquare(3, 0)], [1.0, 1.0])

    def test_small_bounds(self):
        """Test bounds too small to absorb even the first term."""
        with pytest.raises(ConstructionError):
            lemma3_build([WhitneySquare(3, 0)], [0.1], grid=4)

    def test_short_input_keeps_certificate(self):
        """Test an input too short for the radius thresholds still selects, certified."""
        squares = [WhitneySquare(3, 0), WhitneySquare(3, 1), WhitneySquare(4, 0)]
        result = lemma3_build(squares, [1.0, 1.0, 1.0], grid=8)

        assert result.selected[0] == 0
        assert result.branches[0] == "certificate"
        assert len(result.branches) == len(result.selected)
        assert result.certificate_holds
        assert result.growth_holds

    def test_max_selections_unreachable(self):
        """Test asking for more selections than the input allows."""
        squares, bounds = self._input()
        with pytest.raises(ConstructionError):
            lemma3_build(squares, bounds, grid=8, max_selections=50)
