"""Unit tests for blaschkectl.transformers package.

Tests cover:
- ZeroSet files and --zero flags
- Point lists, --point flags and Whitney-square grids
- H specifications
- Construction logs, parameters and constraint sets
"""

import json
import math

import numpy as np
import pytest

from blaschkectl.blaschke import ZeroSet
from blaschkectl.constructions import Check, ConstructionLog, ConstructionRecord, Thm5bParams
from blaschkectl.const import SquareBranch, Thinning
from blaschkectl.errors import ParseError
from blaschkectl.harmonic import HarmonicFn
from blaschkectl.hypgeo import WhitneySquare
from blaschkectl.output import write_json, write_jsonl
from blaschkectl.transformers import (
    load_constraints,
    load_log,
    load_params,
    load_points,
    load_zeros,
    log_records,
    params_from_dict,
    params_to_dict,
    parse_h_spec,
    parse_point_flags,
    parse_zero_flag,
    square_grid,
    zeros_from_dict,
    zeros_to_dict,
)

# ========================== Zero Sets ==========================


class TestZeros:
    """Tests for ZeroSet files and flags."""

    def test_mult_defaults_to_one(self):
        """Test a missing multiplicity means a simple zero."""
        zeros = zeros_from_dict({"zeros": [{"re": 0.5, "im": 0.0}]})

        assert zeros.mults == (1,)
        assert zeros.points == (0.5 + 0j,)

    def test_origin_allowed(self):
        """Test a zero at the origin is accepted from files."""
        zeros = zeros_from_dict({"zeros": [{"re": 0, "im": 0, "mult": 2}]})

        assert zeros.total_multiplicity == 2

    def test_envelope_accepted(self):
        """Test structured output can be fed back in."""
        raw = {"schema": "x", "data": {"zeros": [{"re": 0.1, "im": 0.2}]}}

        assert len(zeros_from_dict(raw)) == 1

    def test_outside_disc_rejected(self):
        """Test |z| >= 1 is a ParseError."""
        with pytest.raises(ParseError):
            zeros_from_dict({"zeros": [{"re": 1.0, "im": 0.0}]})

    def test_bad_multiplicity(self):
        """Test a non-integer multiplicity is rejected."""
        with pytest.raises(ParseError, match="mult"):
            zeros_from_dict({"zeros": [{"re": 0.1, "im": 0.0, "mult": 1.5}]})

    def test_file(self, tmp_path):
        """Test reading what zeros_to_dict wrote."""
        zeros = ZeroSet((0.5 + 0.1j, -0.3j), (3, 1))
        path = write_json(tmp_path / "zeros.json", zeros_to_dict(zeros))

        assert load_zeros(path) == ZeroSet((0.5 + 0.1j, -0.3j), (3, 1), allow_origin=True)

    def test_invalid_json_file(self, tmp_path):
        """Test invalid JSON names the file."""
        path = tmp_path / "zeros.json"
        path.write_text("{not json")

        with pytest.raises(ParseError) as info:
            load_zeros(path)
        assert info.value.source == str(path)

    @pytest.mark.parametrize(
        "text,expected", [("0.5,0", (0.5 + 0j, 1)), ("0,-0.25,4", (-0.25j, 4))]
    )
    def test_zero_flag(self, text, expected):
        """Test re,im and re,im,mult."""
        assert parse_zero_flag(text) == expected

    @pytest.mark.parametrize("text", ["0.5", "a,b", "0,0,x", "1,2,3,4"])
    def test_zero_flag_rejected(self, text):
        """Test malformed --zero values."""
        with pytest.raises(ParseError):
            parse_zero_flag(text)


# ========================== Points ==========================


class TestPoints:
    """Tests for point lists and grids."""

    def test_point_file(self, tmp_path):
        """Test a points file."""
        path = tmp_path / "points.json"
        path.write_text(json.dumps({"points": [{"re": 0.0, "im": 0.5}, {"re": -0.2, "im": 0}]}))

        np.testing.assert_array_equal(load_points(path), np.array([0.5j, -0.2]))

    def test_point_outside_disc(self, tmp_path):
        """Test points on the circle are rejected."""
        path = tmp_path / "points.json"
        path.write_text(json.dumps({"points": [{"re": 0.0, "im": 1.0}]}))

        with pytest.raises(ParseError):
            load_points(path)

    def test_point_flags(self):
        """Test --point values."""
        np.testing.assert_array_equal(parse_point_flags(["0,0", "0.5,-0.5"]), [0, 0.5 - 0.5j])

    def test_square_grid_size(self):
        """Test per_square points for each of the 2 + 4 + 8 squares up to level 3."""
        grid = square_grid(3, 5)

        assert grid.shape == (14 * 5,)
        assert np.all(np.abs(grid) < 1.0)


# ========================== H Specifications ==========================


class TestHSpec:
    """Tests for parse_h_spec."""

    def test_constant(self):
        """Test const:C is constant everywhere."""
        h = parse_h_spec("const:2.5")

        np.testing.assert_allclose(h(np.array([0, 0.5, 0.9j])), 2.5, rtol=1e-12)

    def test_atom(self):
        """Test atom:THETA:MASS is MASS times the Poisson kernel."""
        h = parse_h_spec("atom:0:4")

        assert h(0.0) == pytest.approx(4.0)
        assert h(0.5) == pytest.approx(4.0 * 1.5 / 0.5)

    def test_atom_default_mass(self):
        """Test the mass defaults to 1."""
        assert parse_h_spec("atom:0")(0.0) == pytest.approx(1.0)

    def test_hlambda_needs_zeros(self):
        """Test hlambda without a zero set."""
        with pytest.raises(ParseError, match="zero set"):
            parse_h_spec("hlambda")

    def test_hlambda_scaled(self):
        """Test hlambda:SCALE multiplies H_Lambda."""
        zeros = ZeroSet((0.5 + 0j,), (1,))
        base = parse_h_spec("hlambda", zeros)(0.0)

        assert parse_h_spec("hlambda:2", zeros)(0.0) == pytest.approx(2.0 * base)

    def test_measure_file(self, tmp_path):
        """Test a measure JSON path."""
        path = write_json(tmp_path / "h.json", HarmonicFn.atom(1.0, 2.0).to_dict())

        assert parse_h_spec(str(path))(0.0) == pytest.approx(2.0)

    @pytest.mark.parametrize("spec", ["const:-1", "atom:0:0", "nope", "const:x"])
    def test_rejected(self, spec):
        """Test invalid specifications."""
        with pytest.raises(ParseError):
            parse_h_spec(spec)


# ========================== Logs, Params, Constraints ==========================


class TestLogsAndParams:
    """Tests for construction logs, parameter files and constraint sets."""

    def _log(self) -> ConstructionLog:
        log = ConstructionLog()
        log.append(
            ConstructionRecord(
                k=4,
                z=0.90625 + 0j,
                h_value=1.25,
                radius=math.exp(-math.sqrt(1.25)),
                multiplicity=3,
                placed=7,
                square=WhitneySquare(4, 0),
                branch=SquareBranch.MAX,
                checks={"defN": Check.at_least(3.0, 1.0)},
            )
        )
        return log

    def test_log_file(self, tmp_path):
        """Test records read back with their checks and square."""
        path = write_jsonl(tmp_path / "log.jsonl", log_records(self._log()))

        record = next(iter(load_log(path)))
        assert record.k == 4
        assert record.square == WhitneySquare(4, 0)
        assert record.branch == SquareBranch.MAX
        assert record.checks["defN"].passed is True
        assert record.checks["defN"].margin == 2.0

    def test_log_bad_line(self, tmp_path):
        """Test a broken line is reported by number."""
        path = tmp_path / "log.jsonl"
        path.write_text('{"k": 1}\n')

        with pytest.raises(ParseError, match="line 1"):
            load_log(path)

    def test_params(self, tmp_path):
        """Test parameters keep H, eta values and thinning."""
        params = Thm5bParams(h=HarmonicFn.atom(0.0, 4.0), eta=0.25, thinning=Thinning.NONE)
        path = write_json(tmp_path / "params.json", params_to_dict(params))

        loaded = load_params(path)
        assert loaded.eta == 0.25
        assert loaded.thinning == Thinning.NONE
        assert loaded.h(0.0) == pytest.approx(4.0)

    def test_params_missing_h(self):
        """Test parameters without a measure."""
        with pytest.raises(ParseError):
            params_from_dict({"eta": 0.5})

    def test_params_bad_eta(self):
        """Test a precondition failure becomes a ParseError."""
        with pytest.raises(ParseError):
            params_from_dict({"h": {"atoms": [{"theta": 0, "mass": 1}]}, "eta": 2.0})

    def test_constraints_file(self, tmp_path):
        """Test a ConstraintSet file."""
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"constraints": [{"re": 0.5, "im": 0.0, "value": 1.0}]}))

        cset = load_constraints(path)
        assert len(cset) == 1
        assert cset.values[0] == 1.0

    def test_constraints_negative_value(self, tmp_path):
        """Test negative targets are rejected."""
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"constraints": [{"re": 0.5, "im": 0.0, "value": -1}]}))

        with pytest.raises(ParseError):
            load_constraints(path)
