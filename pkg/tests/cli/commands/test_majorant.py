"""Unit tests for blaschkectl.commands.majorant module.

Tests cover:
- single constraint-set solves
- depth sweeps, sweep.csv and classification.txt
- option validation
"""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from blaschkectl.main import cli

SWEEP = ["--depths", "2,3,4", "--per-square", "4", "--grid-n", "32"]


def _write_constraints(path: str, rows: list[tuple[float, float, float]]) -> None:
    Path(path).write_text(
        json.dumps({"constraints": [{"re": re, "im": im, "value": v} for re, im, v in rows]})
    )


class TestMajorantSolve:
    """Tests for majorant --constraints."""

    @pytest.fixture
    def runner(self) -> CliRunner:
        """Create a CLI runner."""
        return CliRunner()

    def test_single_constraint(self, runner):
        """Test v (1 - r) / (1 + r) for one constraint at r = 0.5."""
        with runner.isolated_filesystem():
            _write_constraints("c.json", [(0.5, 0.0, 1.0)])
            result = runner.invoke(cli, ["majorant", "--constraints", "c.json", "--out", "m"])

            assert result.exit_code == 0, result.output
            solve = json.loads(Path("m/solve.json").read_text())
            assert solve["status"] == "optimal"
            assert solve["optimal_mass"] == pytest.approx(1.0 / 3.0, abs=1e-9)
            assert json.loads(Path("m/manifest.json").read_text())["outputs"] == ["solve.json"]

    def test_origin_constraint(self, runner):
        """Test a constraint at the origin needs mass equal to its value."""
        with runner.isolated_filesystem():
            _write_constraints("c.json", [(0.0, 0.0, 2.5)])
            result = runner.invoke(
                cli, ["-o", "json", "majorant", "--constraints", "c.json", "--out", "m"]
            )

            payload = json.loads(result.output)
            assert payload["schema"] == "blaschke.majorant.solve/v1"
            assert payload["data"]["optimal_mass"] == pytest.approx(2.5, abs=1e-9)

    def test_empty_constraints(self, runner):
        """Test the empty constraint set has mass 0."""
        with runner.isolated_filesystem():
            _write_constraints("c.json", [])
            result = runner.invoke(cli, ["majorant", "--constraints", "c.json", "--out", "m"])

            assert result.exit_code == 0, result.output
            solve = json.loads(Path("m/solve.json").read_text())
            assert solve["optimal_mass"] == 0.0

    def test_negative_value(self, runner):
        """Test a negative target is a usage error."""
        with runner.isolated_filesystem():
            _write_constraints("c.json", [(0.5, 0.0, -1.0)])
            result = runner.invoke(cli, ["majorant", "--constraints", "c.json", "--out", "m"])

            assert result.exit_code == 2


# ========================== Sweep Tests ==========================


class TestMajorantSweep:
    """Tests for the depth sweep."""

    @pytest.fixture
    def runner(self) -> CliRunner:
        """Create a CLI runner."""
        return CliRunner()

    def test_sweep_outputs(self, runner):
        """Test one row per depth with nondecreasing masses."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                cli, ["majorant", "--zero", "0.5,0", "--zero", "-0.3,0.4,2", *SWEEP, "--out", "s"]
            )

            assert result.exit_code == 0, result.output
            rows = Path("s/sweep.csv").read_text().splitlines()
            assert rows[0] == "depth,count,mass,runtime_ms"
            assert [int(r.split(",")[0]) for r in rows[1:]] == [2, 3, 4]
            masses = [float(r.split(",")[2]) for r in rows[1:]]
            assert all(b >= a - 1e-9 for a, b in zip(masses, masses[1:]))
            classification = Path("s/classification.txt").read_text().strip()
            assert classification in ("bounded", "growth", "inconclusive")

    def test_runtime_omitted_without_timings(self, runner):
        """Test runtime_ms stays 0 so sweeps are reproducible."""
        with runner.isolated_filesystem():
            runner.invoke(cli, ["majorant", "--zero", "0.5,0", *SWEEP, "--out", "s"])

            runtimes = [r.split(",")[3] for r in Path("s/sweep.csv").read_text().splitlines()[1:]]
            assert set(runtimes) == {"0.0"}

    def test_reproducible(self, runner):
        """Test identical invocations write identical sweeps."""
        args = ["majorant", "--zero", "0.5,0.2", *SWEEP]
        with runner.isolated_filesystem():
            runner.invoke(cli, args + ["--out", "a"])
            runner.invoke(cli, args + ["--out", "b"])

            assert Path("a/sweep.csv").read_bytes() == Path("b/sweep.csv").read_bytes()

    def test_json_output(self, runner):
        """Test the structured sweep envelope."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                cli, ["-o", "json", "majorant", "--zero", "0.5,0", *SWEEP, "--out", "s"]
            )

            payload = json.loads(result.output)
            assert payload["schema"] == "blaschke.majorant.sweep/v1"
            assert [row["depth"] for row in payload["data"]["rows"]] == [2, 3, 4]
            assert payload["data"]["scale"] == 1.0
            assert payload["data"]["wep"] is False

    def test_wep(self, runner):
        """Test --wep reports the gap sweep."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                cli, ["-o", "json", "majorant", "--zero", "0.5,0", "--wep", *SWEEP, "--out", "s"]
            )

            assert result.exit_code == 0, result.output
            assert json.loads(result.output)["data"]["wep"] is True

    def test_depths_from_config(self, runner):
        """Test a comma-separated depth list in a config file."""
        with runner.isolated_filesystem():
            Path("m.cfg").write_text("depths = 2,3\nper_square = 4\ngrid_n = 32\n")
            result = runner.invoke(
                cli, ["--config", "m.cfg", "majorant", "--zero", "0.5,0", "--out", "s"]
            )

            assert result.exit_code == 0, result.output
            assert len(Path("s/sweep.csv").read_text().splitlines()) == 3


# ========================== Validation Tests ==========================


class TestMajorantValidation:
    """Tests for invalid majorant options."""

    @pytest.fixture
    def runner(self) -> CliRunner:
        """Create a CLI runner."""
        return CliRunner()

    @pytest.mark.parametrize("depths", ["a,b", "4,2", "3,3"])
    def test_bad_depths(self, runner, depths):
        """Test non-integer or non-increasing depths exit 2."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                cli, ["majorant", "--zero", "0.5,0", "--depths", depths, "--out", "s"]
            )

            assert result.exit_code == 2

    def test_non_positive_scale(self, runner):
        """Test --scale must be positive."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                cli, ["majorant", "--zero", "0.5,0", "--scale", "0", "--out", "s"]
            )

            assert result.exit_code == 2

    def test_hlambda_level(self, runner):
        """Test the hlambda H spec uses the given zero set."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                cli, ["majorant", "--zero", "0.5,0", "--h", "hlambda", *SWEEP, "--out", "s"]
            )

            assert result.exit_code == 0, result.output
