"""Unit tests for blaschkectl.exit_codes module.

Tests cover:
- ExitCode enum values and consistency
- Exit code descriptions mapping
"""

from blaschkectl.exit_codes import EXIT_CODE_DESCRIPTIONS, ExitCode


class TestExitCode:
    """Tests for ExitCode enum."""

    def test_success_is_zero(self):
        """Test SUCCESS exit code is 0."""
        assert ExitCode.SUCCESS == 0
        assert int(ExitCode.SUCCESS) == 0

    def test_verification_failed_is_one(self):
        """Test VERIFICATION_FAILED is 1."""
        assert ExitCode.VERIFICATION_FAILED == 1

    def test_usage_error_is_two(self):
        """Test USAGE_ERROR is 2."""
        assert ExitCode.USAGE_ERROR == 2

    def test_solver_failure_is_three(self):
        """Test SOLVER_FAILURE is 3."""
        assert ExitCode.SOLVER_FAILURE == 3

    def test_contract_is_exhaustive(self):
        """Test the CLI exits with exactly four codes."""
        assert sorted(code.value for code in ExitCode) == [0, 1, 2, 3]


class TestExitCodeDescriptions:
    """Tests for EXIT_CODE_DESCRIPTIONS mapping."""

    def test_every_code_is_described(self):
        """Test each exit code has a non-empty description."""
        for code in ExitCode:
            assert code in EXIT_CODE_DESCRIPTIONS
            assert EXIT_CODE_DESCRIPTIONS[code]

    def test_no_extra_descriptions(self):
        """Test the mapping has no keys beyond the enum."""
        assert set(EXIT_CODE_DESCRIPTIONS) == set(ExitCode)
