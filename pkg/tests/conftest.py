"""Pytest configuration and fixtures for blaschkectl tests."""

import pytest
from click.testing import CliRunner

from blaschkectl import _coercion


@pytest.fixture
def cli_runner() -> CliRunner:
    """Provide a Click CLI test runner."""
    return CliRunner()


@pytest.fixture(autouse=True)
def reset_warn_once():
    """Forget which config keys were warned about, so tests see every warning."""
    _coercion._warned.clear()
    yield
    _coercion._warned.clear()
