"""Numerical toolkit and CLI for Blaschke products in the unit disc.

This package builds zero sets, evaluates log|B| and the harmonic quantities
around them, computes minimal harmonic majorants and runs verification suites.

Entry point: blaschkectl.main:cli
"""

from .main import cli, main

__version__ = "0.1.0"
__version_info__ = tuple(int(x) for x in __version__.split(".")[:3])


def get_version() -> str:
    """Return the current version of blaschkectl."""
    return __version__


__all__ = ["cli", "main", "__version__", "__version_info__", "get_version"]
