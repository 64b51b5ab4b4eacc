"""Formatting utilities for blaschkectl.

Rich tables and panels for sweeps, construction logs, claims, evaluations and
verification reports. Structured formats (json/yaml/text) bypass this package.
"""

# Base utilities
from .base import (
    build_panel,
    field,
    format_bool,
    format_classification,
    format_complex,
    format_number,
    format_pass,
)

# Construction formatting
from .construction import build_zeros_panel, create_claims_table, create_log_table

# Report formatting
from .report import build_eval_panel, create_suite_table

# Sweep formatting
from .sweep import build_classification_panel, create_sweep_table

__all__ = [
    # Base
    "build_panel",
    "field",
    "format_bool",
    "format_classification",
    "format_complex",
    "format_number",
    "format_pass",
    # Sweeps
    "create_sweep_table",
    "build_classification_panel",
    # Constructions
    "create_log_table",
    "build_zeros_panel",
    "create_claims_table",
    # Reports
    "create_suite_table",
    "build_eval_panel",
]
