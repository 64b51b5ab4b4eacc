"""Transformers between artifact files and domain objects.

This package reads and writes the JSON formats of zero sets, boundary measures,
point lists, constraint sets and construction logs, and parses H specifications.
"""

from .base import extract_list, parse_complex, parse_number, read_json_file
from .constraints import load_constraints
from .logs import load_log, log_records
from .measure import load_measure, parse_h_spec
from .params import load_params, params_from_dict, params_to_dict
from .points import load_points, parse_point_flags, square_grid
from .zeros import load_zeros, parse_zero_flag, zeros_from_dict, zeros_to_dict

__all__ = [
    # Base utilities
    "read_json_file",
    "extract_list",
    "parse_number",
    "parse_complex",
    # Zero sets
    "load_zeros",
    "zeros_from_dict",
    "zeros_to_dict",
    "parse_zero_flag",
    # Harmonic functions
    "parse_h_spec",
    "load_measure",
    # Grids and constraints
    "load_points",
    "parse_point_flags",
    "square_grid",
    "load_constraints",
    # Construction logs and parameters
    "load_log",
    "log_records",
    "load_params",
    "params_from_dict",
    "params_to_dict",
]
