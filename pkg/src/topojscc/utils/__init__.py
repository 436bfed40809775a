"""Utility modules."""

from topojscc.utils.executor import DEFAULT_WORKERS, run_work_items
from topojscc.utils.sanitize import (
    ValidationError,
    parse_value_list,
    validate_input_path,
    validate_output_dir,
)

__all__ = [
    "DEFAULT_WORKERS",
    "run_work_items",
    "ValidationError",
    "parse_value_list",
    "validate_input_path",
    "validate_output_dir",
]
