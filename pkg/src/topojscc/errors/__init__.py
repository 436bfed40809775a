"""Error types and error intelligence."""

from topojscc.errors.exceptions import (
    TopoJSCCError,
    ShapeError,
    DomainError,
    GradientError,
    FormatError,
    ConfigError,
)
from topojscc.errors.patterns import ERROR_PATTERNS, ErrorPattern
from topojscc.errors.diagnosis import diagnose_error, diagnose_exception, format_diagnosis

__all__ = [
    "TopoJSCCError",
    "ShapeError",
    "DomainError",
    "GradientError",
    "FormatError",
    "ConfigError",
    "ERROR_PATTERNS",
    "ErrorPattern",
    "diagnose_error",
    "diagnose_exception",
    "format_diagnosis",
]
