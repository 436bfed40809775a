"""TopoJSCC - topology-aware deep joint source-channel coding."""

__version__ = "0.1.0"

from topojscc.errors import (
    TopoJSCCError,
    ShapeError,
    DomainError,
    GradientError,
    FormatError,
    ConfigError,
)
from topojscc.utils import ValidationError

__all__ = [
    "__version__",
    "TopoJSCCError",
    "ShapeError",
    "DomainError",
    "GradientError",
    "FormatError",
    "ConfigError",
    "ValidationError",
]
