"""Exception hierarchy for topojscc."""


class TopoJSCCError(ValueError):
    """Base class for domain errors raised by the library.

    Every subclass carries a stable ``code`` so the CLI and the MCP tools can
    report failures uniformly.
    """
    code = "TOPOJSCC_ERROR"

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class ShapeError(TopoJSCCError):
    """Operand shapes disagree (names the offending node or operand)."""
    code = "SHAPE_MISMATCH"


class DomainError(TopoJSCCError):
    """Input values are outside the supported domain."""
    code = "DOMAIN"


class GradientError(TopoJSCCError):
    """Backward pass cannot proceed or produced non-finite values."""
    code = "GRADIENT"


class FormatError(TopoJSCCError):
    """A file (PGM, CSV, checkpoint) could not be parsed."""
    code = "FORMAT"


class ConfigError(TopoJSCCError):
    """A configuration value or file is invalid."""
    code = "CONFIG"
