"""Input sanitization and validation utilities."""

import math
import re
from pathlib import Path


class ValidationError(Exception):
    """Raised when input validation fails."""
    pass


VALUE_SEPARATOR = re.compile(r"[\s,]+")


def parse_value_list(text: str | None) -> list[float]:
    """Parse a sweep value list such as ``0,5,10,15,20``.

    Args:
        text: The raw list

    Returns:
        The values in the given order

    Raises:
        ValidationError: If the list is empty or not numeric
    """
    if not text or not isinstance(text, str) or not text.strip(" ,"):
        raise ValidationError("Value list must be a non-empty string")

    try:
        values = [float(v) for v in VALUE_SEPARATOR.split(text.strip(" ,\t\n"))]
    except ValueError:
        raise ValidationError(f"Invalid value list: {text}") from None
    if any(math.isnan(v) for v in values):
        raise ValidationError(f"Invalid value list: {text}")
    return values


def validate_input_path(path: str | Path | None, kind: str = "file") -> Path:
    """Validate that an input path exists.

    Args:
        path: The path to validate
        kind: "file", "dir" or "any"

    Returns:
        The resolved Path object

    Raises:
        ValidationError: If the path is invalid
    """
    if not path or not isinstance(path, (str, Path)):
        raise ValidationError("Path must be a non-empty string")

    p = Path(path).resolve()

    if not p.exists():
        raise ValidationError(f"Path does not exist: {path}")

    if kind == "file" and not p.is_file():
        raise ValidationError(f"Path is not a file: {path}")

    if kind == "dir" and not p.is_dir():
        raise ValidationError(f"Path is not a directory: {path}")

    return p


def validate_output_dir(path: str | Path | None) -> Path:
    """Create the output directory if needed.

    Raises:
        ValidationError: If the path exists as a file or cannot be created
    """
    if not path or not isinstance(path, (str, Path)):
        raise ValidationError("Output directory must be a non-empty string")

    p = Path(path)
    if p.exists() and not p.is_dir():
        raise ValidationError(f"Output path is not a directory: {path}")
    try:
        p.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ValidationError(f"Cannot create output directory {path}: {e.strerror}") from e
    return p
