"""Output directory checks."""

import os
from pathlib import Path

from topojscc.validators.types import IssueLevel, ValidationIssue


def validate_output_dir(output_dir: Path | str) -> list[ValidationIssue]:
    """The directory must be creatable and writable; existing files may be overwritten."""
    issues: list[ValidationIssue] = []
    path = Path(output_dir)

    if path.exists() and not path.is_dir():
        issues.append(ValidationIssue(
            level=IssueLevel.ERROR,
            code="OUT_NOT_DIR",
            message=f"Output path {path} exists and is not a directory",
        ))
        return issues

    parent = path
    while not parent.exists() and parent != parent.parent:
        parent = parent.parent
    if not os.access(parent, os.W_OK):
        issues.append(ValidationIssue(
            level=IssueLevel.ERROR,
            code="OUT_NOT_WRITABLE",
            message=f"Output directory {path} is not writable",
            suggestion="Pass a different --out directory",
        ))
    elif path.is_dir() and any(path.iterdir()):
        issues.append(ValidationIssue(
            level=IssueLevel.WARNING,
            code="OUT_NOT_EMPTY",
            message=f"Output directory {path} is not empty; files may be overwritten",
        ))
    return issues
