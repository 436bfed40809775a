"""Dataset location checks."""

from pathlib import Path

from topojscc.data.synthetic import SYNTHETIC_PREFIX
from topojscc.validators.types import IssueLevel, ValidationIssue


def validate_dataset(dataset: Path | str) -> list[ValidationIssue]:
    """Check that a dataset path exists and holds PGM images.

    Synthetic dataset specs are accepted as is; the config validator covers them.
    """
    issues: list[ValidationIssue] = []
    if str(dataset).startswith(SYNTHETIC_PREFIX):
        return issues

    path = Path(dataset)
    if not path.exists():
        issues.append(ValidationIssue(
            level=IssueLevel.ERROR,
            code="NO_DATASET",
            message=f"Dataset not found at {path}",
            suggestion="Generate one with 'topojscc gen' or use dataset = synthetic:rings",
        ))
        return issues

    if path.is_dir() and not any(p.suffix.lower() == ".pgm" for p in path.iterdir()):
        issues.append(ValidationIssue(
            level=IssueLevel.ERROR,
            code="EMPTY_DATASET",
            message=f"No images found in {path}",
            suggestion="Images must be binary PGM (P5) files with a .pgm suffix",
        ))
    elif path.is_file() and path.suffix.lower() != ".pgm":
        issues.append(ValidationIssue(
            level=IssueLevel.WARNING,
            code="UNEXPECTED_SUFFIX",
            message=f"{path.name} does not have a .pgm suffix",
        ))
    return issues


def validate_checkpoints(checkpoints: list[Path | str]) -> list[ValidationIssue]:
    return [
        ValidationIssue(
            level=IssueLevel.ERROR,
            code="NO_CHECKPOINT",
            message=f"Checkpoint not found: {c}",
            suggestion="Train one with 'topojscc train --out <dir>'",
        )
        for c in checkpoints
        if not Path(c).is_file()
    ]
