"""Validation modules."""

from topojscc.validators.types import (
    IssueLevel,
    ValidationIssue,
    ValidationResult,
    PreflightContext,
)
from topojscc.validators.config import validate_config
from topojscc.validators.dataset import validate_checkpoints, validate_dataset
from topojscc.validators.output import validate_output_dir


def run_preflight(ctx: PreflightContext) -> ValidationResult:
    """Run all pre-flight validators.

    Args:
        ctx: Context specifying what to validate

    Returns:
        ValidationResult with combined issues
    """
    issues: list[ValidationIssue] = []

    if ctx.config is not None:
        issues.extend(validate_config(ctx.config))

    if ctx.dataset_path is not None:
        issues.extend(validate_dataset(ctx.dataset_path))

    if ctx.checkpoints:
        issues.extend(validate_checkpoints(ctx.checkpoints))

    if ctx.output_dir is not None:
        issues.extend(validate_output_dir(ctx.output_dir))

    # Valid if no errors (warnings are ok)
    has_errors = any(i.level == IssueLevel.ERROR for i in issues)

    return ValidationResult(valid=not has_errors, issues=issues)


__all__ = [
    "IssueLevel",
    "ValidationIssue",
    "ValidationResult",
    "PreflightContext",
    "validate_config",
    "validate_checkpoints",
    "validate_dataset",
    "validate_output_dir",
    "run_preflight",
]
