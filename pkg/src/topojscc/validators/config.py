"""Training configuration checks."""

from typing import TYPE_CHECKING

from topojscc.channel import ChannelKind
from topojscc.data.synthetic import KINDS as SYNTHETIC_KINDS
from topojscc.validators.types import IssueLevel, ValidationIssue

if TYPE_CHECKING:
    from topojscc.training.config import TrainConfig

CHANNEL_KINDS = tuple(kind.value for kind in ChannelKind)
LARGE_BATCH = 128


def _error(code: str, message: str, suggestion: str | None = None) -> ValidationIssue:
    return ValidationIssue(level=IssueLevel.ERROR, code=code, message=message, suggestion=suggestion)


def validate_config(config: "TrainConfig") -> list[ValidationIssue]:
    """Range checks on every field a training run relies on.

    Args:
        config: Parsed configuration

    Returns:
        List of validation issues found
    """
    issues: list[ValidationIssue] = []

    if not 0.0 < config.rho < 1.0:
        issues.append(_error("BAD_RHO", f"rho must lie in (0, 1), got {config.rho}",
                             "Typical values are 0.05 to 0.5"))
    if config.lambda_img < 0 or config.lambda_lat < 0:
        issues.append(_error("NEGATIVE_WEIGHT",
                             f"loss weights must be non-negative (lambda_img={config.lambda_img}, "
                             f"lambda_lat={config.lambda_lat})"))
    if config.batch_size < 2:
        issues.append(_error("SMALL_BATCH", f"batch_size must be at least 2, got {config.batch_size}",
                             "The latent Rips loss needs two or more latents per batch"))
    if config.anneal_t <= 0:
        issues.append(_error("BAD_ANNEAL", f"anneal_t must be positive, got {config.anneal_t}"))
    if config.learning_rate <= 0:
        issues.append(_error("BAD_LR", f"learning_rate must be positive, got {config.learning_rate}"))
    if config.max_epochs < 1:
        issues.append(_error("BAD_EPOCHS", f"max_epochs must be at least 1, got {config.max_epochs}"))
    if config.patience < 1:
        issues.append(_error("BAD_PATIENCE", f"patience must be at least 1, got {config.patience}"))
    if not 0.0 < config.validation_fraction < 1.0:
        issues.append(_error("BAD_SPLIT",
                             f"validation_fraction must lie in (0, 1), got {config.validation_fraction}"))
    if config.channel.lower() not in CHANNEL_KINDS:
        issues.append(_error("BAD_CHANNEL", f"unknown channel kind '{config.channel}'",
                             f"Use one of: {', '.join(CHANNEL_KINDS)}"))
    if config.power <= 0:
        issues.append(_error("BAD_POWER", f"power must be positive, got {config.power}"))
    if config.topo_p < 1:
        issues.append(_error("BAD_ORDER", f"topo_p must be at least 1, got {config.topo_p}"))
    if not config.training_snrs:
        issues.append(_error("NO_SNRS", "training_snrs must list at least one SNR"))

    if config.is_synthetic:
        if config.synthetic_kind not in SYNTHETIC_KINDS:
            issues.append(_error("BAD_SYNTHETIC", f"unknown synthetic kind '{config.synthetic_kind}'",
                                 f"Use synthetic:{' | synthetic:'.join(SYNTHETIC_KINDS)}"))
        if config.image_size < 16 or config.image_size % 4:
            issues.append(_error("BAD_SIZE",
                                 f"image_size must be at least 16 and a multiple of 4, got {config.image_size}"))
        if config.synthetic_count < 3:
            issues.append(_error("SMALL_DATASET",
                                 f"synthetic_count must be at least 3, got {config.synthetic_count}"))

    if config.csi and config.channel.lower() == "awgn":
        issues.append(ValidationIssue(
            level=IssueLevel.WARNING,
            code="CSI_UNUSED",
            message="csi has no effect on the AWGN channel",
        ))
    if config.batch_size > LARGE_BATCH:
        issues.append(ValidationIssue(
            level=IssueLevel.WARNING,
            code="LARGE_BATCH",
            message=f"batch_size {config.batch_size} makes the latent Rips loss slow",
            suggestion=f"Batches up to {LARGE_BATCH} keep persistent homology cheap",
        ))

    return issues
