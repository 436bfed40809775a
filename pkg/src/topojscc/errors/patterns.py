"""Error patterns for training, evaluation and file handling failures."""

import re
from dataclasses import dataclass


@dataclass
class ErrorPattern:
    """A recognizable error pattern with diagnosis."""
    id: str
    pattern: re.Pattern
    category: str
    message: str
    diagnosis: str
    suggestions: list[str]


ERROR_PATTERNS = [
    ErrorPattern(
        id="non_finite_gradient",
        pattern=re.compile(r"non-finite gradient|NaN gradient|gradient.*(nan|inf)", re.I),
        category="training",
        message="Training diverged",
        diagnosis="A parameter gradient became NaN or infinite during the Adam step",
        suggestions=[
            "Lower learning_rate (the default is 1e-4)",
            "Reduce lambda_img / lambda_lat or increase anneal_t",
            "Run 'topojscc calibrate' to rescale the topological weights",
        ]
    ),
    ErrorPattern(
        id="spatial_dims",
        pattern=re.compile(r"multiples? of 4", re.I),
        category="model",
        message="Unsupported image size",
        diagnosis="The encoder halves the image twice, so height and width must be multiples of 4",
        suggestions=[
            "Crop or pad the images to a multiple of 4 pixels",
            "Use 'topojscc gen' with --size set to a multiple of 4",
        ]
    ),
    ErrorPattern(
        id="shape_mismatch",
        pattern=re.compile(r"shape mismatch|shapes? (differ|disagree)", re.I),
        category="model",
        message="Tensor shapes do not line up",
        diagnosis="An operation received operands whose shapes are incompatible",
        suggestions=[
            "Check that the checkpoint was trained on images of the same size",
            "Check that rho and the image shape match the checkpoint",
        ]
    ),
    ErrorPattern(
        id="pgm_format",
        pattern=re.compile(r"PGM|P5|maxval", re.I),
        category="data",
        message="Image file could not be read",
        diagnosis="Only binary 8-bit PGM (P5) images with identical dimensions are supported",
        suggestions=[
            "Convert images with: convert input.png -depth 8 output.pgm",
            "Make sure every image in the directory has the same size",
        ]
    ),
    ErrorPattern(
        id="empty_dataset",
        pattern=re.compile(r"dataset is empty|no images found|empty directory", re.I),
        category="data",
        message="No training images",
        diagnosis="The dataset directory contained no readable images",
        suggestions=[
            "Point dataset to a directory of .pgm files",
            "Generate a synthetic dataset with 'topojscc gen --kind rings'",
        ]
    ),
    ErrorPattern(
        id="missing_checkpoint",
        pattern=re.compile(r"no checkpoint|checkpoint.*not found|missing checkpoint", re.I),
        category="evaluation",
        message="Checkpoint not found",
        diagnosis="A bandwidth sweep needs one trained checkpoint per requested rho",
        suggestions=[
            "Train one model per rho with 'topojscc train --config ...'",
            "Name checkpoints rho-<value>.ckpt inside the checkpoint directory",
        ]
    ),
    ErrorPattern(
        id="checkpoint_version",
        pattern=re.compile(r"checkpoint version|not a topojscc checkpoint", re.I),
        category="evaluation",
        message="Checkpoint format not recognized",
        diagnosis="The file is not a topojscc checkpoint or was written by an incompatible version",
        suggestions=[
            "Retrain the model with the current version",
        ]
    ),
    ErrorPattern(
        id="config_invalid",
        pattern=re.compile(r"config (line|key|value|file)|unknown key", re.I),
        category="config",
        message="Invalid configuration",
        diagnosis="A configuration file line could not be parsed or has an invalid value",
        suggestions=[
            "Use 'topojscc train --dump-config' to print a valid template",
            "Config files are flat 'key = value' lines, '#' starts a comment",
        ]
    ),
    ErrorPattern(
        id="degenerate_latent",
        pattern=re.compile(r"all-zero latent|cannot normalize|degenerate", re.I),
        category="model",
        message="Degenerate latent vector",
        diagnosis="The encoder produced an all-zero latent which cannot be power normalized",
        suggestions=[
            "Re-initialize the model with a different seed",
            "Check the input images are not all black",
        ]
    ),
    ErrorPattern(
        id="infeasible_packing",
        pattern=re.compile(r"infeasible|could not place", re.I),
        category="data",
        message="Synthetic image generation failed",
        diagnosis="The requested shapes do not fit into the image after bounded retries",
        suggestions=[
            "Increase the image size",
            "Reduce the number of rings or blobs per image",
        ]
    ),
    ErrorPattern(
        id="unknown_preset",
        pattern=re.compile(r"unknown preset|no preset named", re.I),
        category="config",
        message="Unknown preset",
        diagnosis="The requested ablation preset is not in the catalog",
        suggestions=[
            "Known presets: deepjscc, topo-img, topo-lat, topojscc",
        ]
    ),
]
