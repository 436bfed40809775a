"""Image loading, saving and synthetic generation."""

from topojscc.data.pgm import read_pgm, save_pgm, to_uint8
from topojscc.data.dataset import Dataset, list_pgm_files, load_images
from topojscc.data.synthetic import (
    GENERATION_THRESHOLD,
    KINDS,
    SYNTHETIC_PREFIX,
    SyntheticSpec,
    gen_synthetic,
    generate_image,
    topology_matches,
)

__all__ = [
    "read_pgm",
    "save_pgm",
    "to_uint8",
    "Dataset",
    "list_pgm_files",
    "load_images",
    "GENERATION_THRESHOLD",
    "KINDS",
    "SYNTHETIC_PREFIX",
    "SyntheticSpec",
    "gen_synthetic",
    "generate_image",
    "topology_matches",
]
