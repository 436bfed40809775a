"""In-memory image datasets."""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from topojscc.channel import substream
from topojscc.data.pgm import MAXVAL, read_pgm
from topojscc.errors import DomainError, FormatError

SPLIT_STREAM = 7


@dataclass
class Dataset:
    """Single-channel images in [0, 1] sharing one (H, W) shape."""
    images: np.ndarray
    provenance: str = ""
    split_seed: int = 0
    betti: list[tuple[int, int]] | None = None
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.images = np.asarray(self.images, dtype=np.float64)
        if self.images.ndim != 3:
            raise FormatError(f"dataset images must be stacked as (N, H, W), got {self.images.shape}")
        if self.images.size and (self.images.min() < 0.0 or self.images.max() > 1.0):
            raise DomainError("dataset values must lie in [0, 1]")

    def __len__(self) -> int:
        return len(self.images)

    @property
    def shape(self) -> tuple[int, int]:
        return self.images.shape[1], self.images.shape[2]

    def subset(self, indices) -> "Dataset":
        indices = list(indices)
        return Dataset(
            self.images[indices],
            self.provenance,
            self.split_seed,
            None if self.betti is None else [self.betti[i] for i in indices],
            [self.names[i] for i in indices] if self.names else [],
        )

    def split(self, fraction: float, seed: int | None = None) -> tuple["Dataset", "Dataset"]:
        """Seeded shuffle into (train, validation); validation gets ``fraction`` of the images.

        A single image is used for both parts.
        """
        if not 0.0 < fraction < 1.0:
            raise DomainError(f"validation fraction must lie in (0, 1), got {fraction}")
        n = len(self)
        if n == 0:
            raise DomainError("dataset is empty")
        if n == 1:
            return self, self
        seed = self.split_seed if seed is None else seed
        order = substream(seed, SPLIT_STREAM).permutation(n)
        n_val = min(n - 1, max(1, round(fraction * n)))
        return self.subset(sorted(order[n_val:])), self.subset(sorted(order[:n_val]))


def list_pgm_files(path: str | Path) -> list[Path]:
    """PGM files of a directory in lexicographic order, or the file itself."""
    path = Path(path)
    if path.is_file():
        return [path]
    if not path.is_dir():
        raise FormatError(f"no such dataset file or directory: {path}")
    return sorted((p for p in path.iterdir() if p.suffix.lower() == ".pgm" and p.is_file()),
                  key=lambda p: p.name)


def load_images(path: str | Path, split_seed: int = 0) -> Dataset:
    """Load every P5 image under ``path``, scaled by 1/255.

    Raises:
        FormatError: empty directory, malformed file, unsupported depth or mixed sizes.
    """
    files = list_pgm_files(path)
    if not files:
        raise FormatError(f"empty directory: no images found in {path}")
    rasters = []
    for f in files:
        raster = read_pgm(f)
        if rasters and raster.shape != rasters[0].shape:
            raise FormatError(
                f"mixed image sizes: {f.name} is {raster.shape}, {files[0].name} is {rasters[0].shape}"
            )
        rasters.append(raster)
    images = np.stack(rasters).astype(np.float64) / MAXVAL
    return Dataset(images, str(path), split_seed, names=[f.name for f in files])
