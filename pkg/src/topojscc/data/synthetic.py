"""Synthetic images with known topology.

Every generated image is checked with ``cubical_diagram``: at the generation
threshold it must show the declared Betti numbers, and exactly that many points
per dimension must have persistence above the threshold. Failing images are
redrawn from a fresh substream.
"""

import logging
from dataclasses import dataclass

import numpy as np

from topojscc.channel import substream
from topojscc.data.dataset import Dataset
from topojscc.errors import DomainError
from topojscc.ph import betti_at, cubical_diagram

logger = logging.getLogger(__name__)

KINDS = ("blobs", "rings", "grid-roads")
SYNTHETIC_PREFIX = "synthetic:"
GENERATION_THRESHOLD = 0.5
MAX_ATTEMPTS = 50
PLACEMENT_TRIES = 200


@dataclass(frozen=True)
class SyntheticSpec:
    """Generator parameters; ``shapes`` is the number of blobs or rings per image."""
    kind: str
    count: int
    height: int = 32
    width: int = 32
    seed: int = 0
    shapes: int = 2

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown synthetic kind '{self.kind}' (expected one of: {', '.join(KINDS)})")
        if self.count < 1:
            raise DomainError(f"count must be at least 1, got {self.count}")
        if self.height < 16 or self.width < 16 or self.height % 4 or self.width % 4:
            raise DomainError(
                f"synthetic images must be at least 16x16 with sides multiples of 4, "
                f"got {self.height}x{self.width}"
            )
        if self.kind != "grid-roads" and self.shapes < 1:
            raise DomainError(f"shapes must be at least 1, got {self.shapes}")

    @property
    def provenance(self) -> str:
        return (f"synthetic:{self.kind} count={self.count} size={self.height}x{self.width} "
                f"shapes={self.shapes} seed={self.seed}")


def _distance_grid(height: int, width: int, cy: float, cx: float) -> np.ndarray:
    yy, xx = np.mgrid[0:height, 0:width]
    return np.hypot(yy - cy, xx - cx)


def _place(rng: np.random.Generator, spec: SyntheticSpec, radii: list[float], extent: float,
           gap: float) -> list[tuple[float, float]] | None:
    """Random centers keeping every shape ``extent`` from the border and ``gap`` apart."""
    centers: list[tuple[float, float]] = []
    for r in radii:
        lo_y, hi_y = r + extent, spec.height - 1 - r - extent
        lo_x, hi_x = r + extent, spec.width - 1 - r - extent
        if lo_y > hi_y or lo_x > hi_x:
            return None
        for _ in range(PLACEMENT_TRIES):
            cy, cx = rng.uniform(lo_y, hi_y), rng.uniform(lo_x, hi_x)
            if all(np.hypot(cy - oy, cx - ox) >= r + orad + gap
                   for (oy, ox), orad in zip(centers, radii)):
                centers.append((cy, cx))
                break
        else:
            return None
    return centers


def _rings(rng: np.random.Generator, spec: SyntheticSpec):
    top = max(3.0, min(spec.height, spec.width) / 4 - 1)
    radii = [float(rng.uniform(3.0, top)) for _ in range(spec.shapes)]
    centers = _place(rng, spec, radii, extent=2.0, gap=5.0)
    if centers is None:
        return None
    image = np.zeros((spec.height, spec.width))
    for (cy, cx), r in zip(centers, radii):
        d = _distance_grid(spec.height, spec.width, cy, cx)
        peak = rng.uniform(0.9, 1.0)
        image = np.maximum(image, peak * np.exp(-((d - r) ** 2) / 2.0))
    return image, (spec.shapes, spec.shapes)


def _blobs(rng: np.random.Generator, spec: SyntheticSpec):
    top = max(2.0, min(spec.height, spec.width) / 8)
    radii = [float(rng.uniform(2.0, top)) for _ in range(spec.shapes)]
    centers = _place(rng, spec, radii, extent=1.0, gap=6.0)
    if centers is None:
        return None
    image = np.zeros((spec.height, spec.width))
    for (cy, cx), r in zip(centers, radii):
        d = _distance_grid(spec.height, spec.width, cy, cx)
        peak = rng.uniform(0.9, 1.0)
        image = np.maximum(image, peak * 0.5 ** ((d / r) ** 2))
    return image, (spec.shapes, 0)


def _road_positions(rng: np.random.Generator, count: int, length: int) -> list[int] | None:
    for _ in range(PLACEMENT_TRIES):
        picks = sorted(rng.choice(np.arange(2, length - 2), size=count, replace=False).tolist())
        if all(b - a >= 4 for a, b in zip(picks, picks[1:])):
            return picks
    return None


def _grid_roads(rng: np.random.Generator, spec: SyntheticSpec):
    n_rows, n_cols = int(rng.integers(2, 4)), int(rng.integers(2, 4))
    rows = _road_positions(rng, n_rows, spec.height)
    cols = _road_positions(rng, n_cols, spec.width)
    if rows is None or cols is None:
        return None
    image = np.zeros((spec.height, spec.width))
    for r in rows:
        image[r, :] = np.maximum(image[r, :], rng.uniform(0.75, 1.0))
    for c in cols:
        image[:, c] = np.maximum(image[:, c], rng.uniform(0.75, 1.0))
    return image, (1, (n_rows - 1) * (n_cols - 1))


_GENERATORS = {"blobs": _blobs, "rings": _rings, "grid-roads": _grid_roads}


def topology_matches(image: np.ndarray, betti: tuple[int, int],
                     threshold: float = GENERATION_THRESHOLD) -> bool:
    diagram = cubical_diagram(image)
    for dim, expected in enumerate(betti):
        if betti_at(diagram, threshold, dim) != expected:
            return False
        if sum(1 for p in diagram.of_dim(dim) if p.persistence > threshold) != expected:
            return False
    return True


def generate_image(spec: SyntheticSpec, index: int) -> tuple[np.ndarray, tuple[int, int]]:
    """Image ``index`` of the dataset described by ``spec`` and its (b0, b1)."""
    make = _GENERATORS[spec.kind]
    for attempt in range(MAX_ATTEMPTS):
        drawn = make(substream(spec.seed, index, attempt), spec)
        if drawn is None:
            continue
        image, betti = drawn
        image = np.clip(image, 0.0, 1.0)
        if topology_matches(image, betti):
            return image, betti
        logger.debug("image %d attempt %d missed Betti numbers %s; redrawing", index, attempt, betti)
    raise DomainError(
        f"infeasible packing: could not place {spec.shapes} {spec.kind} in "
        f"{spec.height}x{spec.width} after {MAX_ATTEMPTS} attempts"
    )


def gen_synthetic(spec: SyntheticSpec) -> Dataset:
    """Deterministic dataset for ``spec``."""
    spec.validate()
    images, betti = [], []
    for i in range(spec.count):
        image, b = generate_image(spec, i)
        images.append(image)
        betti.append(b)
    logger.info("generated %d %s images of %dx%d", spec.count, spec.kind, spec.height, spec.width)
    return Dataset(np.stack(images), spec.provenance, spec.seed, betti,
                   [f"{spec.kind}-{i:05d}.pgm" for i in range(spec.count)])
