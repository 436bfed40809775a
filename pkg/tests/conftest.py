"""Shared test fixtures."""

import numpy as np
import pytest

from topojscc.model import new_model


@pytest.fixture
def rng():
    """Seeded generator; every test gets the same stream."""
    return np.random.default_rng(20240611)


@pytest.fixture
def annulus():
    """8x8 image: a ring of 1.0 pixels around a 0.0 hole on a 0.0 background."""
    image = np.zeros((8, 8))
    image[2:6, 2:6] = 1.0
    image[3:5, 3:5] = 0.0
    return image


@pytest.fixture
def distinct_image(rng):
    """8x8 image with pairwise distinct intensities in [0.05, 0.95]."""
    values = rng.permutation(64) / 63.0 * 0.9 + 0.05
    return values.reshape(8, 8)


@pytest.fixture
def tiny_model():
    """Randomly initialized model for 8x8 single-channel images."""
    return new_model(seed=3, rho=0.25, image_shape=(8, 8))


@pytest.fixture
def small_model():
    """Randomly initialized model for 16x16 images at rho = 0.25."""
    return new_model(seed=5, rho=0.25, image_shape=(16, 16))


@pytest.fixture
def pgm_dir(tmp_path):
    """Directory holding two 4x4 PGM images."""
    from topojscc.data import save_pgm

    directory = tmp_path / "images"
    directory.mkdir()
    first = np.arange(16, dtype=np.uint8).reshape(4, 4) * 16
    second = np.full((4, 4), 200, dtype=np.uint8)
    save_pgm(directory / "b.pgm", second)
    save_pgm(directory / "a.pgm", first)
    return directory
