"""Small synthetic datasets and configs shared by the training tests."""

import pytest

from topojscc.data import SyntheticSpec, gen_synthetic
from topojscc.training import TrainConfig


@pytest.fixture(scope="package")
def ring_images():
    return gen_synthetic(SyntheticSpec("rings", count=6, height=16, width=16, seed=0, shapes=1))


@pytest.fixture
def quick_config():
    return TrainConfig(
        rho=0.25,
        lambda_img=1e-2,
        lambda_lat=1e-3,
        anneal_t=1.0,
        batch_size=3,
        max_epochs=2,
        patience=5,
        dataset="synthetic:rings",
        synthetic_count=6,
        synthetic_shapes=1,
        image_size=16,
        validation_fraction=0.2,
        learning_rate=1e-3,
    )
