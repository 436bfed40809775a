"""Tests for configuration range checks."""

import pytest

from topojscc.data import KINDS, SYNTHETIC_PREFIX
from topojscc.training import TrainConfig
from topojscc.validators import IssueLevel, validate_config


def codes(config):
    return [i.code for i in validate_config(config)]


class TestValidateConfig:
    def test_defaults_are_clean(self):
        assert validate_config(TrainConfig()) == []

    @pytest.mark.parametrize("overrides,code", [
        ({"rho": 0.0}, "BAD_RHO"),
        ({"rho": 1.0}, "BAD_RHO"),
        ({"lambda_img": -1.0}, "NEGATIVE_WEIGHT"),
        ({"batch_size": 1}, "SMALL_BATCH"),
        ({"anneal_t": 0.0}, "BAD_ANNEAL"),
        ({"learning_rate": 0.0}, "BAD_LR"),
        ({"max_epochs": 0}, "BAD_EPOCHS"),
        ({"patience": 0}, "BAD_PATIENCE"),
        ({"validation_fraction": 0.0}, "BAD_SPLIT"),
        ({"channel": "rician"}, "BAD_CHANNEL"),
        ({"power": 0.0}, "BAD_POWER"),
        ({"topo_p": 0.5}, "BAD_ORDER"),
        ({"training_snrs": ()}, "NO_SNRS"),
        ({"dataset": "synthetic:spirals"}, "BAD_SYNTHETIC"),
        ({"image_size": 30}, "BAD_SIZE"),
        ({"synthetic_count": 2}, "SMALL_DATASET"),
    ])
    def test_single_error(self, overrides, code):
        issues = validate_config(TrainConfig(**overrides))
        assert [i.code for i in issues] == [code]
        assert issues[0].level == IssueLevel.ERROR

    def test_channel_name_case_insensitive(self):
        assert codes(TrainConfig(channel="Rayleigh")) == []

    @pytest.mark.parametrize("kind", KINDS)
    def test_every_generator_kind_accepted(self, kind):
        config = TrainConfig(dataset=f"{SYNTHETIC_PREFIX}{kind}")
        assert config.is_synthetic
        assert config.synthetic_kind == kind
        assert codes(config) == []

    def test_synthetic_fields_ignored_for_directories(self):
        assert codes(TrainConfig(dataset="/data/images", image_size=30, synthetic_count=0)) == []

    def test_csi_warning_on_awgn(self):
        issues = validate_config(TrainConfig(csi=True))
        assert issues[0].level == IssueLevel.WARNING
        assert codes(TrainConfig(csi=True, channel="rayleigh")) == []

    def test_large_batch_warning(self):
        assert codes(TrainConfig(batch_size=256)) == ["LARGE_BATCH"]
