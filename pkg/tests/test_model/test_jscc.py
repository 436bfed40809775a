"""Tests for encoder/decoder construction and evaluation."""

import logging

import numpy as np
import pytest

from topojscc.errors import DomainError, ShapeError
from topojscc.model import (
    decode,
    encode,
    init_params,
    new_model,
    plan_latent_channels,
    power_normalize,
    to_complex,
)


class TestLatentPlanning:
    @pytest.mark.parametrize("rho, channels", [(0.25, 8), (0.5, 16), (1 / 16, 2)])
    def test_exact_ratios_at_32(self, rho, channels):
        assert plan_latent_channels(rho, 32, 32) == channels

    def test_realized_rho(self):
        model = new_model(0, 0.25, (32, 32))
        assert model.spec.k == 256
        assert model.spec.realized_rho == 0.25

    def test_rounding_to_latent_grid(self):
        model = new_model(0, 0.05, (32, 32))
        assert model.spec.k == 64
        assert model.spec.realized_rho == 0.0625

    def test_realized_rho_logged_when_rounded(self, caplog):
        with caplog.at_level(logging.INFO, logger="topojscc.model.jscc"):
            new_model(0, 0.05, (32, 32))
        assert "realized as 0.0625" in caplog.text

    def test_exact_ratio_not_logged(self, caplog):
        with caplog.at_level(logging.INFO, logger="topojscc.model.jscc"):
            new_model(0, 0.25, (32, 32))
        assert "realized" not in caplog.text

    def test_latent_length_is_even(self):
        for rho in (0.05, 0.1, 0.3, 0.4, 0.7):
            model = new_model(0, rho, (12, 12))
            assert model.spec.latent_length % 2 == 0

    @pytest.mark.parametrize("rho", [0.0, 1.0, -0.1, 1.5])
    def test_rho_out_of_range(self, rho):
        with pytest.raises(DomainError, match="rho"):
            plan_latent_channels(rho, 32, 32)

    def test_sides_must_be_multiples_of_four(self):
        with pytest.raises(DomainError, match="multiples of 4"):
            new_model(0, 0.25, (30, 32))


class TestInitParams:
    def test_same_seed_same_parameters(self):
        a, b = new_model(4, 0.25, (8, 8)), new_model(4, 0.25, (8, 8))
        for name, arr in a.parameters().items():
            assert np.array_equal(arr, b.parameters()[name])

    def test_rho_changes_final_channels(self):
        enc_small, _ = init_params(0, 0.25, (16, 16))
        enc_large, _ = init_params(0, 0.5, (16, 16))
        assert enc_small.layers[-1].weight.shape[0] != enc_large.layers[-1].weight.shape[0]

    def test_layer_layout(self, tiny_model):
        enc, dec = tiny_model.encoder.layers, tiny_model.decoder.layers
        assert [layer.stride for layer in enc] == [2, 2, 1, 1, 1]
        assert [layer.stride for layer in dec] == [1, 1, 1, 2, 2]
        assert all(layer.slope[0] == 0.25 for layer in enc)
        assert dec[-1].slope is None
        assert all(not layer.bias.any() for layer in enc + dec)

    def test_parameter_names(self, tiny_model):
        names = list(tiny_model.parameters())
        assert names[:3] == ["encoder.0.weight", "encoder.0.bias", "encoder.0.slope"]
        assert "decoder.4.slope" not in names
        assert names[-1] == "decoder.4.bias"

    def test_with_parameters_copies(self, tiny_model):
        params = {k: v * 0.0 for k, v in tiny_model.parameters().items()}
        zeroed = tiny_model.with_parameters(params)
        assert not zeroed.encoder.layers[0].weight.any()
        assert tiny_model.encoder.layers[0].weight.any()


class TestEncodeDecode:
    def test_shapes(self, tiny_model, rng):
        images = rng.uniform(size=(3, 8, 8))
        s = encode(images, tiny_model)
        assert s.shape == (3, 32)
        xhat = decode(s, tiny_model)
        assert xhat.shape == (3, 1, 8, 8)

    def test_single_image_round_shapes(self, tiny_model, rng):
        s = encode(rng.uniform(size=(8, 8)), tiny_model)
        assert s.shape == (32,)
        assert decode(s, tiny_model).shape == (8, 8)

    def test_zero_weights_give_zero_latent(self, tiny_model):
        zeroed = tiny_model.with_parameters({k: np.zeros_like(v) for k, v in tiny_model.parameters().items()})
        assert not encode(np.zeros((8, 8)), zeroed).any()

    def test_deterministic(self, tiny_model, rng):
        images = rng.uniform(size=(2, 8, 8))
        assert np.array_equal(encode(images, tiny_model), encode(images, tiny_model))
        s = encode(images, tiny_model)
        assert np.array_equal(decode(s, tiny_model), decode(s, tiny_model))

    def test_decoder_output_in_unit_interval(self, tiny_model, rng):
        xhat = decode(rng.normal(size=(2, 32)) * 5, tiny_model)
        assert np.all((xhat >= 0.0) & (xhat <= 1.0))

    def test_wrong_image_size(self, tiny_model):
        with pytest.raises(ShapeError):
            encode(np.zeros((12, 12)), tiny_model)

    def test_wrong_latent_length(self, tiny_model):
        with pytest.raises(ShapeError, match="length 32"):
            decode(np.zeros(30), tiny_model)


class TestPowerNormalize:
    def test_mean_power(self, rng):
        z = to_complex(power_normalize(rng.normal(size=40), 1.0))
        assert np.mean(np.abs(z) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_encoded_batch_has_exact_power(self, rng):
        model = new_model(seed=3, rho=0.25, image_shape=(8, 8), power=2.0)
        s = encode(rng.uniform(size=(5, 8, 8)), model)
        z = to_complex(power_normalize(s, model.spec.power))
        per_sample = np.mean(np.abs(z) ** 2, axis=1)
        assert np.allclose(per_sample, 2.0, rtol=0, atol=1e-12)

    def test_already_normalized_is_unchanged(self):
        s = np.array([1.0, 1.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0])
        assert np.array_equal(power_normalize(s), s)

    def test_all_zero_rejected(self):
        with pytest.raises(DomainError):
            power_normalize(np.zeros(8))

    def test_to_complex_pairs(self):
        assert np.array_equal(to_complex(np.array([1.0, 2.0, 3.0, 4.0])), [1 + 2j, 3 + 4j])
