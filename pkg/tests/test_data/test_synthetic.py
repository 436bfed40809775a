"""Tests for the topology-verified synthetic generator."""

import numpy as np
import pytest

from topojscc.data import GENERATION_THRESHOLD, SyntheticSpec, gen_synthetic, topology_matches
from topojscc.errors import DomainError
from topojscc.ph import betti_at, cubical_diagram


def high_persistence(image, dim):
    return sum(1 for p in cubical_diagram(image).of_dim(dim) if p.persistence > 0.5)


class TestRings:
    def test_single_ring_has_one_hole(self):
        dataset = gen_synthetic(SyntheticSpec("rings", count=3, shapes=1))
        for image in dataset.images:
            assert high_persistence(image, 1) == 1
        assert dataset.betti == [(1, 1)] * 3

    def test_two_rings(self):
        image = gen_synthetic(SyntheticSpec("rings", count=1, shapes=2)).images[0]
        diagram = cubical_diagram(image)
        assert betti_at(diagram, GENERATION_THRESHOLD, 0) == 2
        assert betti_at(diagram, GENERATION_THRESHOLD, 1) == 2


class TestBlobs:
    def test_three_blobs(self):
        dataset = gen_synthetic(SyntheticSpec("blobs", count=2, shapes=3, seed=4))
        for image in dataset.images:
            assert high_persistence(image, 0) == 3
            assert high_persistence(image, 1) == 0


class TestGridRoads:
    def test_declared_betti_numbers(self):
        dataset = gen_synthetic(SyntheticSpec("grid-roads", count=4, seed=2))
        for image, betti in zip(dataset.images, dataset.betti):
            assert betti[0] == 1
            assert betti[1] in (1, 2, 4)
            assert topology_matches(image, betti)


class TestGeneration:
    def test_same_spec_same_dataset(self):
        spec = SyntheticSpec("rings", count=2, seed=9)
        assert np.array_equal(gen_synthetic(spec).images, gen_synthetic(spec).images)

    def test_seed_changes_images(self):
        a = gen_synthetic(SyntheticSpec("blobs", count=1, seed=1)).images
        b = gen_synthetic(SyntheticSpec("blobs", count=1, seed=2)).images
        assert not np.array_equal(a, b)

    def test_names_and_provenance(self):
        dataset = gen_synthetic(SyntheticSpec("blobs", count=2, height=16, width=16, shapes=1))
        assert dataset.names == ["blobs-00000.pgm", "blobs-00001.pgm"]
        assert dataset.provenance.startswith("synthetic:blobs")
        assert dataset.images.shape == (2, 16, 16)

    def test_infeasible_packing(self):
        with pytest.raises(DomainError, match="infeasible packing"):
            gen_synthetic(SyntheticSpec("rings", count=1, height=16, width=16, shapes=6))

    @pytest.mark.parametrize("spec", [
        SyntheticSpec("spirals", count=1),
        SyntheticSpec("rings", count=0),
        SyntheticSpec("rings", count=1, height=18, width=32),
        SyntheticSpec("blobs", count=1, shapes=0),
    ])
    def test_invalid_specs(self, spec):
        with pytest.raises(DomainError):
            gen_synthetic(spec)
