"""Tests for Wasserstein matching and its gradient."""

import numpy as np
import pytest

from topojscc.errors import DomainError
from topojscc.metrics import (
    DIAGONAL,
    bottleneck,
    brute_force_wasserstein,
    diagram_distances,
    wasserstein,
    wasserstein_grad,
)
from topojscc.ph import PersistenceDiagram, PersistencePoint, cubical_diagram


def diagram(*pairs, dim=0):
    return PersistenceDiagram([PersistencePoint(b, d, dim) for b, d in pairs])


def random_diagram(rng, size, dim=0):
    births = rng.uniform(0.3, 1.0, size)
    deaths = births - rng.uniform(0.0, 0.3, size)
    return diagram(*zip(births, deaths), dim=dim)


class TestWasserstein:
    def test_self_distance_is_zero(self, rng):
        d = random_diagram(rng, 5)
        matching = wasserstein(d, d)
        assert matching.cost == 0.0
        assert sorted(matching.pairs) == [(i, i) for i in range(5)]

    def test_single_point_against_empty(self):
        assert wasserstein(diagram((1.0, 0.0)), diagram()).cost == pytest.approx(0.5)

    def test_direct_match_beats_diagonal(self):
        matching = wasserstein(diagram((1.0, 0.0)), diagram((0.9, 0.0)))
        assert matching.cost == pytest.approx(0.1)
        assert matching.pairs == [(0, 0)]

    def test_both_empty(self):
        matching = wasserstein(diagram(), diagram())
        assert matching.cost == 0.0
        assert matching.pairs == []

    def test_every_point_matched_once(self, rng):
        d1, d2 = random_diagram(rng, 4), random_diagram(rng, 6)
        matching = wasserstein(d1, d2)
        left = [i for i, _ in matching.pairs if i != DIAGONAL]
        right = [j for _, j in matching.pairs if j != DIAGONAL]
        assert sorted(left) == list(range(4))
        assert sorted(right) == list(range(6))

    def test_cost_is_root_of_pair_terms(self, rng):
        matching = wasserstein(random_diagram(rng, 3), random_diagram(rng, 4), p=3.0)
        assert matching.cost == pytest.approx(sum(matching.per_pair) ** (1 / 3))

    def test_mixed_dimensions_rejected(self):
        mixed = PersistenceDiagram([PersistencePoint(1.0, 0.0, 0), PersistencePoint(1.0, 0.5, 1)])
        with pytest.raises(DomainError, match="mixed-dimension"):
            wasserstein(mixed, diagram())

    def test_order_below_one_rejected(self):
        with pytest.raises(DomainError):
            wasserstein(diagram((1.0, 0.0)), diagram(), p=0.5)

    def test_essential_points_match_like_finite_ones(self):
        a = PersistenceDiagram([PersistencePoint(1.0, 0.0, 0, essential=True)])
        b = PersistenceDiagram([PersistencePoint(0.8, 0.0, 0, essential=True)])
        assert wasserstein(a, b).cost == pytest.approx(0.2)


class TestAgainstBruteForce:
    def test_both_empty(self):
        assert brute_force_wasserstein(diagram(), diagram()) == 0.0

    def test_point_plus_near_diagonal_point(self):
        value = brute_force_wasserstein(diagram((2.0, 0.0)), diagram((2.0, 0.0), (1.0, 0.9)))
        assert value == pytest.approx(0.05)

    @pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
    def test_random_small_diagrams(self, p):
        rng = np.random.default_rng(int(p))
        for case in range(200):
            n, m = rng.integers(0, 5, size=2)
            d1, d2 = random_diagram(rng, n), random_diagram(rng, m)
            expected = brute_force_wasserstein(d1, d2, p)
            assert wasserstein(d1, d2, p).cost == pytest.approx(expected, abs=1e-12), case

    def test_size_cap(self, rng):
        with pytest.raises(DomainError, match="brute force"):
            brute_force_wasserstein(random_diagram(rng, 5), random_diagram(rng, 4))


class TestMetricAxioms:
    def test_symmetry_and_triangle_inequality(self):
        rng = np.random.default_rng(7)
        for case in range(100):
            a, b, c = (random_diagram(rng, int(rng.integers(1, 6))) for _ in range(3))
            ab, ba = wasserstein(a, b).cost, wasserstein(b, a).cost
            assert ab == pytest.approx(ba), case
            assert wasserstein(a, c).cost <= ab + wasserstein(b, c).cost + 1e-12, case

    def test_bottleneck_bounds_wasserstein_from_below(self, rng):
        a, b = random_diagram(rng, 5), random_diagram(rng, 3)
        assert bottleneck(a, b) <= wasserstein(a, b, p=2.0).cost + 1e-12

    def test_bottleneck_single_point(self):
        assert bottleneck(diagram((1.0, 0.0)), diagram()) == 0.5
        assert bottleneck(diagram(), diagram()) == 0.0


class TestWassersteinGrad:
    def test_identical_diagrams_have_zero_gradient(self, rng):
        d = random_diagram(rng, 4)
        assert not wasserstein_grad(wasserstein(d, d), d, d).any()

    def test_direct_match_gradient(self):
        d1, d2 = diagram((1.0, 0.0)), diagram((0.9, 0.0))
        grad = wasserstein_grad(wasserstein(d1, d2), d1, d2)
        assert grad[0, 0] == pytest.approx(-1.0)
        assert grad[0, 1] == 0.0

    def test_diagonal_gradient_matches_finite_differences(self):
        b = 0.8
        d1 = diagram()

        def cost(birth):
            return wasserstein(d1, diagram((birth, 0.3))).cost

        grad = wasserstein_grad(wasserstein(d1, diagram((b, 0.3))), d1, diagram((b, 0.3)))
        step = 1e-6
        assert grad[0, 0] == pytest.approx((cost(b + step) - cost(b - step)) / (2 * step), rel=1e-6)
        assert grad[0, 1] == pytest.approx(-grad[0, 0])

    def test_random_gradients_match_finite_differences(self, rng):
        d1, d2 = random_diagram(rng, 4), random_diagram(rng, 5)
        grad = wasserstein_grad(wasserstein(d1, d2), d1, d2)
        pairs = d2.pairs()
        step = 1e-7
        for i in range(len(pairs)):
            for k in range(2):
                plus, minus = pairs.copy(), pairs.copy()
                plus[i, k] += step
                minus[i, k] -= step
                numeric = (wasserstein(d1, diagram(*plus)).cost
                           - wasserstein(d1, diagram(*minus)).cost) / (2 * step)
                assert grad[i, k] == pytest.approx(numeric, abs=1e-5)

    def test_reversed_matching_gives_left_gradient(self):
        d1, d2 = diagram((1.0, 0.0)), diagram((0.9, 0.0))
        matching = wasserstein(d1, d2)
        grad = wasserstein_grad(matching.reversed(), d2, d1)
        assert grad[0, 0] == pytest.approx(1.0)

    def test_stale_matching_rejected(self):
        d1, d2 = diagram((1.0, 0.0)), diagram((0.9, 0.0))
        matching = wasserstein(d1, d2)
        with pytest.raises(DomainError, match="stale"):
            wasserstein_grad(matching, d1, diagram((0.9, 0.0), (0.5, 0.1)))


class TestDiagramDistances:
    def test_per_dimension_split(self, annulus):
        dimmed = annulus.copy()
        dimmed[0, 0] = 0.5
        distances = diagram_distances(cubical_diagram(annulus), cubical_diagram(dimmed))
        assert set(distances) == {0, 1}
        assert distances[0] == pytest.approx(0.25)
        assert distances[1] == 0.0

    def test_excluding_essential_points(self, annulus):
        d = cubical_diagram(annulus)
        distances = diagram_distances(d, diagram(dim=0), include_essential=False)
        assert distances[0] == 0.0
        assert distances[1] == pytest.approx(0.5)
