"""Tests for graph evaluation and backpropagation."""

import numpy as np
import pytest

from topojscc.autodiff import Graph, Tensor, backward, forward, inject_gradient
from topojscc.errors import GradientError, ShapeError


class TestForward:
    def test_sigmoid_at_zero(self):
        g = Graph()
        x = g.leaf("x")
        y = g.sigmoid(x)
        values = forward(g, {x: np.array([0.0])})
        assert values[y].data[0] == 0.5

    def test_prelu_negative_input(self):
        g = Graph()
        x, a = g.leaf("x"), g.leaf("a")
        y = g.prelu(x, a)
        g.forward({x: np.array([-2.0]), a: np.array([0.25])})
        assert g.value(y)[0] == -0.5

    def test_mse_of_unit_difference(self):
        g = Graph()
        x, y = g.leaf("x"), g.leaf("y")
        loss = g.mse(x, y)
        g.forward({x: np.ones(2), y: np.zeros(2)})
        assert float(g.value(loss)) == 1.0

    def test_missing_feed_names_leaf(self):
        g = Graph()
        g.leaf("weights")
        with pytest.raises(ValueError, match="weights"):
            g.forward({})

    def test_shape_error_names_node(self):
        g = Graph()
        x, y = g.leaf("x"), g.leaf("y")
        g.add(x, y, name="broken_sum")
        with pytest.raises(ShapeError, match="broken_sum"):
            g.forward({x: np.ones(3), y: np.ones(2)})

    def test_inputs_must_precede_node(self):
        g = Graph()
        with pytest.raises(ValueError):
            g.sigmoid(0)

    def test_forward_is_bitwise_reproducible(self, rng):
        g = Graph()
        x, w, b = g.leaf("x"), g.leaf("w"), g.leaf("b")
        y = g.sigmoid(g.conv2d(x, w, b, stride=2, kernel=3))
        feeds = {x: rng.normal(size=(2, 1, 6, 6)), w: rng.normal(size=(3, 1, 3, 3)), b: rng.normal(size=3)}
        first = np.array(g.forward(feeds)[y].data)
        second = np.array(g.forward(feeds)[y].data)
        assert np.array_equal(first, second)


class TestBackward:
    def test_mse_gradient(self):
        g = Graph()
        x, y = g.leaf("x"), g.leaf("y")
        loss = g.mse(x, y)
        g.forward({x: np.ones(2), y: np.zeros(2)})
        grads = backward(g, loss)
        assert np.array_equal(grads[x].data, [1.0, 1.0])
        assert np.array_equal(grads[y].data, [-1.0, -1.0])

    def test_prelu_negative_slope_gradient(self):
        g = Graph()
        x, a = g.leaf("x"), g.leaf("a")
        y = g.prelu(x, a)
        g.forward({x: np.array([-2.0]), a: np.array([0.25])})
        inject_gradient(g, y, np.array([1.0]))
        grads = g.backward()
        assert grads[x].data[0] == 0.25
        assert grads[a].data[0] == -2.0

    def test_gradient_stored_on_leaf(self):
        g = Graph()
        x, y = g.leaf("x"), g.leaf("y")
        loss = g.mse(x, y)
        g.forward({x: np.ones(2), y: np.zeros(2)})
        g.backward(loss)
        assert np.array_equal(g.values[x].grad, [1.0, 1.0])

    def test_non_scalar_loss_rejected(self):
        g = Graph()
        x = g.leaf("x")
        y = g.sigmoid(x)
        g.forward({x: np.zeros(3)})
        with pytest.raises(GradientError, match="not scalar"):
            g.backward(y)

    def test_backward_requires_forward(self):
        g = Graph()
        x = g.leaf("x")
        loss = g.mse(x, x)
        with pytest.raises(GradientError):
            g.backward(loss)

    def test_gradients_are_additive(self, rng):
        values = [rng.normal(size=5) for _ in range(3)]
        g = Graph()
        x, y, z = g.leaf("x"), g.leaf("y"), g.leaf("z")
        l1 = g.mse(g.sigmoid(x), y)
        l2 = g.mse(x, z)
        total = g.add(l1, l2)
        feeds = {x: values[0], y: values[1], z: values[2]}

        g.forward(feeds)
        combined = g.backward(total)[x].data
        separate = np.zeros(5)
        for loss in (l1, l2):
            g.forward(feeds)
            separate += g.backward(loss)[x].data
        assert np.allclose(combined, separate, rtol=0, atol=1e-14)


class TestInjectGradient:
    def test_zero_cotangent_changes_nothing(self, rng):
        g = Graph()
        x, y = g.leaf("x"), g.leaf("y")
        s = g.sigmoid(x)
        loss = g.mse(s, y)
        feeds = {x: rng.normal(size=4), y: rng.normal(size=4)}
        g.forward(feeds)
        plain = g.backward(loss)[x].data
        g.forward(feeds)
        g.inject_gradient(s, np.zeros(4))
        assert np.array_equal(g.backward(loss)[x].data, plain)

    def test_identity_chain_passes_cotangent(self):
        g = Graph()
        x = g.leaf("x")
        y = g.affine(x, 1.0, 0.0)
        g.forward({x: np.zeros(3)})
        cot = np.array([1.0, -2.0, 3.5])
        g.inject_gradient(y, cot)
        assert np.array_equal(g.backward()[x].data, cot)

    def test_repeated_injection_accumulates(self):
        g = Graph()
        x = g.leaf("x")
        y = g.affine(x, 2.0, 0.0)
        g.forward({x: np.zeros(2)})
        g.inject_gradient(y, Tensor(np.ones(2)))
        g.inject_gradient(y, np.ones(2))
        assert np.array_equal(g.backward()[x].data, [4.0, 4.0])

    def test_shape_mismatch_rejected(self):
        g = Graph()
        x = g.leaf("x")
        y = g.sigmoid(x)
        g.forward({x: np.zeros(3)})
        with pytest.raises(ShapeError):
            g.inject_gradient(y, np.zeros(2))

    def test_requires_forward(self):
        g = Graph()
        x = g.leaf("x")
        with pytest.raises(GradientError):
            g.inject_gradient(x, np.zeros(1))


class TestTensor:
    def test_grad_shape_must_match(self):
        with pytest.raises(ValueError):
            Tensor(np.zeros(3), np.zeros(2))

    def test_zero_grad(self):
        t = Tensor(np.ones((2, 2)))
        t.zero_grad()
        assert t.grad.shape == (2, 2)
        assert not t.grad.any()
