"""Define-by-run computation graph with reverse-mode differentiation."""

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from topojscc.autodiff.ops import OP_REGISTRY
from topojscc.autodiff.tensor import Tensor, as_tensor
from topojscc.errors import GradientError, ShapeError

LEAF = "leaf"


@dataclass
class Node:
    """One recorded operation; inputs always refer to earlier nodes."""
    id: int
    kind: str
    inputs: tuple[int, ...]
    name: str
    attrs: dict[str, Any] = field(default_factory=dict)

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF


class Graph:
    """Ordered list of nodes; insertion order is a topological order.

    Build nodes with the op methods, evaluate with ``forward(feeds)``, optionally
    ``inject_gradient`` externally computed cotangents, then ``backward(loss)``.
    """

    def __init__(self):
        self.nodes: list[Node] = []
        self.values: dict[int, Tensor] = {}
        self._caches: dict[int, Any] = {}
        self._injected: dict[int, np.ndarray] = {}

    # construction

    def _add(self, kind: str, inputs: tuple[int, ...], name: str | None = None, **attrs) -> int:
        for i in inputs:
            if not 0 <= i < len(self.nodes):
                raise ValueError(f"input node {i} does not exist yet")
        op = OP_REGISTRY.get(kind)
        if kind != LEAF and op is None:
            raise ValueError(f"unknown op kind: {kind}")
        if op is not None and op.arity is not None and len(inputs) != op.arity:
            raise ValueError(f"{kind} takes {op.arity} inputs, got {len(inputs)}")
        node_id = len(self.nodes)
        self.nodes.append(Node(node_id, kind, tuple(inputs), name or f"{kind}_{node_id}", attrs))
        return node_id

    def leaf(self, name: str) -> int:
        return self._add(LEAF, (), name)

    def conv2d(self, x: int, w: int, b: int, stride: int = 1, padding: int | None = None,
               kernel: int = 5, name: str | None = None) -> int:
        pad = kernel // 2 if padding is None else padding
        return self._add("conv2d", (x, w, b), name, stride=stride, padding=pad)

    def conv_transpose2d(self, x: int, w: int, b: int, stride: int = 1, padding: int | None = None,
                         output_padding: int | None = None, kernel: int = 5,
                         name: str | None = None) -> int:
        pad = kernel // 2 if padding is None else padding
        extra = stride - 1 if output_padding is None else output_padding
        return self._add("conv_transpose2d", (x, w, b), name,
                         stride=stride, padding=pad, output_padding=extra)

    def prelu(self, x: int, slope: int, name: str | None = None) -> int:
        return self._add("prelu", (x, slope), name)

    def sigmoid(self, x: int, name: str | None = None) -> int:
        return self._add("sigmoid", (x,), name)

    def add(self, a: int, b: int, name: str | None = None) -> int:
        return self._add("add", (a, b), name)

    def affine(self, x: int, scale: float, shift: float, name: str | None = None) -> int:
        return self._add("affine", (x,), name, scale=float(scale), shift=float(shift))

    def reshape(self, x: int, shape: tuple[int, ...], name: str | None = None) -> int:
        return self._add("reshape", (x,), name, shape=tuple(shape))

    def mse(self, x: int, y: int, name: str | None = None) -> int:
        return self._add("mse", (x, y), name)

    def power_normalize(self, s: int, power: float = 1.0, name: str | None = None) -> int:
        return self._add("power_normalize", (s,), name, power=float(power))

    def custom(self, fn: Callable, *inputs: int, name: str | None = None) -> int:
        """Node computed by ``fn(*arrays) -> (out, vjp)``; ``vjp(g)`` returns input grads."""
        return self._add("custom", tuple(inputs), name, fn=fn)

    # evaluation

    def forward(self, feeds: Mapping[int, Tensor | np.ndarray]) -> dict[int, Tensor]:
        """Evaluate every node in insertion order."""
        self.values = {}
        self._caches = {}
        self._injected = {}
        for node in self.nodes:
            if node.is_leaf:
                if node.id not in feeds:
                    raise ValueError(f"no feed for leaf node {node.id} ('{node.name}')")
                self.values[node.id] = Tensor(np.array(as_tensor(feeds[node.id]).data))
                continue
            args = [self.values[i].data for i in node.inputs]
            try:
                out, cache = OP_REGISTRY[node.kind].forward(args, node.attrs)
            except ShapeError as e:
                raise ShapeError(
                    f"shape mismatch at node {node.id} ({node.kind} '{node.name}'): {e}"
                ) from e
            self.values[node.id] = Tensor(out)
            self._caches[node.id] = cache
        return self.values

    def value(self, node: int) -> np.ndarray:
        return self.values[node].data

    def inject_gradient(self, node: int, cotangent: np.ndarray | Tensor) -> None:
        """Treat ``node`` as an extra loss contribution with the given cotangent."""
        if node not in self.values:
            raise GradientError("inject_gradient requires forward to have run")
        cot = as_tensor(cotangent).data
        if cot.shape != self.values[node].shape:
            raise ShapeError(
                f"cotangent shape {cot.shape} does not match node {node} "
                f"('{self.nodes[node].name}') output {self.values[node].shape}"
            )
        if node in self._injected:
            self._injected[node] = self._injected[node] + cot
        else:
            self._injected[node] = np.array(cot)

    def backward(self, loss: int | None = None) -> dict[int, Tensor]:
        """Propagate cotangents to every leaf.

        Returns a map from leaf id to its gradient tensor; the gradient is also
        stored on each leaf value's ``grad`` slot.
        """
        if not self.values:
            raise GradientError("backward requires forward to have run")
        cots: dict[int, np.ndarray] = {i: np.array(g) for i, g in self._injected.items()}
        if loss is not None:
            if self.values[loss].size != 1:
                raise GradientError(
                    f"loss node {loss} ('{self.nodes[loss].name}') is not scalar: "
                    f"shape {self.values[loss].shape}"
                )
            seed = np.ones_like(self.values[loss].data)
            cots[loss] = cots[loss] + seed if loss in cots else seed

        for node in reversed(self.nodes):
            g = cots.get(node.id)
            if g is None or node.is_leaf:
                continue
            args = [self.values[i].data for i in node.inputs]
            grads = OP_REGISTRY[node.kind].backward(
                g, args, self.values[node.id].data, self._caches[node.id], node.attrs
            )
            for i, gi in zip(node.inputs, grads):
                if gi is None:
                    continue
                cots[i] = cots[i] + gi if i in cots else np.array(gi, dtype=np.float64)

        result: dict[int, Tensor] = {}
        for node in self.nodes:
            if not node.is_leaf:
                continue
            g = cots.get(node.id, np.zeros_like(self.values[node.id].data))
            self.values[node.id].grad = g
            result[node.id] = Tensor(g)
        return result


def forward(graph: Graph, feeds: Mapping[int, Tensor | np.ndarray]) -> dict[int, Tensor]:
    return graph.forward(feeds)


def backward(graph: Graph, loss: int | None) -> dict[int, Tensor]:
    return graph.backward(loss)


def inject_gradient(graph: Graph, node: int, cotangent: np.ndarray | Tensor) -> None:
    graph.inject_gradient(node, cotangent)
