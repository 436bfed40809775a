"""Minimal reverse-mode automatic differentiation over float64 tensors."""

from topojscc.autodiff.tensor import Tensor, as_tensor
from topojscc.autodiff.graph import Graph, Node, forward, backward, inject_gradient
from topojscc.autodiff.ops import OP_REGISTRY, OpDef, power_normalize_array
from topojscc.autodiff.gradcheck import gradcheck, numerical_gradient, relative_error

__all__ = [
    "Tensor",
    "as_tensor",
    "Graph",
    "Node",
    "forward",
    "backward",
    "inject_gradient",
    "OP_REGISTRY",
    "OpDef",
    "power_normalize_array",
    "gradcheck",
    "numerical_gradient",
    "relative_error",
]
