"""Distances between persistence diagrams."""

from topojscc.metrics.wasserstein import (
    DIAGONAL,
    Matching,
    wasserstein,
    wasserstein_grad,
    brute_force_wasserstein,
    bottleneck,
    diagram_distances,
)

__all__ = [
    "DIAGONAL",
    "Matching",
    "wasserstein",
    "wasserstein_grad",
    "brute_force_wasserstein",
    "bottleneck",
    "diagram_distances",
]
