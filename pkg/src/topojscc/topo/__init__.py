"""Differentiable topological losses."""

from topojscc.topo.loss import (
    TopoLossResult,
    image_topo_loss,
    batch_image_topo_loss,
    latent_topo_loss,
)

__all__ = [
    "TopoLossResult",
    "image_topo_loss",
    "batch_image_topo_loss",
    "latent_topo_loss",
]
