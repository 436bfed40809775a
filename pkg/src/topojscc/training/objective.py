"""The batch objective: reconstruction MSE plus weighted topological terms.

    L = mean_b MSE(x_b, xhat_b) + lam_img * mean_b L_img(x_b, xhat_b) + lam_lat * L_lat(S, S~)

S holds the power-normalized latents entering the channel and S~ the received
vectors. Topological cotangents are injected into the graph before backward.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from topojscc.autodiff import Graph
from topojscc.channel import ChannelKind, ChannelRealization, channel_node
from topojscc.errors import DomainError, ShapeError
from topojscc.model import GraphParams, JSCCModel, add_decoder, add_encoder
from topojscc.topo import batch_image_topo_loss, latent_topo_loss
from topojscc.validators.types import ValidationIssue

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LossWeights:
    lambda_img: float = 0.0
    lambda_lat: float = 0.0

    def __post_init__(self):
        if self.lambda_img < 0 or self.lambda_lat < 0:
            raise DomainError(f"loss weights must be non-negative, got {self}")


@dataclass(frozen=True)
class ChannelSetting:
    """Channel used for one batch and the substream address of its draws."""
    kind: ChannelKind | str
    snr_db: float
    seed: int = 0
    path: tuple[int, ...] = ()
    csi: bool = False


@dataclass
class Pipeline:
    """Encoder -> power normalization -> channel -> decoder graph for one batch."""
    graph: Graph
    x: int
    latent: int
    z: int
    y: int
    xhat: int
    loss: int
    params: GraphParams
    realizations: list[ChannelRealization] = field(default_factory=list)

    def run(self, images: np.ndarray) -> dict:
        return self.graph.forward({self.x: images, **self.params.feeds})


def build_pipeline(model: JSCCModel, batch: int, channel: ChannelSetting) -> Pipeline:
    graph = Graph()
    bound = GraphParams()
    x = graph.leaf("x")
    latent = add_encoder(graph, x, model.encoder, batch, bound)
    z = graph.power_normalize(latent, model.spec.power, name="z")
    realizations: list[ChannelRealization] = []
    y = channel_node(graph, z, channel.kind, channel.snr_db, channel.seed, channel.path,
                     model.spec.power, channel.csi, realizations)
    xhat = add_decoder(graph, y, model.decoder, model.spec, batch, bound)
    loss = graph.mse(xhat, x, name="mse")
    return Pipeline(graph, x, latent, z, y, xhat, loss, bound, realizations)


def as_image_batch(images, model: JSCCModel) -> np.ndarray:
    arr = np.asarray(images, dtype=np.float64)
    if arr.ndim == 3:
        arr = arr[:, None]
    expected = (model.spec.channels, model.spec.height, model.spec.width)
    if arr.ndim != 4 or arr.shape[1:] != expected:
        raise ShapeError(f"image batch of shape {np.shape(images)} does not match model input {expected}")
    return arr


def reconstruct(model: JSCCModel, images, channel: ChannelSetting) -> np.ndarray:
    """Forward pass only; returns reconstructions shaped like the input batch."""
    batch = as_image_batch(images, model)
    pipe = build_pipeline(model, len(batch), channel)
    values = pipe.run(batch)
    return values[pipe.xhat].data.reshape(np.shape(images))


@dataclass
class BatchLoss:
    """Loss components of one batch and, when requested, parameter gradients."""
    total: float
    mse: float
    topo_img: float
    topo_lat: float
    weights: LossWeights
    grads: dict[str, np.ndarray] = field(default_factory=dict)
    issues: list[ValidationIssue] = field(default_factory=list)


def batch_loss(model: JSCCModel, images, channel: ChannelSetting, weights: LossWeights,
               p: float = 2.0, track_topology: bool = True, compute_grads: bool = True,
               max_workers: int | None = 1) -> BatchLoss:
    """Evaluate the batch objective and its gradient w.r.t. every model parameter.

    Args:
        model: Encoder/decoder parameters.
        images: (B, H, W) or (B, C, H, W) batch in [0, 1].
        channel: Channel and its noise substream address.
        weights: Annealed (lambda_img, lambda_lat) for this epoch.
        p: Wasserstein order of both topological terms.
        track_topology: Compute topological terms even when their weight is zero.
        compute_grads: Run the backward pass.
        max_workers: Worker threads for per-image persistent homology.

    Raises:
        DomainError: B < 2 while the latent term is active.
    """
    batch = as_image_batch(images, model)
    size = len(batch)
    if size < 2 and weights.lambda_lat > 0:
        raise DomainError(f"latent topological loss needs a batch of at least 2 images, got {size}")

    pipe = build_pipeline(model, size, channel)
    values = pipe.run(batch)
    mse = float(values[pipe.loss].data)
    topo_img = topo_lat = 0.0
    issues: list[ValidationIssue] = []

    if weights.lambda_img > 0 or track_topology:
        x_img = batch[:, 0]
        xhat_img = values[pipe.xhat].data[:, 0]
        results = batch_image_topo_loss(x_img, xhat_img, p, max_workers)
        topo_img = float(np.mean([r.value for r in results]))
        if weights.lambda_img > 0 and compute_grads:
            cot = np.zeros_like(values[pipe.xhat].data)
            cot[:, 0] = np.stack([r.grad for r in results])
            pipe.graph.inject_gradient(pipe.xhat, weights.lambda_img / size * cot)

    if size >= 2 and (weights.lambda_lat > 0 or track_topology):
        lat = latent_topo_loss(values[pipe.z].data, values[pipe.y].data, p)
        topo_lat = lat.value
        issues.extend(lat.issues)
        if weights.lambda_lat > 0 and compute_grads:
            pipe.graph.inject_gradient(pipe.z, weights.lambda_lat * lat.grad_reference)
            pipe.graph.inject_gradient(pipe.y, weights.lambda_lat * lat.grad)

    total = mse + weights.lambda_img * topo_img + weights.lambda_lat * topo_lat
    grads: dict[str, np.ndarray] = {}
    if compute_grads:
        leaf_grads = pipe.graph.backward(pipe.loss)
        grads = {name: leaf_grads[leaf].data for name, leaf in pipe.params.leaves.items()}
    logger.debug("batch of %d: mse=%.6g topo_img=%.6g topo_lat=%.6g", size, mse, topo_img, topo_lat)
    return BatchLoss(total, mse, topo_img, topo_lat, weights, grads, issues)


def mean_loss(losses: Sequence[BatchLoss], weights: LossWeights | None = None) -> BatchLoss:
    """Batch-averaged components; the total is recomputed from the averages."""
    if not losses:
        raise DomainError("no batches to average")
    weights = weights or losses[0].weights
    mse = float(np.mean([l.mse for l in losses]))
    topo_img = float(np.mean([l.topo_img for l in losses]))
    topo_lat = float(np.mean([l.topo_lat for l in losses]))
    total = mse + weights.lambda_img * topo_img + weights.lambda_lat * topo_lat
    return BatchLoss(total, mse, topo_img, topo_lat, weights)
