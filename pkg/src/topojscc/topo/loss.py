"""Image-domain and latent-space topological losses with their gradients."""

import logging
from dataclasses import dataclass, field

import numpy as np

from topojscc.errors import ShapeError
from topojscc.metrics.wasserstein import wasserstein, wasserstein_grad
from topojscc.ph.cubical import cubical_diagram
from topojscc.ph.diagram import PersistenceDiagram
from topojscc.ph.rips import default_eps_max, pairwise_distances, rips_diagram, validate_cloud
from topojscc.utils.executor import run_work_items
from topojscc.validators.types import IssueLevel, ValidationIssue

logger = logging.getLogger(__name__)

HOMOLOGY_DIMS = (0, 1)


@dataclass
class TopoLossResult:
    """Loss value, its per-dimension split and cotangents.

    ``grad`` is w.r.t. the reconstruction (X-hat or S-tilde); ``grad_reference``
    is w.r.t. the reference input (X or S).
    """
    value: float
    per_dim: tuple[float, float]
    grad: np.ndarray
    grad_reference: np.ndarray
    issues: list[ValidationIssue] = field(default_factory=list)


def _matched_gradients(d_ref: PersistenceDiagram, d_rec: PersistenceDiagram, dim: int,
                       p: float):
    ref, rec = d_ref.of_dim(dim), d_rec.of_dim(dim)
    matching = wasserstein(ref, rec, p)
    g_rec = wasserstein_grad(matching, ref, rec)
    g_ref = wasserstein_grad(matching.reversed(), rec, ref)
    return matching.cost, (ref, g_ref), (rec, g_rec)


def _scatter_pixels(diagram: PersistenceDiagram, coord_grad: np.ndarray, out: np.ndarray) -> None:
    flat = out.reshape(-1)
    for point, (gb, gd) in zip(diagram, coord_grad):
        if point.birth_cell:
            flat[point.birth_cell[0]] += gb
        if point.death_cell:
            flat[point.death_cell[0]] += gd


def image_topo_loss(x, xhat, p: float = 2.0) -> TopoLossResult:
    """Sum over dims 0 and 1 of W_p between cubical diagrams of ``x`` and ``xhat``."""
    x = np.asarray(x, dtype=np.float64)
    xhat = np.asarray(xhat, dtype=np.float64)
    if x.shape != xhat.shape:
        raise ShapeError(f"image shape mismatch: {x.shape} vs {xhat.shape}")
    d_ref, d_rec = cubical_diagram(x), cubical_diagram(xhat)
    grad = np.zeros_like(xhat)
    grad_ref = np.zeros_like(x)
    per_dim = []
    for m in HOMOLOGY_DIMS:
        cost, (ref, g_ref), (rec, g_rec) = _matched_gradients(d_ref, d_rec, m, p)
        per_dim.append(cost)
        _scatter_pixels(rec, g_rec, grad)
        _scatter_pixels(ref, g_ref, grad_ref)
    return TopoLossResult(float(sum(per_dim)), (per_dim[0], per_dim[1]), grad, grad_ref)


def batch_image_topo_loss(x_batch, xhat_batch, p: float = 2.0,
                          max_workers: int | None = None) -> list[TopoLossResult]:
    """``image_topo_loss`` for every (x, xhat) pair of a batch of (H, W) images."""
    x_batch = np.asarray(x_batch, dtype=np.float64)
    xhat_batch = np.asarray(xhat_batch, dtype=np.float64)
    if x_batch.shape != xhat_batch.shape:
        raise ShapeError(f"batch shape mismatch: {x_batch.shape} vs {xhat_batch.shape}")
    return run_work_items(
        lambda i: image_topo_loss(x_batch[i], xhat_batch[i], p),
        range(len(x_batch)),
        max_workers,
    )


def _scatter_edges(cloud: np.ndarray, diagram: PersistenceDiagram, coord_grad: np.ndarray,
                   out: np.ndarray, issues: list[ValidationIssue], label: str) -> None:
    for point, (gb, gd) in zip(diagram, coord_grad):
        for cell, g in ((point.birth_cell, gb), (point.death_cell, gd)):
            if len(cell) != 2 or g == 0.0:
                continue
            i, j = cell
            diff = cloud[i] - cloud[j]
            length = float(np.linalg.norm(diff))
            if length == 0.0:
                issues.append(ValidationIssue(
                    level=IssueLevel.WARNING,
                    code="DEGENERATE_EDGE",
                    message=f"zero-length generator edge ({i}, {j}) in {label}; gradient dropped",
                    suggestion="Duplicate latent vectors in a batch carry no Rips gradient",
                ))
                continue
            unit = diff / length
            out[i] += g * unit
            out[j] -= g * unit


def latent_topo_loss(s, s_tilde, p: float = 2.0) -> TopoLossResult:
    """Sum over dims 0 and 1 of W_p between Rips diagrams of the two latent clouds.

    Both clouds share ``eps_max``: the larger of their diameters.
    """
    s = validate_cloud(s)
    s_tilde = validate_cloud(s_tilde)
    if s.shape != s_tilde.shape:
        raise ShapeError(f"latent cloud shape mismatch: {s.shape} vs {s_tilde.shape}")
    dist_ref, dist_rec = pairwise_distances(s), pairwise_distances(s_tilde)
    eps_max = max(default_eps_max(dist_ref), default_eps_max(dist_rec))
    d_ref = rips_diagram(dist_ref, 1, eps_max)
    d_rec = rips_diagram(dist_rec, 1, eps_max)

    grad = np.zeros_like(s_tilde)
    grad_ref = np.zeros_like(s)
    issues: list[ValidationIssue] = []
    per_dim = []
    for m in HOMOLOGY_DIMS:
        cost, (ref, g_ref), (rec, g_rec) = _matched_gradients(d_ref, d_rec, m, p)
        per_dim.append(cost)
        _scatter_edges(s_tilde, rec, g_rec, grad, issues, "received cloud")
        _scatter_edges(s, ref, g_ref, grad_ref, issues, "transmitted cloud")
    for issue in issues:
        logger.warning(issue.message)
    return TopoLossResult(float(sum(per_dim)), (per_dim[0], per_dim[1]), grad, grad_ref, issues)
