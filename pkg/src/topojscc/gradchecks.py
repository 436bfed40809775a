"""Finite-difference suites for every differentiable piece of the pipeline."""

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from topojscc.autodiff import Graph, gradcheck
from topojscc.channel import channel_node
from topojscc.topo import image_topo_loss, latent_topo_loss

logger = logging.getLogger(__name__)

OP_TOLERANCE = 1e-6
TOPO_TOLERANCE = 1e-3
TOPO_STEP = 1e-6


@dataclass
class GradcheckResult:
    name: str
    error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.error < self.tolerance


def _graph_check(build: Callable[[Graph, int], int], x: np.ndarray,
                 extra: dict[str, np.ndarray] | None = None) -> float:
    """Gradient of sum(weights * out) w.r.t. ``x`` against central differences."""
    extra = extra or {}
    weights_rng = np.random.default_rng(1234)

    def make():
        g = Graph()
        leaf = g.leaf("x")
        feeds = {leaf: x}
        for name, value in extra.items():
            feeds[g.leaf(name)] = value
        return g, leaf, build(g, leaf), feeds

    g, leaf, out, feeds = make()
    values = g.forward(feeds)
    w = weights_rng.standard_normal(values[out].shape)
    g.inject_gradient(out, w)
    analytic = g.backward()[leaf].data

    def f(arr: np.ndarray) -> float:
        g2, leaf2, out2, feeds2 = make()
        feeds2[leaf2] = arr
        return float(np.sum(g2.forward(feeds2)[out2].data * w))

    return gradcheck(f, x, analytic)


def _leaf_ids(g: Graph) -> dict[str, int]:
    return {n.name: n.id for n in g.nodes if n.is_leaf}


def op_cases(rng: np.random.Generator) -> dict[str, float]:
    """Relative errors for each op kind, differentiated w.r.t. its first input."""
    x = rng.standard_normal((2, 3, 8, 8))
    w = rng.standard_normal((4, 3, 5, 5)) * 0.2
    wt = rng.standard_normal((3, 4, 5, 5)) * 0.2
    b = rng.standard_normal(4)
    cases = {}
    for stride in (1, 2):
        def conv(g, leaf, stride=stride):
            ids = _leaf_ids(g)
            return g.conv2d(leaf, ids["w"], ids["b"], stride=stride)
        cases[f"conv2d/stride{stride}"] = _graph_check(conv, x, {"w": w, "b": b})

        def deconv(g, leaf, stride=stride):
            ids = _leaf_ids(g)
            return g.conv_transpose2d(leaf, ids["w"], ids["b"], stride=stride)
        cases[f"conv_transpose2d/stride{stride}"] = _graph_check(deconv, x, {"w": wt, "b": b})

    # weight gradients through the same conv
    def conv_w(g, leaf):
        ids = _leaf_ids(g)
        return g.conv2d(ids["x_in"], leaf, ids["b"], stride=2)
    cases["conv2d/weight"] = _graph_check(conv_w, w, {"x_in": x, "b": b})

    shifted = x + np.sign(x) * 0.1
    cases["prelu"] = _graph_check(lambda g, l: g.prelu(l, _leaf_ids(g)["a"]), shifted,
                                  {"a": np.full(1, 0.25)})
    cases["prelu/slope"] = _graph_check(lambda g, l: g.prelu(_leaf_ids(g)["x_in"], l),
                                        np.full(1, 0.25), {"x_in": shifted})
    cases["sigmoid"] = _graph_check(lambda g, l: g.sigmoid(l), x)
    cases["affine"] = _graph_check(lambda g, l: g.affine(l, 2.0, -1.0), x)
    cases["add"] = _graph_check(lambda g, l: g.add(l, l), x)
    cases["reshape"] = _graph_check(lambda g, l: g.reshape(l, (2, -1)), x)
    cases["mse"] = _graph_check(lambda g, l: g.mse(l, _leaf_ids(g)["y"]), x,
                                {"y": rng.standard_normal(x.shape)})
    latent = rng.standard_normal((3, 8))
    cases["power_normalize"] = _graph_check(lambda g, l: g.power_normalize(l, 1.0), latent)
    return cases


def channel_cases(rng: np.random.Generator) -> dict[str, float]:
    z = rng.standard_normal((3, 8))
    cases = {}
    for kind in ("awgn", "rayleigh"):
        for csi in (False, True):
            if kind == "awgn" and csi:
                continue
            label = f"channel/{kind}" + ("/csi" if csi else "")
            cases[label] = _graph_check(
                lambda g, l, kind=kind, csi=csi: channel_node(g, l, kind, 5.0, seed=3, csi=csi), z
            )
    return cases


def topo_cases(rng: np.random.Generator) -> dict[str, float]:
    x = rng.uniform(0.1, 0.9, (8, 8))
    xhat = np.clip(x + rng.normal(0.0, 0.02, x.shape), 0.0, 1.0)
    result = image_topo_loss(x, xhat)
    cases = {
        "topo/image": gradcheck(lambda a: image_topo_loss(x, a).value, xhat, result.grad, TOPO_STEP),
        "topo/image/reference": gradcheck(lambda a: image_topo_loss(a, xhat).value, x,
                                          result.grad_reference, TOPO_STEP),
    }
    s = rng.standard_normal((6, 4))
    s_tilde = s + rng.normal(0.0, 0.3, s.shape)
    lat = latent_topo_loss(s, s_tilde)
    cases["topo/latent"] = gradcheck(lambda a: latent_topo_loss(s, a).value, s_tilde, lat.grad, TOPO_STEP)
    cases["topo/latent/reference"] = gradcheck(lambda a: latent_topo_loss(a, s_tilde).value, s,
                                               lat.grad_reference, TOPO_STEP)
    return cases


def run_gradchecks(seed: int = 0) -> list[GradcheckResult]:
    """Every suite; ops and channel at 1e-6, topological losses at 1e-3."""
    rng = np.random.default_rng(seed)
    results = [GradcheckResult(n, e, OP_TOLERANCE) for n, e in op_cases(rng).items()]
    results += [GradcheckResult(n, e, OP_TOLERANCE) for n, e in channel_cases(rng).items()]
    results += [GradcheckResult(n, e, TOPO_TOLERANCE) for n, e in topo_cases(rng).items()]
    for r in results:
        logger.debug("%s: relative error %.3g", r.name, r.error)
    return results
