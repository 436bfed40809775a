"""Operation registry for the reverse-mode engine.

Each op provides a forward ``(inputs, attrs) -> (out, cache)`` and a backward
``(upstream, inputs, out, cache, attrs) -> list of input gradients``. Forward
functions raise ``ShapeError`` on malformed operands; the graph re-raises it
with the node that failed.
"""

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
from scipy.special import expit

from topojscc.errors import DomainError, ShapeError

ForwardFn = Callable[[list[np.ndarray], dict], tuple[np.ndarray, Any]]
BackwardFn = Callable[[np.ndarray, list[np.ndarray], np.ndarray, Any, dict], list[np.ndarray | None]]


@dataclass(frozen=True)
class OpDef:
    """Forward/backward pair for one op kind."""
    kind: str
    arity: int | None
    forward: ForwardFn
    backward: BackwardFn


def _expect_ndim(arr: np.ndarray, ndim: int, what: str) -> None:
    if arr.ndim != ndim:
        raise ShapeError(f"{what} must have {ndim} dims, got shape {arr.shape}")


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"operand shapes differ: {a.shape} vs {b.shape}")


def _window(offset: int, count: int, stride: int) -> slice:
    return slice(offset, offset + stride * (count - 1) + 1, stride)


# conv2d: x (N, C, H, W), w (O, C, k, k), b (O,)

def _conv2d_forward(inputs, attrs):
    x, w, b = inputs
    _expect_ndim(x, 4, "conv2d input")
    _expect_ndim(w, 4, "conv2d weight")
    if x.shape[1] != w.shape[1]:
        raise ShapeError(f"conv2d expects {w.shape[1]} input channels, got {x.shape[1]}")
    if b.shape != (w.shape[0],):
        raise ShapeError(f"conv2d bias shape {b.shape} != ({w.shape[0]},)")
    stride, pad = attrs["stride"], attrs["padding"]
    k = w.shape[2]
    n, _, h, wd = x.shape
    ho = (h + 2 * pad - k) // stride + 1
    wo = (wd + 2 * pad - k) // stride + 1
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    out = np.zeros((n, w.shape[0], ho, wo))
    for u in range(k):
        for v in range(k):
            patch = xp[:, :, _window(u, ho, stride), _window(v, wo, stride)]
            out += np.einsum("nchw,oc->nohw", patch, w[:, :, u, v])
    out += b[None, :, None, None]
    return out, xp


def _conv2d_backward(g, inputs, out, xp, attrs):
    x, w, _ = inputs
    stride, pad = attrs["stride"], attrs["padding"]
    k = w.shape[2]
    ho, wo = out.shape[2], out.shape[3]
    gxp = np.zeros_like(xp)
    gw = np.zeros_like(w)
    for u in range(k):
        for v in range(k):
            rows, cols = _window(u, ho, stride), _window(v, wo, stride)
            gw[:, :, u, v] = np.einsum("nohw,nchw->oc", g, xp[:, :, rows, cols])
            gxp[:, :, rows, cols] += np.einsum("nohw,oc->nchw", g, w[:, :, u, v])
    gx = gxp[:, :, pad:pad + x.shape[2], pad:pad + x.shape[3]]
    return [gx, gw, g.sum(axis=(0, 2, 3))]


# conv_transpose2d: x (N, C, H, W), w (C, O, k, k), b (O,); adjoint of conv2d

def _conv_transpose2d_forward(inputs, attrs):
    x, w, b = inputs
    _expect_ndim(x, 4, "conv_transpose2d input")
    _expect_ndim(w, 4, "conv_transpose2d weight")
    if x.shape[1] != w.shape[0]:
        raise ShapeError(f"conv_transpose2d expects {w.shape[0]} input channels, got {x.shape[1]}")
    if b.shape != (w.shape[1],):
        raise ShapeError(f"conv_transpose2d bias shape {b.shape} != ({w.shape[1]},)")
    stride, pad, extra = attrs["stride"], attrs["padding"], attrs["output_padding"]
    k = w.shape[2]
    n, _, h, wd = x.shape
    full = np.zeros((n, w.shape[1], (h - 1) * stride + k + extra, (wd - 1) * stride + k + extra))
    for u in range(k):
        for v in range(k):
            full[:, :, _window(u, h, stride), _window(v, wd, stride)] += np.einsum(
                "nchw,co->nohw", x, w[:, :, u, v]
            )
    ho = (h - 1) * stride - 2 * pad + k + extra
    wo = (wd - 1) * stride - 2 * pad + k + extra
    out = full[:, :, pad:pad + ho, pad:pad + wo] + b[None, :, None, None]
    return out, full.shape


def _conv_transpose2d_backward(g, inputs, out, full_shape, attrs):
    x, w, _ = inputs
    stride, pad = attrs["stride"], attrs["padding"]
    k = w.shape[2]
    h, wd = x.shape[2], x.shape[3]
    gfull = np.zeros(full_shape)
    gfull[:, :, pad:pad + out.shape[2], pad:pad + out.shape[3]] = g
    gx = np.zeros_like(x)
    gw = np.zeros_like(w)
    for u in range(k):
        for v in range(k):
            window = gfull[:, :, _window(u, h, stride), _window(v, wd, stride)]
            gx += np.einsum("nohw,co->nchw", window, w[:, :, u, v])
            gw[:, :, u, v] = np.einsum("nchw,nohw->co", x, window)
    return [gx, gw, g.sum(axis=(0, 2, 3))]


def _prelu_forward(inputs, attrs):
    x, a = inputs
    if a.size != 1:
        raise ShapeError(f"prelu slope must be a single scalar, got shape {a.shape}")
    return np.where(x > 0, x, a.reshape(()) * x), None


def _prelu_backward(g, inputs, out, cache, attrs):
    x, a = inputs
    positive = x > 0
    gx = np.where(positive, g, a.reshape(()) * g)
    ga = np.where(positive, 0.0, g * x).sum().reshape(a.shape)
    return [gx, ga]


def _sigmoid_forward(inputs, attrs):
    return expit(inputs[0]), None


def _sigmoid_backward(g, inputs, out, cache, attrs):
    return [g * out * (1.0 - out)]


def _add_forward(inputs, attrs):
    a, b = inputs
    _same_shape(a, b)
    return a + b, None


def _add_backward(g, inputs, out, cache, attrs):
    return [g, g]


def _affine_forward(inputs, attrs):
    return attrs["scale"] * inputs[0] + attrs["shift"], None


def _affine_backward(g, inputs, out, cache, attrs):
    return [attrs["scale"] * g]


def _reshape_forward(inputs, attrs):
    x = inputs[0]
    try:
        return x.reshape(attrs["shape"]), None
    except ValueError as e:
        raise ShapeError(f"cannot reshape {x.shape} to {attrs['shape']}") from e


def _reshape_backward(g, inputs, out, cache, attrs):
    return [g.reshape(inputs[0].shape)]


def _mse_forward(inputs, attrs):
    x, y = inputs
    _same_shape(x, y)
    return np.asarray(np.mean((x - y) ** 2)), None


def _mse_backward(g, inputs, out, cache, attrs):
    x, y = inputs
    diff = 2.0 * (x - y) / x.size * g
    return [diff, -diff]


def power_normalize_array(s: np.ndarray, power: float) -> tuple[np.ndarray, np.ndarray]:
    """Scale each row of ``s`` so that its k complex symbols have mean power ``power``.

    Returns the normalized rows and the per-row squared norms.
    """
    if s.ndim != 2 or s.shape[1] % 2:
        raise ShapeError(f"power_normalize expects (batch, 2k) latents, got {s.shape}")
    sq = np.sum(s * s, axis=1)
    if np.any(sq == 0.0):
        raise DomainError("all-zero latent: cannot normalize to the power constraint")
    k = s.shape[1] // 2
    return s * np.sqrt(k * power / sq)[:, None], sq


def _power_normalize_forward(inputs, attrs):
    return power_normalize_array(inputs[0], attrs["power"])


def _power_normalize_backward(g, inputs, out, sq, attrs):
    s = inputs[0]
    k = s.shape[1] // 2
    norm = np.sqrt(sq)[:, None]
    dots = np.sum(s * g, axis=1, keepdims=True)
    return [np.sqrt(k * attrs["power"]) * (g / norm - s * dots / norm ** 3)]


def _custom_forward(inputs, attrs):
    out, vjp = attrs["fn"](*inputs)
    return np.asarray(out, dtype=np.float64), vjp


def _custom_backward(g, inputs, out, vjp, attrs):
    return list(vjp(g))


OP_REGISTRY: dict[str, OpDef] = {
    op.kind: op for op in [
        OpDef("conv2d", 3, _conv2d_forward, _conv2d_backward),
        OpDef("conv_transpose2d", 3, _conv_transpose2d_forward, _conv_transpose2d_backward),
        OpDef("prelu", 2, _prelu_forward, _prelu_backward),
        OpDef("sigmoid", 1, _sigmoid_forward, _sigmoid_backward),
        OpDef("add", 2, _add_forward, _add_backward),
        OpDef("affine", 1, _affine_forward, _affine_backward),
        OpDef("reshape", 1, _reshape_forward, _reshape_backward),
        OpDef("mse", 2, _mse_forward, _mse_backward),
        OpDef("power_normalize", 1, _power_normalize_forward, _power_normalize_backward),
        OpDef("custom", None, _custom_forward, _custom_backward),
    ]
}
