"""Convolutional JSCC encoder/decoder built on the autodiff graph.

Encoder: input normalization, five 5x5 conv + PReLU layers with strides
(2, 2, 1, 1, 1), flattened to a length-2k latent. Decoder: the mirror image
with transpose convolutions, PReLU after every layer except the last, and a
final sigmoid.
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from topojscc.autodiff import Graph, power_normalize_array
from topojscc.errors import DomainError, ShapeError

KERNEL = 5
HIDDEN_CHANNELS = (16, 32, 32, 32)
ENCODER_STRIDES = (2, 2, 1, 1, 1)
DECODER_STRIDES = (1, 1, 1, 2, 2)
PRELU_INIT = 0.25
DEFAULT_POWER = 1.0

logger = logging.getLogger(__name__)


@dataclass
class ConvLayer:
    """One (transpose-)convolution with optional PReLU slope."""
    weight: np.ndarray
    bias: np.ndarray
    stride: int
    slope: np.ndarray | None = None


@dataclass
class EncoderParams:
    layers: list[ConvLayer]


@dataclass
class DecoderParams:
    layers: list[ConvLayer]


@dataclass(frozen=True)
class ModelSpec:
    """Shapes and channel settings a set of parameters was built for."""
    height: int
    width: int
    channels: int
    rho: float
    latent_channels: int
    power: float = DEFAULT_POWER
    seed: int = 0

    @property
    def n(self) -> int:
        return self.height * self.width * self.channels

    @property
    def latent_shape(self) -> tuple[int, int, int]:
        return (self.latent_channels, self.height // 4, self.width // 4)

    @property
    def latent_length(self) -> int:
        c, h, w = self.latent_shape
        return c * h * w

    @property
    def k(self) -> int:
        return self.latent_length // 2

    @property
    def realized_rho(self) -> float:
        return self.k / self.n


@dataclass
class JSCCModel:
    """Model spec with encoder and decoder parameters."""
    spec: ModelSpec
    encoder: EncoderParams
    decoder: DecoderParams

    def parameters(self) -> dict[str, np.ndarray]:
        """Ordered name -> array view of every trainable array."""
        params: dict[str, np.ndarray] = {}
        for prefix, net in (("encoder", self.encoder), ("decoder", self.decoder)):
            for i, layer in enumerate(net.layers):
                params[f"{prefix}.{i}.weight"] = layer.weight
                params[f"{prefix}.{i}.bias"] = layer.bias
                if layer.slope is not None:
                    params[f"{prefix}.{i}.slope"] = layer.slope
        return params

    def with_parameters(self, params: dict[str, np.ndarray]) -> "JSCCModel":
        """A copy of the model with arrays replaced by name."""
        def rebuild(prefix: str, net):
            layers = []
            for i, layer in enumerate(net.layers):
                layers.append(replace(
                    layer,
                    weight=np.array(params[f"{prefix}.{i}.weight"]),
                    bias=np.array(params[f"{prefix}.{i}.bias"]),
                    slope=None if layer.slope is None else np.array(params[f"{prefix}.{i}.slope"]),
                ))
            return type(net)(layers)

        return JSCCModel(self.spec, rebuild("encoder", self.encoder), rebuild("decoder", self.decoder))


def check_image_shape(height: int, width: int) -> None:
    if height <= 0 or width <= 0 or height % 4 or width % 4:
        raise DomainError(f"image height and width must be multiples of 4, got {height}x{width}")


def plan_latent_channels(rho: float, height: int, width: int, channels: int = 1) -> int:
    """Final encoder channel count whose output length is closest to 2 * round(rho * n).

    The output length is a multiple of the (H/4) * (W/4) latent grid and must be
    even, so the realized ratio k / n can differ from rho (0.0625 for rho = 0.05
    at 32x32). `ModelSpec.realized_rho` reports the ratio actually used.
    """
    if not 0.0 < rho < 1.0:
        raise DomainError(f"bandwidth ratio rho must lie in (0, 1), got {rho}")
    check_image_shape(height, width)
    spatial = (height // 4) * (width // 4)
    target = 2 * round(rho * height * width * channels)
    best = None
    for c in range(1, max(2, 2 * target // spatial + 3)):
        if (c * spatial) % 2:
            continue
        gap = abs(c * spatial - target)
        if best is None or gap < best[0]:
            best = (gap, c)
    return best[1]


def _kaiming_uniform(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int) -> np.ndarray:
    bound = np.sqrt(6.0 / fan_in)
    return rng.uniform(-bound, bound, size=shape)


def init_params(seed: int, rho: float, image_shape: tuple[int, ...],
                power: float = DEFAULT_POWER) -> tuple[EncoderParams, DecoderParams]:
    """Kaiming-uniform (fan-in) weights, zero biases, PReLU slopes 0.25."""
    return build_model(seed, rho, image_shape, power)[1:]


def build_model(seed: int, rho: float, image_shape: tuple[int, ...],
                power: float = DEFAULT_POWER) -> tuple[ModelSpec, EncoderParams, DecoderParams]:
    if len(image_shape) == 2:
        height, width, channels = image_shape[0], image_shape[1], 1
    elif len(image_shape) == 3:
        channels, height, width = image_shape
    else:
        raise ShapeError(f"image shape must be (H, W) or (C, H, W), got {image_shape}")
    latent = plan_latent_channels(rho, height, width, channels)
    spec = ModelSpec(height, width, channels, float(rho), latent, float(power), int(seed))
    if spec.realized_rho != spec.rho:
        logger.info("rho=%.4f realized as %.4f (k=%d, %d latent channels)",
                    spec.rho, spec.realized_rho, spec.k, latent)
    rng = np.random.default_rng(seed)

    widths = (channels, *HIDDEN_CHANNELS, latent)
    enc = []
    for i, stride in enumerate(ENCODER_STRIDES):
        c_in, c_out = widths[i], widths[i + 1]
        enc.append(ConvLayer(
            _kaiming_uniform(rng, (c_out, c_in, KERNEL, KERNEL), c_in * KERNEL * KERNEL),
            np.zeros(c_out), stride, np.full(1, PRELU_INIT),
        ))

    back = widths[::-1]
    dec = []
    for i, stride in enumerate(DECODER_STRIDES):
        c_in, c_out = back[i], back[i + 1]
        last = i == len(DECODER_STRIDES) - 1
        dec.append(ConvLayer(
            _kaiming_uniform(rng, (c_in, c_out, KERNEL, KERNEL), c_in * KERNEL * KERNEL),
            np.zeros(c_out), stride, None if last else np.full(1, PRELU_INIT),
        ))
    return spec, EncoderParams(enc), DecoderParams(dec)


def new_model(seed: int, rho: float, image_shape: tuple[int, ...],
              power: float = DEFAULT_POWER) -> JSCCModel:
    return JSCCModel(*build_model(seed, rho, image_shape, power))


# graph construction

@dataclass
class GraphParams:
    """Leaf ids of the parameters added to a graph and the arrays to feed them."""
    leaves: dict[str, int] = field(default_factory=dict)
    feeds: dict[int, np.ndarray] = field(default_factory=dict)

    def bind(self, graph: Graph, name: str, value: np.ndarray) -> int:
        leaf = graph.leaf(name)
        self.leaves[name] = leaf
        self.feeds[leaf] = value
        return leaf


def add_encoder(graph: Graph, x: int, encoder: EncoderParams, batch: int,
                bound: GraphParams) -> int:
    """Append the encoder to ``graph``; returns the (batch, 2k) latent node."""
    h = graph.affine(x, 2.0, -1.0, name="input_norm")
    for i, layer in enumerate(encoder.layers):
        w = bound.bind(graph, f"encoder.{i}.weight", layer.weight)
        b = bound.bind(graph, f"encoder.{i}.bias", layer.bias)
        h = graph.conv2d(h, w, b, stride=layer.stride, kernel=layer.weight.shape[2],
                         name=f"encoder.{i}.conv")
        a = bound.bind(graph, f"encoder.{i}.slope", layer.slope)
        h = graph.prelu(h, a, name=f"encoder.{i}.prelu")
    return graph.reshape(h, (batch, -1), name="latent")


def add_decoder(graph: Graph, y: int, decoder: DecoderParams, spec: ModelSpec, batch: int,
                bound: GraphParams) -> int:
    """Append the decoder to ``graph``; returns the (batch, C, H, W) reconstruction node."""
    h = graph.reshape(y, (batch, *spec.latent_shape), name="decoder_input")
    for i, layer in enumerate(decoder.layers):
        w = bound.bind(graph, f"decoder.{i}.weight", layer.weight)
        b = bound.bind(graph, f"decoder.{i}.bias", layer.bias)
        h = graph.conv_transpose2d(h, w, b, stride=layer.stride, kernel=layer.weight.shape[2],
                                   name=f"decoder.{i}.deconv")
        if layer.slope is not None:
            a = bound.bind(graph, f"decoder.{i}.slope", layer.slope)
            h = graph.prelu(h, a, name=f"decoder.{i}.prelu")
    return graph.sigmoid(h, name="reconstruction")


def _as_batch(x, spec: ModelSpec) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 2:
        arr = arr[None, None]
    elif arr.ndim == 3:
        arr = arr[:, None]
    if arr.ndim != 4:
        raise ShapeError(f"expected images (N, C, H, W), got shape {np.shape(x)}")
    check_image_shape(arr.shape[2], arr.shape[3])
    if arr.shape[1:] != (spec.channels, spec.height, spec.width):
        raise ShapeError(
            f"images of shape {arr.shape[1:]} do not match model input "
            f"{(spec.channels, spec.height, spec.width)}"
        )
    return arr


def encode(x, model: JSCCModel) -> np.ndarray:
    """Latent s = f(x) for a batch (N, C, H, W), a stack (N, H, W) or one (H, W) image."""
    batch = _as_batch(x, model.spec)
    graph = Graph()
    bound = GraphParams()
    x_node = graph.leaf("x")
    s = add_encoder(graph, x_node, model.encoder, len(batch), bound)
    values = graph.forward({x_node: batch, **bound.feeds})
    out = values[s].data
    if out.shape[1] != model.spec.latent_length:
        raise ShapeError(f"encoder produced {out.shape[1]} values, expected {model.spec.latent_length}")
    return out[0] if np.ndim(x) == 2 else out


def power_normalize(s, power: float = DEFAULT_POWER) -> np.ndarray:
    """Per-sample normalization so that (1/k) * sum |z_l|^2 == power."""
    arr = np.asarray(s, dtype=np.float64)
    single = arr.ndim == 1
    z, _ = power_normalize_array(arr[None] if single else arr, power)
    return z[0] if single else z


def to_complex(s: np.ndarray) -> np.ndarray:
    """Interleaved (re, im) reals to complex symbols: z_l = s_{2l} + j s_{2l+1}."""
    return s[..., 0::2] + 1j * s[..., 1::2]


def decode(y_tilde, model: JSCCModel) -> np.ndarray:
    """Reconstruction in (0, 1) with shape (N, C, H, W) (or (H, W) for one latent)."""
    arr = np.asarray(y_tilde, dtype=np.float64)
    single = arr.ndim == 1
    batch = arr[None] if single else arr
    if batch.ndim != 2 or batch.shape[1] != model.spec.latent_length:
        raise ShapeError(
            f"decoder expects latents of length {model.spec.latent_length}, got shape {arr.shape}"
        )
    graph = Graph()
    bound = GraphParams()
    y_node = graph.leaf("y_tilde")
    xhat = add_decoder(graph, y_node, model.decoder, model.spec, len(batch), bound)
    out = graph.forward({y_node: batch, **bound.feeds})[xhat].data
    return out[0, 0] if single and model.spec.channels == 1 else (out[0] if single else out)
