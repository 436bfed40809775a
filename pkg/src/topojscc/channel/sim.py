"""Complex-baseband channel: AWGN and slow (per-image) Rayleigh fading."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from topojscc.autodiff import Graph
from topojscc.errors import DomainError, ShapeError

TRAINING_SNRS_DB = (0.0, 5.0, 10.0, 15.0, 20.0)
NOISELESS = math.inf
DEFAULT_POWER = 1.0


class ChannelKind(str, Enum):
    AWGN = "awgn"
    RAYLEIGH = "rayleigh"


def channel_kind(kind: "ChannelKind | str") -> ChannelKind:
    try:
        return ChannelKind(str(getattr(kind, "value", kind)).lower())
    except ValueError:
        known = ", ".join(k.value for k in ChannelKind)
        raise DomainError(f"unknown channel kind '{kind}' (expected one of: {known})") from None


@dataclass(frozen=True)
class ChannelRealization:
    """Everything needed to replay one image's pass through the channel."""
    kind: ChannelKind
    h: complex
    n0: float
    noise: np.ndarray
    snr_db: float
    csi: bool = False

    @property
    def effective_gain(self) -> complex:
        """Gain seen by the decoder input; 1 when the receiver divides by h."""
        return 1.0 + 0.0j if self.csi else self.h


def substream(seed: int, *path: int) -> np.random.Generator:
    """Counter-based generator for the stream addressed by (seed, *path)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, path)])))


def standard_normal(rng: np.random.Generator, size: int) -> np.ndarray:
    """Box-Muller standard normals built from the generator's uniforms."""
    pairs = (size + 1) // 2
    u1 = 1.0 - rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    return np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:size]


def complex_normal(rng: np.random.Generator, size: int, variance: float = 1.0) -> np.ndarray:
    """CN(0, variance) samples."""
    g = standard_normal(rng, 2 * size) * math.sqrt(variance / 2.0)
    return g[:size] + 1j * g[size:]


def noise_power(snr_db: float, power: float = DEFAULT_POWER) -> float:
    if math.isnan(snr_db) or snr_db == -math.inf:
        raise DomainError(f"snr_db must be finite or +inf (noiseless), got {snr_db}")
    if snr_db == math.inf:
        return 0.0
    return power / 10.0 ** (snr_db / 10.0)


def _symbols(z) -> np.ndarray:
    arr = np.asarray(z)
    if np.iscomplexobj(arr):
        if arr.ndim != 1:
            raise ShapeError(f"expected one image's complex symbols (k,), got {arr.shape}")
        return arr.astype(np.complex128)
    if arr.ndim != 1 or arr.size % 2:
        raise ShapeError(f"expected interleaved (re, im) reals of even length, got {arr.shape}")
    arr = arr.astype(np.float64)
    return arr[0::2] + 1j * arr[1::2]


def _concat(y: np.ndarray) -> np.ndarray:
    return np.concatenate([y.real, y.imag])


def transmit(z, kind: ChannelKind | str, snr_db: float, rng: np.random.Generator,
             power: float = DEFAULT_POWER, csi: bool = False) -> tuple[np.ndarray, ChannelRealization]:
    """Pass one image's symbols through the channel.

    Args:
        z: complex symbols (k,) or interleaved reals (2k,).
        kind: "awgn" or "rayleigh".
        snr_db: SNR in dB; ``math.inf`` disables the noise.
        rng: generator the fading gain and noise are drawn from.
        power: average symbol power P the latent was normalized to.
        csi: divide by h at the receiver.

    Returns:
        ([Re y, Im y], realization).
    """
    kind = channel_kind(kind)
    symbols = _symbols(z)
    n0 = noise_power(snr_db, power)
    h = 1.0 + 0.0j
    if kind is ChannelKind.RAYLEIGH:
        h = complex(complex_normal(rng, 1)[0])
    noise = complex_normal(rng, symbols.size, n0) if n0 > 0 else np.zeros(symbols.size, complex)
    realization = ChannelRealization(kind, h, n0, noise, float(snr_db), csi)
    return _apply(symbols, realization), realization


def _apply(symbols: np.ndarray, realization: ChannelRealization) -> np.ndarray:
    y = realization.h * symbols + realization.noise
    if realization.csi:
        y = y / realization.h
    return _concat(y)


def replay(z, realization: ChannelRealization) -> np.ndarray:
    """Apply a stored realization again; bitwise identical to the original pass."""
    symbols = _symbols(z)
    if symbols.size != realization.noise.size:
        raise ShapeError(f"realization carries {realization.noise.size} symbols, got {symbols.size}")
    return _apply(symbols, realization)


def channel_vjp(g: np.ndarray, realization: ChannelRealization) -> np.ndarray:
    """Gradient w.r.t. the interleaved input given the gradient w.r.t. [Re y, Im y]."""
    k = g.size // 2
    gz = np.conj(realization.effective_gain) * (g[:k] + 1j * g[k:])
    out = np.empty(2 * k)
    out[0::2] = gz.real
    out[1::2] = gz.imag
    return out


def transmit_batch(z: np.ndarray, kind: ChannelKind | str, snr_db: float, seed: int,
                   path: Sequence[int] = (), power: float = DEFAULT_POWER,
                   csi: bool = False) -> tuple[np.ndarray, list[ChannelRealization]]:
    """Transmit each row of ``z`` (B, 2k) with its own substream (seed, *path, item)."""
    if z.ndim != 2:
        raise ShapeError(f"expected a (batch, 2k) latent batch, got {z.shape}")
    rows, realizations = [], []
    for item, row in enumerate(z):
        y, r = transmit(row, kind, snr_db, substream(seed, *path, item), power, csi)
        rows.append(y)
        realizations.append(r)
    return np.stack(rows), realizations


def channel_node(graph: Graph, z: int, kind: ChannelKind | str, snr_db: float, seed: int,
                 path: Sequence[int] = (), power: float = DEFAULT_POWER, csi: bool = False,
                 realizations: list[ChannelRealization] | None = None) -> int:
    """Add a channel node; realizations drawn in forward are appended to ``realizations``."""
    store = realizations if realizations is not None else []

    def fn(batch: np.ndarray):
        y, drawn = transmit_batch(batch, kind, snr_db, seed, path, power, csi)
        store[:] = drawn

        def vjp(g: np.ndarray):
            return [np.stack([channel_vjp(gi, r) for gi, r in zip(g, drawn)])]

        return y, vjp

    return graph.custom(fn, z, name=f"channel_{channel_kind(kind).value}")


def sample_training_snr(rng: np.random.Generator, choices: Sequence[float] = TRAINING_SNRS_DB) -> float:
    """Uniform draw from the training SNR set."""
    return float(choices[int(rng.integers(len(choices)))])
