"""Versioned checkpoint container.

A checkpoint is an uncompressed zip archive holding ``meta.json`` and one
``.npy`` member per parameter array. Member timestamps are fixed and JSON is
written with sorted keys, so identical parameters give identical bytes.
"""

import io
import json
import zipfile
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from topojscc.errors import FormatError
from topojscc.model.jscc import ConvLayer, DecoderParams, EncoderParams, JSCCModel, ModelSpec

CHECKPOINT_FORMAT = "topojscc-checkpoint"
CHECKPOINT_VERSION = 1
META_MEMBER = "meta.json"
FIXED_DATE = (1980, 1, 1, 0, 0, 0)


@dataclass
class Checkpoint:
    model: JSCCModel
    meta: dict[str, Any] = field(default_factory=dict)


def _member(name: str) -> zipfile.ZipInfo:
    info = zipfile.ZipInfo(name, date_time=FIXED_DATE)
    info.compress_type = zipfile.ZIP_STORED
    info.external_attr = 0o644 << 16
    return info


def _npy_bytes(arr: np.ndarray) -> bytes:
    buf = io.BytesIO()
    np.lib.format.write_array(buf, np.ascontiguousarray(arr, dtype=np.float64), allow_pickle=False)
    return buf.getvalue()


def checkpoint_bytes(model: JSCCModel, extra: dict[str, Any] | None = None) -> bytes:
    params = model.parameters()
    meta = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "spec": asdict(model.spec),
        "encoder_strides": [layer.stride for layer in model.encoder.layers],
        "decoder_strides": [layer.stride for layer in model.decoder.layers],
        "parameters": {name: list(arr.shape) for name, arr in params.items()},
        "extra": extra or {},
    }
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        zf.writestr(_member(META_MEMBER), json.dumps(meta, sort_keys=True, indent=2))
        for name, arr in params.items():
            zf.writestr(_member(f"{name}.npy"), _npy_bytes(arr))
    return buf.getvalue()


def save_checkpoint(path: str | Path, model: JSCCModel, extra: dict[str, Any] | None = None) -> Path:
    """Write ``model`` to ``path``; ``extra`` is stored verbatim in the metadata."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(checkpoint_bytes(model, extra))
    return path


def _layers(zf: zipfile.ZipFile, prefix: str, strides: list[int], names: set[str]) -> list[ConvLayer]:
    def read(name: str) -> np.ndarray:
        with zf.open(f"{name}.npy") as fh:
            return np.lib.format.read_array(io.BytesIO(fh.read()), allow_pickle=False)

    layers = []
    for i, stride in enumerate(strides):
        slope_name = f"{prefix}.{i}.slope"
        layers.append(ConvLayer(
            read(f"{prefix}.{i}.weight"),
            read(f"{prefix}.{i}.bias"),
            int(stride),
            read(slope_name) if slope_name in names else None,
        ))
    return layers


def load_checkpoint(path: str | Path) -> Checkpoint:
    """Read a checkpoint written by ``save_checkpoint``.

    Raises:
        FormatError: the file is missing, not a checkpoint, or of another version.
    """
    path = Path(path)
    if not path.is_file():
        raise FormatError(f"checkpoint not found: {path}")
    try:
        with zipfile.ZipFile(path) as zf:
            meta = json.loads(zf.read(META_MEMBER))
            if meta.get("format") != CHECKPOINT_FORMAT:
                raise FormatError(f"{path} is not a topojscc checkpoint")
            if meta.get("version") != CHECKPOINT_VERSION:
                raise FormatError(
                    f"checkpoint version {meta.get('version')} is not supported "
                    f"(expected {CHECKPOINT_VERSION})"
                )
            names = set(meta["parameters"])
            encoder = EncoderParams(_layers(zf, "encoder", meta["encoder_strides"], names))
            decoder = DecoderParams(_layers(zf, "decoder", meta["decoder_strides"], names))
    except (zipfile.BadZipFile, KeyError, json.JSONDecodeError) as e:
        raise FormatError(f"{path} is not a topojscc checkpoint: {e}") from e
    model = JSCCModel(ModelSpec(**meta["spec"]), encoder, decoder)
    for name, arr in model.parameters().items():
        if list(arr.shape) != meta["parameters"][name]:
            raise FormatError(f"checkpoint array {name} has shape {arr.shape}, metadata says {meta['parameters'][name]}")
    return Checkpoint(model, meta.get("extra", {}))
