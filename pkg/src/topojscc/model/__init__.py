"""JSCC autoencoder and its checkpoint format."""

from topojscc.model.jscc import (
    ConvLayer,
    DecoderParams,
    EncoderParams,
    GraphParams,
    JSCCModel,
    ModelSpec,
    add_decoder,
    add_encoder,
    build_model,
    check_image_shape,
    decode,
    encode,
    init_params,
    new_model,
    plan_latent_channels,
    power_normalize,
    to_complex,
)
from topojscc.model.checkpoint import (
    CHECKPOINT_VERSION,
    Checkpoint,
    checkpoint_bytes,
    load_checkpoint,
    save_checkpoint,
)

__all__ = [
    "ConvLayer",
    "DecoderParams",
    "EncoderParams",
    "GraphParams",
    "JSCCModel",
    "ModelSpec",
    "add_decoder",
    "add_encoder",
    "build_model",
    "check_image_shape",
    "decode",
    "encode",
    "init_params",
    "new_model",
    "plan_latent_channels",
    "power_normalize",
    "to_complex",
    "CHECKPOINT_VERSION",
    "Checkpoint",
    "checkpoint_bytes",
    "load_checkpoint",
    "save_checkpoint",
]
