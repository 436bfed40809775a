"""Channel simulation."""

from topojscc.channel.sim import (
    NOISELESS,
    TRAINING_SNRS_DB,
    ChannelKind,
    ChannelRealization,
    channel_kind,
    channel_node,
    channel_vjp,
    complex_normal,
    noise_power,
    replay,
    sample_training_snr,
    standard_normal,
    substream,
    transmit,
    transmit_batch,
)

__all__ = [
    "NOISELESS",
    "TRAINING_SNRS_DB",
    "ChannelKind",
    "ChannelRealization",
    "channel_kind",
    "channel_node",
    "channel_vjp",
    "complex_normal",
    "noise_power",
    "replay",
    "sample_training_snr",
    "standard_normal",
    "substream",
    "transmit",
    "transmit_batch",
]
