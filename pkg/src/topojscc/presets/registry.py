"""Ablation presets: which topological terms a run enables."""

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

from topojscc.errors import ConfigError

if TYPE_CHECKING:
    from topojscc.training.config import TrainConfig


@dataclass
class PresetInfo:
    """One ablation row."""
    name: str
    description: str
    lambda_img: float
    lambda_lat: float
    signals: list[str]

    def apply(self, config: "TrainConfig") -> "TrainConfig":
        return replace(config, lambda_img=self.lambda_img, lambda_lat=self.lambda_lat)


PRESET_CATALOG: dict[str, dict] = {
    "deepjscc": {
        "description": "MSE-only baseline with both topological terms disabled",
        "lambda_img": 0.0,
        "lambda_lat": 0.0,
        "signals": ["baseline", "mse", "deep jscc"],
    },
    "topo-img": {
        "description": "Image-domain persistence loss only",
        "lambda_img": 1e-4,
        "lambda_lat": 0.0,
        "signals": ["image", "cubical", "reconstruction"],
    },
    "topo-lat": {
        "description": "Latent-space persistence loss only",
        "lambda_img": 0.0,
        "lambda_lat": 1e-5,
        "signals": ["latent", "rips", "channel"],
    },
    "topojscc": {
        "description": "Image and latent persistence losses together",
        "lambda_img": 1e-4,
        "lambda_lat": 1e-5,
        "signals": ["full", "image", "latent", "topology"],
    },
}

ABLATION_ORDER = ("deepjscc", "topo-img", "topo-lat", "topojscc")


def _info(name: str, info: dict) -> PresetInfo:
    return PresetInfo(
        name=name,
        description=info["description"],
        lambda_img=info["lambda_img"],
        lambda_lat=info["lambda_lat"],
        signals=info["signals"],
    )


def search_presets(query: str) -> list[PresetInfo]:
    """Presets whose name, description or signals contain ``query`` (case-insensitive)."""
    query_lower = query.lower()
    return [
        _info(name, info)
        for name, info in PRESET_CATALOG.items()
        if (query_lower in name.lower()
            or query_lower in info["description"].lower()
            or any(query_lower in s.lower() for s in info["signals"]))
    ]


def get_preset(name: str) -> PresetInfo | None:
    info = PRESET_CATALOG.get(name)
    return _info(name, info) if info else None


def apply_preset(config: "TrainConfig", name: str) -> "TrainConfig":
    """Config with the preset's loss weights.

    Raises:
        ConfigError: unknown preset name.
    """
    preset = get_preset(name)
    if preset is None:
        raise ConfigError(f"unknown preset '{name}' (known: {', '.join(PRESET_CATALOG)})")
    return preset.apply(config)
