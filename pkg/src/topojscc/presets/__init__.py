from topojscc.presets.registry import (
    ABLATION_ORDER,
    PRESET_CATALOG,
    PresetInfo,
    apply_preset,
    get_preset,
    search_presets,
)

__all__ = [
    "ABLATION_ORDER",
    "PRESET_CATALOG",
    "PresetInfo",
    "apply_preset",
    "get_preset",
    "search_presets",
]
