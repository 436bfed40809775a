"""Ablation preset tools."""

from topojscc.presets import get_preset, search_presets
from topojscc.server import mcp


@mcp.tool
async def list_presets(query: str = "") -> dict:
    """List ablation presets, optionally filtered.

    Args:
        query: Search query (matches name, description, signals)

    Returns:
        Matching presets with their loss weights
    """
    results = search_presets(query)

    return {
        "query": query,
        "presets": [
            {
                "name": p.name,
                "description": p.description,
                "lambda_img": p.lambda_img,
                "lambda_lat": p.lambda_lat,
            }
            for p in results
        ]
    }


@mcp.tool
async def get_preset_details(name: str) -> dict:
    """Get the loss weights and usage of one preset.

    Args:
        name: Preset name (e.g., topojscc)

    Returns:
        Preset details including the config lines it sets
    """
    info = get_preset(name)

    if not info:
        return {
            "found": False,
            "message": f"Preset '{name}' not found",
        }

    return {
        "found": True,
        "name": info.name,
        "description": info.description,
        "lambda_img": info.lambda_img,
        "lambda_lat": info.lambda_lat,
        "signals": info.signals,
        "usage": f"topojscc train --preset {info.name}",
    }
