"""Checkpoint evaluation tool."""

import asyncio
import math

from topojscc.data import load_images
from topojscc.errors import TopoJSCCError
from topojscc.server import mcp
from topojscc.tools import tool_error
from topojscc.training.evaluate import evaluate_sweep, summarize
from topojscc.utils.sanitize import ValidationError, parse_value_list, validate_input_path
from topojscc.validators import PreflightContext, run_preflight


@mcp.tool
async def evaluate_checkpoint(
    checkpoint_path: str,
    dataset_path: str,
    snr_values: str = "0,5,10,15,20",
    channel: str = "awgn",
    runs: int = 1,
    seed: int = 0,
) -> dict:
    """Run an SNR sweep of one checkpoint over a PGM dataset.

    Args:
        checkpoint_path: Checkpoint written by 'topojscc train'
        dataset_path: Directory of PGM test images
        snr_values: Comma-separated SNRs in dB
        channel: awgn or rayleigh
        runs: Noise realizations per SNR
        seed: Base seed

    Returns:
        One record per (SNR, run) plus per-SNR means
    """
    try:
        checkpoint = validate_input_path(checkpoint_path, "file")
        values = parse_value_list(snr_values)
    except ValidationError as e:
        raise tool_error(e)

    preflight = run_preflight(PreflightContext(dataset_path=dataset_path, checkpoints=[checkpoint]))
    if not preflight.valid:
        raise tool_error(ValueError(f"Pre-flight checks failed:\n\n{preflight.format_issues()}"))

    try:
        dataset = load_images(dataset_path)
        records = await asyncio.to_thread(
            evaluate_sweep, checkpoint, "snr", values, dataset, channel, runs, seed
        )
    except TopoJSCCError as e:
        raise tool_error(e)

    return {
        "records": [
            {
                "snr_db": r.value if math.isfinite(r.value) else "inf",
                "psnr_db": r.psnr_db if math.isfinite(r.psnr_db) else "inf",
                "wdist0": r.wdist0,
                "wdist1": r.wdist1,
                "wdist_total": r.wdist_total,
                "seed": r.seed,
            }
            for r in records
        ],
        "summary": {
            str(v): {k: (x if math.isfinite(x) else "inf") for k, x in s.items()}
            for v, s in summarize(records).items()
        },
    }
