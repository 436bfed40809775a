"""Path conventions for checkpoints and output files."""

import re
from pathlib import Path

from topojscc.model import load_checkpoint

CHECKPOINT_SUFFIX = ".ckpt"
RHO_NAME = re.compile(r"rho-?(\d+(?:\.\d+)?)")


def find_checkpoint(directory: Path, rho: float) -> Path | None:
    """Checkpoint for ``rho`` under ``directory``.

    Checks ``rho-<value>.ckpt`` files first, then ``*/model.ckpt`` training
    outputs, matching on the rho stored in the checkpoint.

    Returns:
        Path to the checkpoint if found, None otherwise
    """
    for path in sorted(directory.glob(f"*{CHECKPOINT_SUFFIX}")):
        match = RHO_NAME.search(path.stem)
        if match and abs(float(match.group(1)) - rho) < 1e-9:
            return path

    for path in sorted(directory.glob(f"*/*{CHECKPOINT_SUFFIX}")) + sorted(directory.glob(f"*{CHECKPOINT_SUFFIX}")):
        try:
            if abs(load_checkpoint(path).model.spec.rho - rho) < 1e-9:
                return path
        except ValueError:
            continue

    return None


def diagram_path(out_dir: Path, image: Path) -> Path:
    """Diagram CSV written for ``image``."""
    return out_dir / f"{image.stem}.csv"
