"""Binary PGM (P5, 8-bit) reading and writing."""

import re
from pathlib import Path

import numpy as np

from topojscc.errors import FormatError

PGM_MAGIC = b"P5"
MAXVAL = 255
_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _header(data: bytes, path: Path) -> tuple[int, int, int, int]:
    """Parse magic, width, height, maxval; returns them plus the raster offset."""
    pos = 0
    tokens = []
    for _ in range(4):
        match = _TOKEN.match(data, pos)
        if not match:
            raise FormatError(f"malformed PGM header in {path}: truncated")
        tokens.append(match.group(1))
        pos = match.end()
    if tokens[0] != PGM_MAGIC:
        raise FormatError(f"malformed PGM header in {path}: magic {tokens[0]!r}, expected P5")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise FormatError(f"malformed PGM header in {path}: non-numeric size or depth") from None
    if width <= 0 or height <= 0:
        raise FormatError(f"malformed PGM header in {path}: size {width}x{height}")
    if maxval != MAXVAL:
        raise FormatError(f"unsupported PGM depth in {path}: maxval {maxval}, only 8-bit (255) is read")
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise FormatError(f"malformed PGM header in {path}: missing separator before raster")
    return width, height, maxval, pos + 1


def read_pgm(path: str | Path) -> np.ndarray:
    """Raw 8-bit raster of a P5 file as a (H, W) uint8 array."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise FormatError(f"cannot read PGM file {path}: {e.strerror}") from e
    width, height, _, offset = _header(data, path)
    raster = data[offset:offset + width * height]
    if len(raster) != width * height:
        raise FormatError(
            f"malformed PGM file {path}: expected {width * height} raster bytes, got {len(raster)}"
        )
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def to_uint8(image) -> np.ndarray:
    """uint8 arrays pass through; float images in [0, 1] are rounded to k/255."""
    arr = np.asarray(image)
    if arr.dtype == np.uint8:
        return arr
    arr = np.asarray(arr, dtype=np.float64)
    if arr.size and (np.nanmin(arr) < 0.0 or np.nanmax(arr) > 1.0 or np.isnan(arr).any()):
        raise FormatError("image values must lie in [0, 1] to be written as 8-bit PGM")
    return np.round(arr * MAXVAL).astype(np.uint8)


def save_pgm(path: str | Path, image) -> Path:
    """Write a (H, W) image as P5."""
    raster = to_uint8(image)
    if raster.ndim != 2:
        raise FormatError(f"PGM images are single-channel (H, W), got shape {raster.shape}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    height, width = raster.shape
    path.write_bytes(b"P5\n%d %d\n%d\n" % (width, height, MAXVAL) + raster.tobytes())
    return path
