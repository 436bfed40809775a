"""Synthetic dataset generation tool."""

from topojscc.data import SyntheticSpec, gen_synthetic, save_pgm
from topojscc.errors import TopoJSCCError
from topojscc.server import mcp
from topojscc.tools import tool_error
from topojscc.utils.sanitize import ValidationError, validate_output_dir


@mcp.tool
async def generate_dataset(
    output_dir: str,
    kind: str = "rings",
    count: int = 16,
    size: int = 32,
    shapes: int = 2,
    seed: int = 0,
) -> dict:
    """Generate synthetic images with known Betti numbers as PGM files.

    Args:
        output_dir: Directory to write the images to
        kind: blobs, rings or grid-roads
        count: Number of images
        size: Image height and width (multiple of 4, at least 16)
        shapes: Blobs or rings per image
        seed: Generator seed

    Returns:
        Written files with their Betti numbers
    """
    try:
        out = validate_output_dir(output_dir)
        dataset = gen_synthetic(SyntheticSpec(kind, count, size, size, seed, shapes))
        files = [str(save_pgm(out / name, image)) for name, image in zip(dataset.names, dataset.images)]
    except (ValidationError, TopoJSCCError) as e:
        raise tool_error(e)

    return {
        "provenance": dataset.provenance,
        "files": [
            {"path": f, "betti0": b[0], "betti1": b[1]}
            for f, b in zip(files, dataset.betti)
        ],
    }
