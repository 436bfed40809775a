"""Persistence diagram tools."""

from pathlib import Path

from topojscc.data import read_pgm
from topojscc.errors import TopoJSCCError
from topojscc.metrics import diagram_distances
from topojscc.ph import cubical_diagram, read_diagram_csv, write_diagram_csv
from topojscc.server import mcp
from topojscc.tools import tool_error
from topojscc.utils.sanitize import ValidationError, validate_input_path


@mcp.tool
async def compute_diagram(image_path: str, max_dim: int = 1, output_path: str | None = None) -> dict:
    """Compute the superlevel cubical persistence diagram of a PGM image.

    Args:
        image_path: Path to a binary PGM (P5) image
        max_dim: Highest homology dimension (0 or 1)
        output_path: Optional CSV file to write the diagram to

    Returns:
        Diagram points and the CSV path if one was written
    """
    try:
        path = validate_input_path(image_path, "file")
        diagram = cubical_diagram(read_pgm(path) / 255.0, max_dim)
        written = str(write_diagram_csv(output_path, diagram)) if output_path else None
    except (ValidationError, TopoJSCCError) as e:
        raise tool_error(e)

    return {
        "image": str(path),
        "points": [
            {
                "dim": p.dim,
                "birth": p.birth,
                "death": p.death,
                "essential": p.essential,
                "birth_cell": list(p.birth_cell),
                "death_cell": list(p.death_cell),
            }
            for p in diagram
        ],
        "counts": {str(m): len(diagram.of_dim(m)) for m in range(max_dim + 1)},
        "csv": written,
    }


@mcp.tool
async def diagram_distance(diagram_a: str, diagram_b: str, p: float = 2.0) -> dict:
    """Wasserstein distance between two diagram CSV files.

    Args:
        diagram_a: First diagram CSV
        diagram_b: Second diagram CSV
        p: Wasserstein order (>= 1)

    Returns:
        Per-dimension and total distances
    """
    try:
        a = read_diagram_csv(validate_input_path(diagram_a, "file"))
        b = read_diagram_csv(validate_input_path(diagram_b, "file"))
        dims = tuple(sorted(set(a.dims()) | set(b.dims()))) or (0,)
        per_dim = diagram_distances(a, b, p, dims)
    except (ValidationError, TopoJSCCError) as e:
        raise tool_error(e)

    return {
        "diagrams": [Path(diagram_a).name, Path(diagram_b).name],
        "p": p,
        "per_dim": {str(m): d for m, d in per_dim.items()},
        "total": sum(per_dim.values()),
    }
