"""FastMCP server entry point."""

from fastmcp import FastMCP

mcp = FastMCP(
    "TopoJSCC",
    instructions=(
        "Persistent homology, diagram distances, synthetic datasets and sweep "
        "evaluation for topology-aware joint source-channel coding"
    ),
)

# Import tools to register them
from topojscc.tools import diagrams, datasets, presets, sweeps  # noqa: F401, E402

if __name__ == "__main__":
    mcp.run()
