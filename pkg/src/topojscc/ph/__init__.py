"""Persistent homology of images (cubical) and point clouds (Vietoris-Rips)."""

from topojscc.ph.diagram import (
    PersistencePoint,
    PersistenceDiagram,
    diagram_to_csv,
    diagram_from_csv,
    write_diagram_csv,
    read_diagram_csv,
)
from topojscc.ph.cubical import (
    CubicalFiltration,
    superlevel_order,
    cubical_diagram,
    cubical_complex_oracle,
    snap_to_grid,
    betti_at,
)
from topojscc.ph.rips import (
    pairwise_distances,
    default_eps_max,
    rips_diagram,
    rips_oracle,
)
from topojscc.ph.reduction import FiltrationCell, Reduction, reduce_columns, reduce_filtration

__all__ = [
    "PersistencePoint",
    "PersistenceDiagram",
    "diagram_to_csv",
    "diagram_from_csv",
    "write_diagram_csv",
    "read_diagram_csv",
    "CubicalFiltration",
    "superlevel_order",
    "cubical_diagram",
    "cubical_complex_oracle",
    "snap_to_grid",
    "betti_at",
    "pairwise_distances",
    "default_eps_max",
    "rips_diagram",
    "rips_oracle",
    "FiltrationCell",
    "Reduction",
    "reduce_columns",
    "reduce_filtration",
]
