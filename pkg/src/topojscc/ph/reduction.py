"""Standard Z/2 boundary-matrix reduction.

Columns are Python ints used as bit sets over row indices in filtration
order. This is the reference back end for both complexes and the oracle the
fast cubical and Rips routines are checked against.
"""

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class FiltrationCell:
    """A cell of a filtered complex; ``faces`` index earlier cells."""
    dim: int
    value: float
    faces: tuple[int, ...]
    generator: tuple[int, ...]


@dataclass
class Reduction:
    """Result of reducing a boundary matrix."""
    pairs: list[tuple[int, int]]
    essential: list[int]


def reduce_columns(columns: Sequence[int]) -> Reduction:
    """Reduce boundary columns left to right, pairing each column with its lowest row."""
    owner: dict[int, int] = {}
    reduced = list(columns)
    pairs: list[tuple[int, int]] = []
    for j in range(len(reduced)):
        col = reduced[j]
        while col:
            low = col.bit_length() - 1
            other = owner.get(low)
            if other is None:
                owner[low] = j
                pairs.append((low, j))
                break
            col ^= reduced[other]
        reduced[j] = col
    paired = {i for pair in pairs for i in pair}
    essential = [j for j in range(len(reduced)) if reduced[j] == 0 and j not in paired]
    return Reduction(pairs, essential)


def reduce_filtration(cells: Sequence[FiltrationCell]) -> Reduction:
    """Reduce a filtration given as cells already sorted in filtration order."""
    columns = []
    for j, cell in enumerate(cells):
        col = 0
        for f in cell.faces:
            if f >= j:
                raise ValueError(f"cell {j} has face {f} that does not precede it")
            col ^= 1 << f
        columns.append(col)
    return reduce_columns(columns)
