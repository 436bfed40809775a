"""Persistence diagram types and CSV exchange."""

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from topojscc.errors import FormatError

CSV_HEADER = ["dim", "birth", "death", "essential", "birth_cell", "death_cell"]


@dataclass(frozen=True)
class PersistencePoint:
    """One (birth, death) feature and the cells whose values define it.

    ``birth_cell``/``death_cell`` are a pixel index ``(p,)`` for cubical
    diagrams, a vertex ``(i,)`` or an edge ``(i, j)`` for Rips diagrams, and
    ``()`` when no cell defines the value (capped essential deaths).
    """
    birth: float
    death: float
    dim: int
    birth_cell: tuple[int, ...] = ()
    death_cell: tuple[int, ...] = ()
    essential: bool = False

    @property
    def persistence(self) -> float:
        return abs(self.birth - self.death)


@dataclass
class PersistenceDiagram:
    """Multiset of persistence points, possibly spanning several dimensions."""
    points: list[PersistencePoint] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[PersistencePoint]:
        return iter(self.points)

    def __getitem__(self, i: int) -> PersistencePoint:
        return self.points[i]

    def of_dim(self, dim: int) -> "PersistenceDiagram":
        return PersistenceDiagram([p for p in self.points if p.dim == dim])

    def finite(self) -> "PersistenceDiagram":
        return PersistenceDiagram([p for p in self.points if not p.essential])

    def dims(self) -> set[int]:
        return {p.dim for p in self.points}

    def pairs(self) -> np.ndarray:
        """(n, 2) array of (birth, death)."""
        if not self.points:
            return np.zeros((0, 2))
        return np.array([(p.birth, p.death) for p in self.points], dtype=np.float64)

    def multiset(self) -> list[tuple[int, float, float]]:
        """Sorted (dim, birth, death) triples; the identity used for oracle comparisons."""
        return sorted((p.dim, p.birth, p.death) for p in self.points)


def _format_cell(cell: tuple[int, ...]) -> str:
    return ":".join(str(c) for c in cell) if cell else "-1"


def _parse_cell(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "-1"):
        return ()
    return tuple(int(part) for part in text.split(":"))


def diagram_to_csv(diagram: PersistenceDiagram) -> str:
    """Render a diagram as CSV text (header included, ``\\n`` line endings)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in diagram:
        writer.writerow([
            p.dim, repr(float(p.birth)), repr(float(p.death)), int(p.essential),
            _format_cell(p.birth_cell), _format_cell(p.death_cell),
        ])
    return buf.getvalue()


def diagram_from_csv(text: str) -> PersistenceDiagram:
    """Parse CSV text produced by ``diagram_to_csv``."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or [c.strip() for c in rows[0]] != CSV_HEADER:
        raise FormatError(f"diagram CSV must start with header {','.join(CSV_HEADER)}")
    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise FormatError(f"diagram CSV line {lineno}: expected 6 fields, got {len(row)}")
        try:
            points.append(PersistencePoint(
                birth=float(row[1]),
                death=float(row[2]),
                dim=int(row[0]),
                birth_cell=_parse_cell(row[4]),
                death_cell=_parse_cell(row[5]),
                essential=bool(int(row[3])),
            ))
        except ValueError as e:
            raise FormatError(f"diagram CSV line {lineno}: {e}") from e
    return PersistenceDiagram(points)


def write_diagram_csv(path: Path | str, diagram: PersistenceDiagram) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(diagram_to_csv(diagram))
    return path


def read_diagram_csv(path: Path | str) -> PersistenceDiagram:
    return diagram_from_csv(Path(path).read_text())
