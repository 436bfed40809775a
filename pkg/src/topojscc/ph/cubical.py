"""Superlevel-set persistence of grayscale images on a cubical complex.

Pixels are the top cells; edges and vertices take the largest value of the
pixels around them, so superlevel components are 8-connected and holes are
4-connected. Dimension 0 is a union-find sweep over pixels in descending
intensity; dimension 1 is the dual sweep over the complement in ascending
intensity, where the region outside the image is the eldest component.

Filtration values are the exact pixel intensities and every finite point
records the pixel carrying its birth and death value, which is what the
topological loss differentiates through. At ties the gradient follows the
row-major tie-break (a one-sided subgradient).
"""

from dataclasses import dataclass

import numpy as np

from topojscc.errors import DomainError
from topojscc.ph.diagram import PersistenceDiagram, PersistencePoint
from topojscc.ph.reduction import FiltrationCell, reduce_filtration
from topojscc.ph.unionfind import ElderUnionFind

_NEIGHBORS_8 = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
_NEIGHBORS_4 = [(-1, 0), (0, -1), (0, 1), (1, 0)]


@dataclass
class CubicalFiltration:
    """Pixels in descending intensity, ties broken by row-major index."""
    height: int
    width: int
    values: np.ndarray
    order: np.ndarray
    rank: np.ndarray


def validate_image(image) -> np.ndarray:
    img = np.asarray(image, dtype=np.float64)
    if img.size == 0:
        raise DomainError("empty image")
    if img.ndim != 2:
        raise DomainError(f"expected a 2-D grayscale image, got shape {img.shape}")
    if img.shape[0] < 2 or img.shape[1] < 2:
        raise DomainError(f"image must be at least 2x2, got {img.shape}")
    if not np.all(np.isfinite(img)) or img.min() < 0.0 or img.max() > 1.0:
        raise DomainError("image values must lie in [0, 1]")
    return img


def superlevel_order(image) -> CubicalFiltration:
    """Strict total order of pixels: descending value, then row-major index."""
    img = validate_image(image)
    flat = img.ravel()
    order = np.argsort(-flat, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return CubicalFiltration(img.shape[0], img.shape[1], img, order, rank)


def _neighbors(p: int, h: int, w: int, offsets) -> list[int]:
    r, c = divmod(p, w)
    out = []
    for dr, dc in offsets:
        rr, cc = r + dr, c + dc
        if 0 <= rr < h and 0 <= cc < w:
            out.append(rr * w + cc)
    return out


def _components(filt: CubicalFiltration) -> list[PersistencePoint]:
    h, w = filt.height, filt.width
    flat = filt.values.ravel()
    rank = filt.rank
    uf = ElderUnionFind(flat.size)
    entered = np.zeros(flat.size, dtype=bool)
    points = []
    for p in filt.order:
        p = int(p)
        roots = {uf.find(q) for q in _neighbors(p, h, w, _NEIGHBORS_8) if entered[q]}
        entered[p] = True
        if not roots:
            continue
        elder, *younger = sorted(roots, key=lambda r: rank[r])
        for root in younger:
            if flat[root] != flat[p]:
                points.append(PersistencePoint(
                    float(flat[root]), float(flat[p]), 0, (root,), (p,)
                ))
            uf.merge(elder, root)
        uf.merge(elder, p)
    first, last = int(filt.order[0]), int(filt.order[-1])
    points.append(PersistencePoint(
        float(flat[first]), float(flat[last]), 0, (first,), (last,), essential=True
    ))
    return points


def _holes(filt: CubicalFiltration) -> list[PersistencePoint]:
    h, w = filt.height, filt.width
    flat = filt.values.ravel()
    rank = filt.rank
    outside = flat.size
    uf = ElderUnionFind(flat.size + 1)
    entered = np.zeros(flat.size, dtype=bool)
    # the outside is elder to every pixel in the ascending sweep
    age = np.append(-rank, -(flat.size + 1))
    points = []
    for p in filt.order[::-1]:
        p = int(p)
        r, c = divmod(p, w)
        roots = {uf.find(q) for q in _neighbors(p, h, w, _NEIGHBORS_4) if entered[q]}
        if r in (0, h - 1) or c in (0, w - 1):
            roots.add(uf.find(outside))
        entered[p] = True
        if not roots:
            continue
        elder, *younger = sorted(roots, key=lambda q: age[q])
        for root in younger:
            if flat[p] != flat[root]:
                points.append(PersistencePoint(
                    float(flat[p]), float(flat[root]), 1, (p,), (root,)
                ))
            uf.merge(elder, root)
        uf.merge(elder, p)
    return points


def cubical_diagram(image, max_dim: int = 1) -> PersistenceDiagram:
    """Persistence diagram (dims 0..max_dim) of the superlevel filtration of ``image``.

    Zero-persistence pairs are omitted. The essential component is capped at the
    image minimum and flagged.
    """
    if max_dim not in (0, 1):
        raise DomainError(f"max_dim must be 0 or 1, got {max_dim}")
    filt = superlevel_order(image)
    points = _components(filt)
    if max_dim == 1:
        points.extend(_holes(filt))
    return PersistenceDiagram(points)


def cubical_complex_oracle(image) -> PersistenceDiagram:
    """Diagram from a full boundary-matrix reduction over every cell of the complex.

    Slow; used to check ``cubical_diagram``.
    """
    filt = superlevel_order(image)
    h, w = filt.height, filt.width
    flat = filt.values.ravel()
    rank = filt.rank

    def carrier(pixels: list[tuple[int, int]]) -> int:
        inside = [r * w + c for r, c in pixels if 0 <= r < h and 0 <= c < w]
        return min(inside, key=lambda p: rank[p])

    # (dim, generator pixel, key, face keys)
    raw = []
    for i in range(h + 1):
        for j in range(w + 1):
            gen = carrier([(i - 1, j - 1), (i - 1, j), (i, j - 1), (i, j)])
            raw.append((0, gen, ("v", i, j), ()))
    for i in range(h + 1):
        for j in range(w):
            gen = carrier([(i - 1, j), (i, j)])
            raw.append((1, gen, ("h", i, j), (("v", i, j), ("v", i, j + 1))))
    for i in range(h):
        for j in range(w + 1):
            gen = carrier([(i, j - 1), (i, j)])
            raw.append((1, gen, ("e", i, j), (("v", i, j), ("v", i + 1, j))))
    for i in range(h):
        for j in range(w):
            faces = (("h", i, j), ("h", i + 1, j), ("e", i, j), ("e", i, j + 1))
            raw.append((2, i * w + j, ("s", i, j), faces))

    raw.sort(key=lambda cell: (rank[cell[1]], cell[0], cell[2]))
    position = {cell[2]: k for k, cell in enumerate(raw)}
    cells = [
        FiltrationCell(dim, float(flat[gen]), tuple(position[f] for f in faces), (gen,))
        for dim, gen, _, faces in raw
    ]
    reduction = reduce_filtration(cells)

    points = []
    for b, d in reduction.pairs:
        birth, death = cells[b], cells[d]
        if birth.value != death.value:
            points.append(PersistencePoint(
                birth.value, death.value, birth.dim, birth.generator, death.generator
            ))
    last = int(filt.order[-1])
    for e in reduction.essential:
        cell = cells[e]
        points.append(PersistencePoint(
            cell.value, float(flat[last]), cell.dim, cell.generator, (last,), essential=True
        ))
    return PersistenceDiagram(points)


def snap_to_grid(image, levels: int = 64) -> np.ndarray:
    """Quantise intensities to a uniform grid of ``levels`` thresholds on [0, 1]."""
    if levels < 2:
        raise DomainError("a threshold grid needs at least 2 levels")
    img = np.asarray(image, dtype=np.float64)
    return np.round(img * (levels - 1)) / (levels - 1)


def betti_at(diagram: PersistenceDiagram, threshold: float, dim: int) -> int:
    """Number of dim-``dim`` features alive in the superlevel set at ``threshold``."""
    return sum(
        1 for p in diagram.of_dim(dim)
        if p.birth >= threshold and (p.essential or p.death < threshold)
    )
