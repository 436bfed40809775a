"""Vietoris-Rips persistence (dims 0 and 1) of finite Euclidean point clouds."""

from itertools import combinations

import numpy as np
from scipy.spatial.distance import pdist, squareform

from topojscc.errors import DomainError, ShapeError
from topojscc.ph.diagram import PersistenceDiagram, PersistencePoint
from topojscc.ph.reduction import FiltrationCell, reduce_filtration
from topojscc.ph.unionfind import ElderUnionFind


def validate_cloud(cloud) -> np.ndarray:
    pts = np.asarray(cloud, dtype=np.float64)
    if pts.ndim != 2:
        raise ShapeError(f"point cloud must be a (B, d) array, got shape {pts.shape}")
    if pts.shape[0] < 2:
        raise DomainError(f"point cloud needs at least 2 points, got {pts.shape[0]}")
    if not np.all(np.isfinite(pts)):
        raise DomainError("point cloud contains non-finite coordinates")
    return pts


def pairwise_distances(cloud) -> np.ndarray:
    """Exact Euclidean distance matrix (symmetric, zero diagonal)."""
    return squareform(pdist(validate_cloud(cloud)))


def default_eps_max(dist: np.ndarray) -> float:
    """Cloud diameter: every simplex enters, so every finite loop dies."""
    return float(np.max(dist))


def _sorted_edges(dist: np.ndarray, eps_max: float) -> list[tuple[float, int, int]]:
    n = dist.shape[0]
    edges = [(float(dist[i, j]), i, j) for i, j in combinations(range(n), 2) if dist[i, j] <= eps_max]
    edges.sort()
    return edges


def _validate_distances(dist) -> np.ndarray:
    d = np.asarray(dist, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ShapeError(f"distance matrix must be square, got shape {d.shape}")
    if d.shape[0] < 2:
        raise DomainError("distance matrix needs at least 2 points")
    return d


def rips_diagram(dist, max_dim: int = 1, eps_max: float | None = None) -> PersistenceDiagram:
    """Rips persistence up to ``max_dim``; simplices above ``eps_max`` are excluded.

    Dimension 0 is Kruskal's algorithm with elder-by-index merges. Dimension 1
    reduces triangle boundaries over edges; triangles enter at their longest
    edge, ties by dimension then lexicographic vertex order. Classes still alive
    at ``eps_max`` are capped there and flagged essential.
    """
    d = _validate_distances(dist)
    if max_dim not in (0, 1):
        raise DomainError(f"max_dim must be 0 or 1, got {max_dim}")
    eps = default_eps_max(d) if eps_max is None else float(eps_max)
    if eps <= 0.0:
        raise DomainError(f"eps_max must be positive, got {eps}")

    n = d.shape[0]
    edges = _sorted_edges(d, eps)
    uf = ElderUnionFind(n)
    points: list[PersistencePoint] = []
    negative = np.zeros(len(edges), dtype=bool)
    for k, (length, i, j) in enumerate(edges):
        ri, rj = uf.find(i), uf.find(j)
        if ri == rj:
            continue
        negative[k] = True
        elder, younger = min(ri, rj), max(ri, rj)
        if length > 0.0:
            points.append(PersistencePoint(0.0, length, 0, (younger,), (i, j)))
        uf.merge(elder, younger)
    for v in range(n):
        if uf.find(v) == v:
            points.append(PersistencePoint(0.0, eps, 0, (v,), (), essential=True))

    if max_dim == 1:
        points.extend(_loops(d, edges, negative, eps))
    return PersistenceDiagram(points)


def _loops(d: np.ndarray, edges, negative: np.ndarray, eps: float) -> list[PersistencePoint]:
    n = d.shape[0]
    edge_rank = np.full((n, n), -1, dtype=np.int64)
    for k, (_, i, j) in enumerate(edges):
        edge_rank[i, j] = edge_rank[j, i] = k
    remaining = int(np.count_nonzero(~negative))
    points: list[PersistencePoint] = []
    if remaining == 0 or n < 3:
        return _unpaired_loops(edges, negative, set(), eps)

    tri = np.array(list(combinations(range(n), 3)), dtype=np.int64)
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    value = np.maximum(np.maximum(d[a, b], d[a, c]), d[b, c])
    keep = value <= eps
    tri, value = tri[keep], value[keep]
    tri = tri[np.lexsort((tri[:, 2], tri[:, 1], tri[:, 0], value))]

    owner: dict[int, int] = {}
    reduced: list[int] = []
    paired: set[int] = set()
    for u, v, w in tri:
        ranks = (edge_rank[u, v], edge_rank[u, w], edge_rank[v, w])
        col = (1 << int(ranks[0])) ^ (1 << int(ranks[1])) ^ (1 << int(ranks[2]))
        while col:
            low = col.bit_length() - 1
            other = owner.get(low)
            if other is None:
                owner[low] = len(reduced)
                paired.add(low)
                killer = max(ranks)
                birth_len, bi, bj = edges[low]
                death_len, di, dj = edges[killer]
                if birth_len != death_len:
                    points.append(PersistencePoint(birth_len, death_len, 1, (bi, bj), (di, dj)))
                remaining -= 1
                break
            col ^= reduced[other]
        reduced.append(col)
        if remaining == 0:
            break
    return points + _unpaired_loops(edges, negative, paired, eps)


def _unpaired_loops(edges, negative, paired: set[int], eps: float) -> list[PersistencePoint]:
    return [
        PersistencePoint(length, eps, 1, (i, j), (), essential=True)
        for k, (length, i, j) in enumerate(edges)
        if not negative[k] and k not in paired
    ]


def rips_oracle(dist, eps_max: float | None = None) -> PersistenceDiagram:
    """Diagram from a full reduction over vertices, edges and triangles."""
    d = _validate_distances(dist)
    eps = default_eps_max(d) if eps_max is None else float(eps_max)
    if eps <= 0.0:
        raise DomainError(f"eps_max must be positive, got {eps}")
    n = d.shape[0]
    simplices = [(0.0, 0, (v,)) for v in range(n)]
    for i, j in combinations(range(n), 2):
        if d[i, j] <= eps:
            simplices.append((float(d[i, j]), 1, (i, j)))
    for i, j, k in combinations(range(n), 3):
        value = max(d[i, j], d[i, k], d[j, k])
        if value <= eps:
            simplices.append((float(value), 2, (i, j, k)))
    simplices.sort()
    position = {s[2]: idx for idx, s in enumerate(simplices)}
    cells = [
        FiltrationCell(
            dim, value,
            tuple(position[f] for f in combinations(verts, len(verts) - 1)) if dim else (),
            verts,
        )
        for value, dim, verts in simplices
    ]
    reduction = reduce_filtration(cells)
    points = []
    for b, k in reduction.pairs:
        birth, death = cells[b], cells[k]
        if birth.value != death.value:
            points.append(PersistencePoint(birth.value, death.value, birth.dim, birth.generator))
    for e in reduction.essential:
        cell = cells[e]
        if cell.dim <= 1:
            points.append(PersistencePoint(cell.value, eps, cell.dim, cell.generator, (), essential=True))
    return PersistenceDiagram(points)
