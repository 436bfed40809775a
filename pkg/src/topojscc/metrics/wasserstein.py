"""p-Wasserstein distance between persistence diagrams.

Points may be matched to each other (ground metric l-infinity) or to the
diagonal (cost |b - d| / 2). The optimal matching is an exact assignment on the
(n + m) x (n + m) augmented cost matrix.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from topojscc.errors import DomainError
from topojscc.ph.diagram import PersistenceDiagram

DIAGONAL = -1
BRUTE_FORCE_LIMIT = 8


@dataclass
class Matching:
    """Optimal bijection between two augmented diagrams."""
    pairs: list[tuple[int, int]]
    cost: float
    p: float
    n_left: int
    n_right: int
    per_pair: list[float] = field(default_factory=list)

    def reversed(self) -> "Matching":
        """The same matching seen from the right-hand diagram."""
        return Matching(
            [(j, i) for i, j in self.pairs], self.cost, self.p,
            self.n_right, self.n_left, list(self.per_pair),
        )


def _check_inputs(d1: PersistenceDiagram, d2: PersistenceDiagram, p: float) -> None:
    if p < 1:
        raise DomainError(f"Wasserstein order p must be >= 1, got {p}")
    dims = d1.dims() | d2.dims()
    if len(dims) > 1:
        raise DomainError(f"mixed-dimension diagrams: dims {sorted(dims)}")


def _diagonal_gap(pairs: np.ndarray) -> np.ndarray:
    return np.abs(pairs[:, 0] - pairs[:, 1]) / 2.0


def _linf(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.maximum(
        np.abs(a[:, None, 0] - b[None, :, 0]),
        np.abs(a[:, None, 1] - b[None, :, 1]),
    )


def _augmented_costs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Ground distances (not yet raised to p) of the augmented problem."""
    n, m = len(a), len(b)
    costs = np.zeros((n + m, n + m))
    costs[:n, :m] = _linf(a, b)
    costs[:n, m:] = np.inf
    costs[:n, m:][np.arange(n), np.arange(n)] = _diagonal_gap(a)
    costs[n:, :m] = np.inf
    costs[n:, :m][np.arange(m), np.arange(m)] = _diagonal_gap(b)
    return costs


def wasserstein(d1: PersistenceDiagram, d2: PersistenceDiagram, p: float = 2.0) -> Matching:
    """Exact p-Wasserstein matching between two diagrams of one homology dimension."""
    _check_inputs(d1, d2, p)
    a, b = d1.pairs(), d2.pairs()
    n, m = len(a), len(b)
    if n + m == 0:
        return Matching([], 0.0, p, 0, 0)

    ground = _augmented_costs(a, b)
    rows, cols = linear_sum_assignment(ground ** p)
    pairs, per_pair = [], []
    total = 0.0
    for r, c in zip(rows, cols):
        if r >= n and c >= m:
            continue
        left = int(r) if r < n else DIAGONAL
        right = int(c) if c < m else DIAGONAL
        term = float(ground[r, c]) ** p
        pairs.append((left, right))
        per_pair.append(term)
        total += term
    return Matching(pairs, total ** (1.0 / p), p, n, m, per_pair)


def wasserstein_grad(matching: Matching, d1: PersistenceDiagram,
                     d2: PersistenceDiagram) -> np.ndarray:
    """Gradient of the matching cost w.r.t. (birth, death) of every point of ``d2``.

    Envelope gradient at the fixed optimal matching. Ties in the l-infinity max
    go to the birth coordinate. Use ``matching.reversed()`` with swapped
    diagrams for the gradient on ``d1``.
    """
    if matching.n_left != len(d1) or matching.n_right != len(d2):
        raise DomainError(
            f"stale matching: built for {matching.n_left}/{matching.n_right} points, "
            f"diagrams have {len(d1)}/{len(d2)}"
        )
    grad = np.zeros((len(d2), 2))
    if matching.cost == 0.0:
        return grad
    p = matching.p
    a, b = d1.pairs(), d2.pairs()
    # d cost / d term for cost = (sum of terms)^(1/p)
    outer = matching.cost ** (1.0 - p) / p
    for left, right in matching.pairs:
        if right == DIAGONAL:
            continue
        if left == DIAGONAL:
            diff = b[right, 0] - b[right, 1]
            gap = abs(diff) / 2.0
            slope = p * gap ** (p - 1) * np.sign(diff) / 2.0 if gap > 0 else 0.0
            grad[right] += outer * np.array([slope, -slope])
            continue
        db = b[right, 0] - a[left, 0]
        dd = b[right, 1] - a[left, 1]
        if abs(db) >= abs(dd):
            if db != 0.0:
                grad[right, 0] += outer * p * abs(db) ** (p - 1) * np.sign(db)
        else:
            grad[right, 1] += outer * p * abs(dd) ** (p - 1) * np.sign(dd)
    return grad


def brute_force_wasserstein(d1: PersistenceDiagram, d2: PersistenceDiagram,
                            p: float = 2.0) -> float:
    """Minimum over all augmented bijections by exhaustive enumeration (test oracle)."""
    _check_inputs(d1, d2, p)
    if len(d1) + len(d2) > BRUTE_FORCE_LIMIT:
        raise DomainError(
            f"brute force limited to {BRUTE_FORCE_LIMIT} points in total, "
            f"got {len(d1) + len(d2)}"
        )
    a, b = d1.pairs(), d2.pairs()
    ground = _linf(a, b) ** p if len(a) and len(b) else np.zeros((len(a), len(b)))
    diag_a = _diagonal_gap(a) ** p
    diag_b = _diagonal_gap(b) ** p

    def best(i: int, used: frozenset[int]) -> float:
        if i == len(a):
            return float(sum(diag_b[j] for j in range(len(b)) if j not in used))
        options = [diag_a[i] + best(i + 1, used)]
        for j in range(len(b)):
            if j not in used:
                options.append(ground[i, j] + best(i + 1, used | {j}))
        return float(min(options))

    return best(0, frozenset()) ** (1.0 / p)


def bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Bottleneck distance (stability checks only; not used as a loss)."""
    _check_inputs(d1, d2, 1.0)
    a, b = d1.pairs(), d2.pairs()
    n, m = len(a), len(b)
    if n + m == 0:
        return 0.0
    ground = _augmented_costs(a, b)
    candidates = np.unique(ground[np.isfinite(ground)])

    def feasible(t: float) -> bool:
        graph = csr_matrix((ground <= t).astype(np.int8))
        match = maximum_bipartite_matching(graph, perm_type="column")
        return bool(np.all(match >= 0))

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def diagram_distances(d1: PersistenceDiagram, d2: PersistenceDiagram, p: float = 2.0,
                      dims: tuple[int, ...] = (0, 1),
                      include_essential: bool = True) -> dict[int, float]:
    """Per-dimension Wasserstein distances between two multi-dimension diagrams."""
    if not include_essential:
        d1, d2 = d1.finite(), d2.finite()
    return {m: wasserstein(d1.of_dim(m), d2.of_dim(m), p).cost for m in dims}
