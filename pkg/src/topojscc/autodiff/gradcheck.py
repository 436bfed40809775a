"""Central finite-difference checks."""

from typing import Callable

import numpy as np

DEFAULT_STEP = 1e-5


def numerical_gradient(fn: Callable[[np.ndarray], float], x: np.ndarray,
                       eps: float = DEFAULT_STEP) -> np.ndarray:
    """Central differences of a scalar function, one coordinate at a time."""
    x = np.array(x, dtype=np.float64)
    grad = np.zeros_like(x)
    flat = x.reshape(-1)
    out = grad.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + eps
        plus = fn(x)
        flat[i] = orig - eps
        minus = fn(x)
        flat[i] = orig
        out[i] = (plus - minus) / (2.0 * eps)
    return grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """||a - n|| / max(||a|| + ||n||, tiny); zero when both vanish."""
    a = np.asarray(analytic, dtype=np.float64).ravel()
    n = np.asarray(numeric, dtype=np.float64).ravel()
    denom = np.linalg.norm(a) + np.linalg.norm(n)
    if denom < 1e-300:
        return 0.0
    return float(np.linalg.norm(a - n) / denom)


def gradcheck(fn: Callable[[np.ndarray], float], x: np.ndarray, analytic: np.ndarray,
              eps: float = DEFAULT_STEP) -> float:
    """Relative error between ``analytic`` and the central-difference gradient of ``fn`` at ``x``."""
    return relative_error(analytic, numerical_gradient(fn, x, eps))
