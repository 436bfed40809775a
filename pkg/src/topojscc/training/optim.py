"""Adam with bias correction and the exponential weight-annealing schedule."""

import math
from dataclasses import dataclass, field

import numpy as np

from topojscc.errors import DomainError, GradientError


def anneal(lam: float, t: float, T: float) -> float:
    """lam * (1 - exp(-t / T))."""
    if T <= 0:
        raise DomainError(f"anneal time constant T must be positive, got {T}")
    if t < 0:
        raise DomainError(f"epoch index must be non-negative, got {t}")
    return lam * -math.expm1(-t / T)


@dataclass
class AdamState:
    step: int = 0
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)


def _check_finite(grads: dict[str, np.ndarray]) -> None:
    bad = {name: g for name, g in grads.items() if not np.all(np.isfinite(g))}
    if not bad:
        return
    details = ", ".join(
        f"{name} ({int(np.sum(~np.isfinite(g)))} of {g.size} entries)" for name, g in bad.items()
    )
    raise GradientError(f"non-finite gradient in {details}; aborting update")


def adam_step(params: dict[str, np.ndarray], grads: dict[str, np.ndarray], state: AdamState,
              lr: float, beta1: float = 0.9, beta2: float = 0.999,
              eps: float = 1e-8) -> tuple[dict[str, np.ndarray], AdamState]:
    """One Adam update; returns new parameter arrays and a new state.

    Raises:
        GradientError: a gradient contains NaN or inf (no update is applied).
    """
    _check_finite(grads)
    step = state.step + 1
    new_params, m, v = {}, {}, {}
    for name, theta in params.items():
        g = grads.get(name)
        if g is None:
            g = np.zeros_like(theta)
        m[name] = beta1 * state.m.get(name, np.zeros_like(theta)) + (1.0 - beta1) * g
        v[name] = beta2 * state.v.get(name, np.zeros_like(theta)) + (1.0 - beta2) * g * g
        m_hat = m[name] / (1.0 - beta1 ** step)
        v_hat = v[name] / (1.0 - beta2 ** step)
        new_params[name] = theta - lr * m_hat / (np.sqrt(v_hat) + eps)
    return new_params, AdamState(step, m, v)
