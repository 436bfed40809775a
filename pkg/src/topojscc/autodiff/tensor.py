"""Dense float64 tensor with an optional gradient slot."""

from dataclasses import dataclass

import numpy as np


@dataclass
class Tensor:
    """N-dimensional real array with an optional gradient of the same shape."""
    data: np.ndarray
    grad: np.ndarray | None = None

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float64)
        if self.grad is not None:
            self.grad = np.asarray(self.grad, dtype=np.float64)
            if self.grad.shape != self.data.shape:
                raise ValueError(
                    f"grad shape {self.grad.shape} does not match data shape {self.data.shape}"
                )

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def size(self) -> int:
        return self.data.size

    def zero_grad(self) -> None:
        self.grad = np.zeros_like(self.data)


def as_tensor(value) -> Tensor:
    """Wrap arrays and scalars, pass tensors through."""
    if isinstance(value, Tensor):
        return value
    return Tensor(np.asarray(value, dtype=np.float64))
