"""Disjoint sets whose root is always the elder member of its component."""

import numpy as np


class ElderUnionFind:
    """Union-find where ``merge(elder, younger)`` keeps the elder root.

    Because the surviving root is always the elder one, a root identifies the
    cell that gave birth to its component.
    """

    def __init__(self, size: int):
        self.parent = np.arange(size)

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return int(x)

    def merge(self, elder_root: int, younger_root: int) -> None:
        self.parent[younger_root] = elder_root
