"""Finite-depth odometer filtrations and their spectral data.

For nested subgroups G_i = (n_1 ... n_i) Z of Z the coset algebras
C(Z/G_i) form an increasing filtration inside C(Z/G_k).  The GNS space of
the uniform state on the top level carries orthogonal projections Q_i onto
the successive new subspaces; the Dirac operator is any real combination
sum_i lambda_i Q_i.  Elements of level i commute with every Q_j for j > i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class AFFiltration:
    orders: tuple[int, ...]
    level_sizes: tuple[int, ...]      # |Z/G_i| = n_1 ... n_i, starting at 1
    projections: tuple[np.ndarray, ...]  # Q_0, ..., Q_k

    @property
    def depth(self) -> int:
        return len(self.orders)

    @property
    def dim(self) -> int:
        return self.level_sizes[-1]

    def level_projection(self, i: int) -> np.ndarray:
        """P_i: orthogonal projection onto the level-i subspace (block averages)."""
        q = self.level_sizes[i]
        total = self.dim
        block = total // q
        p = np.zeros((total, total), dtype=complex)
        for x in range(total):
            for y in range(total):
                if x % q == y % q:
                    p[x, y] = 1.0 / block
        return p

    def represent(self, i: int, values: Sequence[complex]) -> np.ndarray:
        """Multiplication operator of a level-i function (values on Z/G_i)."""
        q = self.level_sizes[i]
        values = np.asarray(values, dtype=complex)
        if values.shape != (q,):
            raise ValueError(f"level {i} functions take {q} values")
        return np.diag(values[np.arange(self.dim) % q])

    def dirac(self, eigenvalues: Sequence[float]) -> np.ndarray:
        if len(eigenvalues) != self.depth + 1:
            raise ValueError(f"need {self.depth + 1} eigenvalues (one per projection)")
        d = np.zeros((self.dim, self.dim), dtype=complex)
        for lam, q in zip(eigenvalues, self.projections):
            d += float(lam) * q
        return d


def af_filtration(orders: Sequence[int]) -> AFFiltration:
    """Build the uniform-state GNS projections for the odometer orders n_1..n_k."""
    orders = tuple(int(n) for n in orders)
    if not orders or any(n < 2 for n in orders):
        raise ValueError("odometer orders must all be >= 2")
    sizes = [1]
    for n in orders:
        sizes.append(sizes[-1] * n)
    total = sizes[-1]

    def level_proj(q: int) -> np.ndarray:
        block = total // q
        p = np.zeros((total, total), dtype=complex)
        for x in range(total):
            for y in range(total):
                if x % q == y % q:
                    p[x, y] = 1.0 / block
        return p

    projections = []
    prev = np.zeros((total, total), dtype=complex)
    for q in sizes:
        p = level_proj(q)
        projections.append(p - prev)
        prev = p
    return AFFiltration(orders, tuple(sizes), tuple(projections))
