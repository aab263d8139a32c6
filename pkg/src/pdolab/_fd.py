"""Fourth-order central finite differences for mixed partial derivatives."""

from __future__ import annotations

import itertools
from typing import Callable, Iterator

import numpy as np

# offset -> weight, error O(step^4)
STENCILS = {
    0: ((0,), (1.0,)),
    1: ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12)),
    2: ((-2, -1, 0, 1, 2), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12)),
    3: ((-3, -2, -1, 1, 2, 3), (1 / 8, -1.0, 13 / 8, -13 / 8, 1.0, -1 / 8)),
}


def multi_indices(dim: int, max_order: int) -> Iterator[tuple[int, ...]]:
    """All multi-indices of length ``dim`` with ``|alpha| <= max_order``, graded."""
    for order in range(max_order + 1):
        for alpha in itertools.product(range(order + 1), repeat=dim):
            if sum(alpha) == order:
                yield alpha


def fd_partial(func: Callable[[np.ndarray], np.ndarray], pts: np.ndarray, alpha, step) -> np.ndarray:
    """``d^alpha func`` at ``pts`` (shape ``(..., dim)``).

    ``step`` is a scalar or an array broadcastable against ``pts[..., 0]``.
    """
    pts = np.asarray(pts, dtype=float)
    alpha = tuple(int(a) for a in alpha)
    if any(a > 3 for a in alpha):
        raise ValueError("finite differences implemented up to third order per axis")
    step = np.asarray(step, dtype=float)
    per_axis = [STENCILS[a] for a in alpha]
    acc = 0.0
    for combo in itertools.product(*[list(zip(*s)) for s in per_axis]):
        weight = 1.0
        shift = np.zeros(pts.shape[-1])
        for ax, (off, wgt) in enumerate(combo):
            weight *= wgt
            shift[ax] = off
        if weight == 0.0:
            continue
        acc = acc + weight * func(pts + step[..., None] * shift)
    return acc / step ** sum(alpha)
