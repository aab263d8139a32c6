"""Muckenhoupt weights on the lattice, discrete A_p constants and composite weights."""

from __future__ import annotations


from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .grid import INF, GridSpec
from .maximal import cube_sums
from .report import BoundReport

__all__ = [
    "WeightField",
    "unit_weight",
    "power_weight",
    "ap_constant",
    "ap_refinement",
    "product_weight",
    "nu_weight",
    "weight_from_descriptor",
]


@dataclass(frozen=True, eq=False)
class WeightField:
    """Nonnegative finite samples on the x-lattice of one block."""

    grid: GridSpec
    values: np.ndarray
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != self.grid.shape:
            raise ValueError(f"weight shape {v.shape} does not match grid shape {self.grid.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("weight samples must be finite")
        if np.any(v < 0):
            raise ValueError("weight samples must be nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def is_constant(self) -> bool:
        return bool(np.ptp(self.values) == 0.0)

    def __pow__(self, e: float) -> "WeightField":
        return WeightField(self.grid, self.values ** e, "custom")

    def descriptor(self) -> dict:
        return {"kind": self.kind, **self.params}


def unit_weight(grid: GridSpec) -> WeightField:
    return WeightField(grid, np.ones(grid.shape), "power", {"gamma": 0.0})


def power_weight(gamma: float, grid: GridSpec) -> WeightField:
    """``w(x) = |x|^gamma``; negative ``gamma`` needs a lattice avoiding the origin (``offset = 0.5``)."""
    r = np.linalg.norm(grid.points(grid.n), axis=-1).reshape(grid.shape)
    if gamma < 0 and np.any(r == 0.0):
        raise ValueError("negative power weight needs a lattice that avoids the origin (use offset=0.5)")
    vals = np.ones(grid.shape) if gamma == 0 else r ** gamma
    return WeightField(grid, vals, "power", {"gamma": float(gamma)})


def ap_constant(w: WeightField, p: float) -> float:
    """``sup_Q w_Q (w^{-1/(p-1)})_Q^{p-1}`` over all lattice cubes; ``p = 1`` uses ``w_Q / min_Q w``."""
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"A_p needs p >= 1, got {p}")
    v = np.asarray(w.values, dtype=float)
    if np.any(v <= 0):
        return INF
    axes = range(v.ndim)
    best = 0.0
    if p == 1.0:


        for r, sums, count in cube_sums(v, axes):
            if r is None:
                low = np.full(v.shape, v.min())
            else:
                low = ndimage.minimum_filter(v, size=2 * r + 1, mode="wrap")
            best = max(best, float(np.max(sums / count / low)))
        return best
    if p == INF:
        raise ValueError("A_inf is not supported; pass a finite p")
    dual = v ** (-1.0 / (p - 1.0))
    for (r, s1, c), (_, s2, _) in zip(cube_sums(v, axes), cube_sums(dual, axes)):
        best = max(best, float(np.max((s1 / c) * (s2 / c) ** (p - 1.0))))
    return best


def ap_refinement(gamma: float, p: float, n: int, L: float, sizes, offset: float = 0.5) -> BoundReport:
    """``[|x|^gamma]_{A_p}`` along a ladder of grid sizes at fixed ``L``."""
    report = BoundReport("ap_refinement", params={"gamma": gamma, "p": p, "n": n, "L": L, "sizes": list(sizes)})
    for G in sizes:
        grid = GridSpec(n, 1, L, G, offset)
        c = ap_constant(power_weight(gamma, grid), p)
        report.add(G, 0, c)
        report.trend[G] = c
    return report


def product_weight(ws, qs, r: float) -> WeightField:
    """``mu = prod_j w_j^{r/q_j}``; factors with ``q_j = inf`` must be constant and drop out."""
    if len(ws) != len(qs):
        raise ValueError("one exponent per weight is required")
    grid = ws[0].grid
    vals = np.ones(grid.shape)
    for w, q in zip(ws, qs):
        if w.grid != grid:
            raise ValueError("weights live on different grids")
        if q == INF:
            if not w.is_constant:
                raise ValueError("q_j = inf requires w_j to be constant")
            continue
        vals = vals * w.values ** (r / q)
    return WeightField(grid, vals, "product", {"qs": [float(q) for q in qs], "r": float(r)})


def nu_weight(mu: WeightField, w: WeightField, p: float, q: float, r: float) -> WeightField:
    """``nu = mu^{r/p} w^{r/q}`` (``1/inf = 0``)."""
    ep = 0.0 if p == INF else r / p
    eq = 0.0 if q == INF else r / q
    return WeightField(w.grid, mu.values ** ep * w.values ** eq, "product", {"p": p, "q": q, "r": r})


def weight_from_descriptor(desc: dict | None, grid: GridSpec) -> WeightField:
    """``None`` or ``{"kind": "power", "gamma": g}``."""
    if desc is None:
        return unit_weight(grid)
    if desc.get("kind") != "power" or set(desc) - {"kind", "gamma"}:
        raise ValueError(f"unsupported weight descriptor {desc!r}")
    g = float(desc.get("gamma", 0.0))
    return power_weight(g, grid)


