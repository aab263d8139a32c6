"""Discrete maximal functions over lattice cubes, the convolution majorant and sigma weights.

A discrete cube of half-width ``r`` centred at a lattice point holds the
``(2r + 1)^n`` points within ``r`` steps in every axis.  Radii run from 0 up
to the largest cube that does not wrap; the whole torus is added as the last
competitor.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

import numpy as np
from scipy import integrate, ndimage

from .grid import Field, MultiField
from .report import BoundReport

__all__ = [
    "cube_sums",
    "maximal_fn",
    "maximal_values",
    "iterated_maximal",
    "convolution_majorant_check",
    "sigma_weight",
    "sigma_integral_check",
]


def _box1d(v: np.ndarray, axis: int, r: int) -> np.ndarray:
    out = v.copy()
    for s in range(1, r + 1):
        out += np.roll(v, s, axis=axis) + np.roll(v, -s, axis=axis)
    return out


def cube_sums(values: np.ndarray, axes: Sequence[int]) -> Iterator[tuple[int | None, np.ndarray, int]]:
    """Yield ``(r, sums, count)`` for every non-wrapping cube, then ``(None, total, count)``.

    ``sums[c]`` is the sum of ``values`` over the cube centred at ``c``
    spanning ``axes``.  Sums are accumulated from nonnegative terms without
    subtraction, so constant inputs give exact averages.
    """
    v = np.asarray(values, dtype=float)
    axes = list(axes)
    G = v.shape[axes[0]]
    first = axes[0]
    inc = v.copy()
    for r in range(0, (G - 1) // 2 + 1):
        if r > 0:
            inc = inc + np.roll(v, r, axis=first) + np.roll(v, -r, axis=first)
        s = inc
        for ax in axes[1:]:
            s = _box1d(s, ax, r)
        yield r, s, (2 * r + 1) ** len(axes)
    total = v.sum(axis=tuple(axes), keepdims=True)
    yield None, np.broadcast_to(total, v.shape), G ** len(axes)


def _max_over_centres(avg: np.ndarray, axes: Sequence[int], r: int | None) -> np.ndarray:
    """``max`` of ``avg`` over cube centres whose cube of half-width ``r`` contains each point."""
    if r is None or r == 0:
        return avg
    size = [1] * avg.ndim
    for ax in axes:
        size[ax] = 2 * r + 1
    return ndimage.maximum_filter(avg, size=size, mode="wrap")


def maximal_values(values: np.ndarray, p: float, axes: Sequence[int] | None = None) -> np.ndarray:
    """``M_p`` of a real array over cubes spanning ``axes`` (all axes by default)."""
    p = float(p)
    if not p >= 1.0 or not math.isfinite(p):
        raise ValueError(f"maximal exponent must lie in [1, inf), got {p}")
    v = np.abs(np.asarray(values)) ** p
    axes = list(range(v.ndim)) if axes is None else list(axes)
    best = np.zeros(v.shape)
    for r, sums, count in cube_sums(v, axes):
        np.maximum(best, _max_over_centres(sums / count, axes, r), out=best)
    return best ** (1.0 / p)


def maximal_fn(u: Field, p: float = 1.0) -> Field:
    """``M_p(u)(x) = sup_{Q contains x} (|Q|^{-1} sum_Q |u|^p h^n)^(1/p)`` over lattice cubes."""
    return Field(u.grid, maximal_values(u.values, p))


def iterated_maximal(u: MultiField, exponents: Sequence[float]) -> MultiField:
    """``M^{(N)}_{p_N}( ... M^{(1)}_{p_1}(u))``, block ``j`` acting on axes ``j n .. (j+1) n - 1``."""
    grid = u.grid
    if len(exponents) != grid.N:
        raise ValueError(f"need {grid.N} exponents, got {len(exponents)}")
    v = np.abs(u.values)
    for j, p in enumerate(exponents):
        v = maximal_values(v, p, range(j * grid.n, (j + 1) * grid.n))
    return MultiField(grid, v)


def _radial_levels(phi: Field, rtol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Validate that ``phi`` is nonnegative, radial and non-increasing; return radii and values per level."""
    grid = phi.grid
    vals = phi.values
    if np.max(np.abs(vals.imag)) > 0:
        raise ValueError("profile must be real")
    vals = vals.real
    if np.any(vals < 0):
        raise ValueError("profile must be nonnegative")
    d = grid.displacements()
    mesh = np.meshgrid(*([d] * grid.n), indexing="ij")
    rad = np.sqrt(sum(m * m for m in mesh))
    key = np.round(rad / grid.h, 9)
    levels = np.unique(key)
    per = np.empty(len(levels))
    scale = max(float(vals.max()), 1e-300)
    for i, k in enumerate(levels):
        sel = vals[key == k]
        if np.ptp(sel) > rtol * scale:
            raise ValueError("profile is not radial")
        per[i] = sel[0]
    if np.any(np.diff(per) > rtol * scale):
        raise ValueError("profile is not non-increasing in the radius")
    return levels, per


def convolution_majorant_check(phi: Field, u: Field, slack: float = 1e-10) -> BoundReport:
    """Check ``h^n sum_y phi(y) u(x - y) <= C_n ||phi||_1 M(u)(x)`` at every lattice point.

    ``phi`` is sampled on centred displacements (see
    :meth:`GridSpec.displacements`).  In one dimension the level sets of a
    radial profile are symmetric intervals and ``C_1 = 1``.  For ``n >= 2``
    the level sets are lattice balls; ``C_n`` is the largest ratio of the
    enclosing cube count to the ball count over the levels that occur.
    """
    grid = u.grid
    levels, _ = _radial_levels(phi)
    n = grid.n
    uabs = np.abs(u.values)
    kern = np.fft.ifftshift(phi.values.real)
    conv = grid.h ** n * np.real(np.fft.ifftn(np.fft.fftn(uabs) * np.fft.fftn(kern)))
    c_n = 1.0
    if n > 1:
        d = np.arange(grid.G) - grid.G // 2
        mesh = np.meshgrid(*([d] * n), indexing="ij")
        rad = np.sqrt(sum(m * m.astype(float) for m in mesh))
        for lv in levels:
            ball = int(np.sum(np.round(rad, 9) <= lv))
            half = min(int(math.floor(lv + 1e-9)), grid.G // 2)
            cube = min(2 * half + 1, grid.G) ** n
            c_n = max(c_n, cube / ball)
    l1 = grid.h ** n * float(np.sum(phi.values.real))
    rhs = c_n * l1 * maximal_values(uabs, 1.0)
    excess = conv - rhs * (1.0 + slack) - slack
    report = BoundReport("convolution_majorant", params={"G": grid.G, "n": n, "c_n": c_n})
    ratio = float(np.max(conv / np.maximum(rhs, 1e-300))) if np.any(rhs > 0) else 0.0
    report.add(grid.G, 0, ratio, excluded=int(np.sum(excess > 0)))
    report.passed = bool(np.all(excess <= 0))
    report.threshold = 1.0
    report.criterion = "convolution <= C_n ||phi||_1 M u at every lattice point"
    return report


def sigma_weight(k: int, rho: float, pprime: float, s: float, y, n: int = 1) -> np.ndarray:
    """``sigma_k(y)``: ``2^{-k rho n/p'}`` on ``|y| <= 2^{-k rho}``, ``2^{-k rho (n/p' - s)} |y|^s`` outside.

    ``y`` is a radius or an array of points with trailing axis ``n``.
    """
    if s <= n / pprime:
        raise ValueError(f"s = {s} must exceed n/p' = {n / pprime} for sigma_k^(-p') to be integrable")
    y = np.asarray(y, dtype=float)
    r = np.abs(y) if (y.ndim == 0 or n == 1 and y.shape[-1:] != (1,)) else np.linalg.norm(y, axis=-1)
    R = 2.0 ** (-k * rho)
    inner = 2.0 ** (-k * rho * n / pprime)
    outer = 2.0 ** (-k * rho * (n / pprime - s)) * np.maximum(r, R) ** s
    return np.where(r <= R, inner, outer)


def sigma_integral_check(ks, rho: float = 1.0, pprime: float = 2.0, s: float = 1.0, n: int = 1,
                         tol: float = 0.05) -> BoundReport:
    """Quadrature of ``int_{R^n} sigma_k(y)^{-p'} dy`` over ``ks``; pass when the values agree within ``tol``."""
    if s <= n / pprime:
        raise ValueError(f"s = {s} must exceed n/p' = {n / pprime} for sigma_k^(-p') to be integrable")
    sphere = 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)
    report = BoundReport("sigma_integral", params={"rho": rho, "pprime": pprime, "s": s, "n": n})
    vals = []
    for k in ks:
        R = 2.0 ** (-k * rho)

        def f(t, _k=k):
            return float(sigma_weight(_k, rho, pprime, s, t, n)) ** (-pprime) * t ** (n - 1)

        inner, _ = integrate.quad(f, 0.0, R, epsabs=0.0, epsrel=1e-12)
        outer, _ = integrate.quad(f, R, np.inf, epsabs=0.0, epsrel=1e-12)
        val = sphere * (inner + outer)
        vals.append(val)
        report.add(k, 0, val)
        report.trend[k] = val
    vals = np.array(vals)
    report.passed = bool(np.all(np.isfinite(vals)) and vals.max() <= (1.0 + tol) * vals.min())
    report.threshold = float(vals.max() / vals.min())
    report.criterion = f"integral constant in k within {tol:.0%}"
    return report
