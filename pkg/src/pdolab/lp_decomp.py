"""Smooth dyadic partition of unity on frequency space and the symbol pieces it cuts out."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._fd import fd_partial, multi_indices
from .grid import GridSpec
from .report import BoundReport

__all__ = [
    "smooth_step",
    "phi0_profile",
    "LittlewoodPaleyFamily",
    "build_family",
    "check_derivative_bounds",
    "dyadic_piece",
    "check_piece_bounds",
]


def smooth_step(t) -> np.ndarray:
    """``e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)})`` on (0, 1), 0 below, 1 above."""
    t = np.asarray(t, dtype=float)
    out = np.where(t >= 1.0, 1.0, 0.0)
    inside = (t > 0.0) & (t < 1.0)
    if np.any(inside):
        ti = t[inside]
        with np.errstate(over="ignore"):  # 1/t overflows for subnormal t; exp(-inf) = 0 is exact
            a = np.exp(-1.0 / ti)
            b = np.exp(-1.0 / (1.0 - ti))
        out = out.astype(float)
        out[inside] = a / (a + b)
    return out


def phi0_profile(r) -> np.ndarray:
    """Radial profile: 1 on ``r <= 1``, ``1 - s(r - 1)`` on ``(1, 2)``, 0 from 2 on."""
    return 1.0 - smooth_step(np.asarray(r, dtype=float) - 1.0)


@dataclass(frozen=True)
class LittlewoodPaleyFamily:
    """``phi_0`` and ``phi_k(X) = phi_0(2^-k X) - phi_0(2^{1-k} X)`` on ``R^dim``.

    ``phi_k`` is supported in ``2^{k-1} <= |X| <= 2^{k+1}``.  ``k_max`` is the
    largest index whose inner edge the attached lattice still resolves;
    pieces with ``k <= k_max - 1`` are resolved in full.
    """

    dim: int
    k_max: int
    grid: GridSpec | None = None

    def phi(self, k: int, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        r = np.sqrt(np.sum(xi * xi, axis=-1))
        if k == 0:
            return phi0_profile(r)
        if k < 0:
            raise ValueError("dyadic index must be nonnegative")
        return phi0_profile(r * 2.0 ** -k) - phi0_profile(r * 2.0 ** (1 - k))

    def partial_sum(self, K: int, xi) -> np.ndarray:
        """``sum_{k=0}^{K} phi_k``, evaluated term by term."""
        return sum(self.phi(k, xi) for k in range(K + 1))

    def support(self, k: int) -> tuple[float, float]:
        return (0.0, 2.0) if k == 0 else (2.0 ** (k - 1), 2.0 ** (k + 1))

    def resolved_max(self) -> int:
        """Largest ``k`` whose whole support lies inside the Nyquist ball."""
        return self.k_max - 1


def build_family(grid: GridSpec, dim: int | None = None) -> LittlewoodPaleyFamily:
    """Partition of unity on ``R^{nN}`` sized to the frequency lattice of ``grid``."""
    k_max = int(math.floor(math.log2(grid.nyquist)))
    if k_max < 2:
        raise ValueError(f"grid too coarse for a dyadic decomposition (K_max = {k_max} < 2)")
    return LittlewoodPaleyFamily(grid.n * grid.N if dim is None else dim, k_max, grid)


def _annulus_samples(dim: int, n_radii: int = 257, n_dirs: int = 24, seed: int = 0) -> np.ndarray:
    """Sample points covering ``1/2 <= |X| <= 2`` along fixed directions."""
    rng = np.random.default_rng(seed)
    dirs = [np.eye(dim)[i] for i in range(dim)]
    if dim > 1:
        dirs.append(np.ones(dim) / math.sqrt(dim))
        g = rng.standard_normal((n_dirs, dim))
        dirs.extend(g / np.linalg.norm(g, axis=1, keepdims=True))
    radii = np.linspace(0.5, 2.0, n_radii)
    return np.concatenate([np.outer(radii, d) for d in dirs])


def check_derivative_bounds(
    fam: LittlewoodPaleyFamily,
    alpha_max: int,
    ks=range(1, 6),
    step: float = 1e-3,
    tol: float = 0.05,
) -> BoundReport:
    """Estimate ``sup_X 2^{k|alpha|} |d^alpha phi_k(X)|`` for each ``k`` and ``|alpha| <= alpha_max``.

    Derivatives use fourth-order central differences with step ``2^k * step``.
    The bound is accepted when, for each ``alpha``, the estimates over ``ks``
    agree within the relative tolerance ``tol``.
    """
    if alpha_max > 3:
        raise ValueError("alpha_max must be at most 3")
    ks = list(ks)
    base = _annulus_samples(fam.dim)
    report = BoundReport("lp_derivative_bounds", params={"alpha_max": alpha_max, "ks": ks, "dim": fam.dim})
    ok = True
    for alpha in multi_indices(fam.dim, alpha_max):
        order = sum(alpha)
        consts = []
        for k in ks:
            scale = 2.0 ** k
            pts = base * scale
            vals = fd_partial(lambda X: fam.phi(k, X), pts, alpha, step * scale) if order else fam.phi(k, pts)
            c = float(np.max(np.abs(vals))) * scale ** order
            consts.append(c)
            report.add(f"alpha={alpha},k={k}", k, c)
        consts = np.array(consts)
        finite = np.all(np.isfinite(consts))
        spread = float(consts.max() / consts.min() - 1.0) if consts.min() > 0 else (0.0 if consts.max() == 0 else np.inf)
        report.trend[str(alpha)] = float(consts.max())
        if order == 0 and consts.max() > 1.0 + 1e-12:
            ok = False
        if not finite or spread > tol:
            ok = False
    report.passed = ok
    report.criterion = f"k-spread of rescaled derivative sup <= {tol:.0%}"
    return report


def dyadic_piece(a, fam: LittlewoodPaleyFamily, k: int):
    """The symbol ``a(x, X) phi_k(X)``."""
    from .symbols import SymbolModel

    if k > fam.k_max:
        raise ValueError(f"dyadic index {k} exceeds K_max = {fam.k_max}")

    def func(x, xi, _a=a, _k=k):
        return _a(x, xi) * fam.phi(_k, xi)

    desc = None
    if a.descriptor is not None:
        desc = {"constructor": "dyadic_piece", "params": {"k": k}, "base": a.descriptor}
    return SymbolModel(
        a.n,
        a.N,
        func,
        x_dependent=a.x_dependent,
        x_smooth=a.x_smooth,
        claimed_class=a.claimed_class,
        decays=True,
        descriptor=desc,
        name=f"{a.name}*phi_{k}",
    )


def check_piece_bounds(a, fam: LittlewoodPaleyFamily, alpha_max: int, ks, step: float = 1e-3, x=None,
                       growth: float = 0.05) -> BoundReport:
    """Scan ``sup |d^alpha a_k| 2^{-k(m - rho|alpha|)}`` over ``k`` for the claimed ``(m, rho)``.

    An upper bound uniform in ``k`` shows as rescaled constants that stop
    growing: over the upper half of ``ks`` no consecutive step may exceed
    ``1 + growth``.  Low ``k`` is pre-asymptotic and only needs to be finite.
    """
    cls = a.claimed_class
    if cls is None:
        raise ValueError("symbol carries no claimed class")
    ks = list(ks)
    base = _annulus_samples(fam.dim)
    xpt = np.zeros(a.n) if x is None else np.asarray(x, dtype=float)
    report = BoundReport("lp_piece_bounds", params={"m": cls.m, "rho": cls.rho, "ks": ks})
    ok = True
    for alpha in multi_indices(fam.dim, alpha_max):
        order = sum(alpha)
        consts = []
        for k in ks:
            scale = 2.0 ** k
            f = lambda X: a(xpt, X) * fam.phi(k, X)  # noqa: E731
            pts = base * scale
            vals = fd_partial(f, pts, alpha, step * scale) if order else f(pts)
            c = float(np.max(np.abs(vals))) * 2.0 ** (-k * (cls.m - cls.rho * order))
            consts.append(c)
            report.add(f"alpha={alpha},k={k}", k, c)
        consts = np.array(consts)
        report.trend[str(alpha)] = float(consts.max())
        tail = consts[len(consts) // 2:]
        if not np.all(np.isfinite(consts)) or np.any(tail[1:] > (1.0 + growth) * tail[:-1]):
            ok = False
    report.passed = ok
    report.criterion = f"rescaled piece seminorms grow by at most {growth:.0%} per step in the upper half of k"
    return report
