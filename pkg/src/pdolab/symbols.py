"""Symbol models, canonical witnesses for each symbol class, and seminorm scans.

A symbol is a function ``a(x, X)`` with ``x`` in ``R^n`` and ``X`` in
``R^{nN}``.  Evaluators take arrays ``x`` of shape ``(..., n)`` and ``X`` of
shape ``(..., nN)`` and broadcast over the leading axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._fd import fd_partial, multi_indices
from .grid import GridSpec, lp_norm
from .report import BoundReport

__all__ = [
    "SymbolClass",
    "SymbolModel",
    "SeminormEstimate",
    "bracket",
    "oscillatory_symbol",
    "rough_x_symbol",
    "compact_rho0_symbol",
    "separable_bilinear_symbol",
    "x_modulated_symbol",
    "x_envelope_symbol",
    "gaussian_profile",
    "ssstar_pairs",
    "translation_symbol",
    "plane_wave_symbol",
    "gaussian_symbol",
    "constant_symbol",
    "truncated_symbol",
    "tabulated_symbol",
    "random_sign_profile",
    "sign_sin_profile",
    "estimate_seminorms",
    "hypo_functional",
    "symbol_from_descriptor",
    "parse_symbol_spec",
]


def bracket(xi) -> np.ndarray:
    """``<X> = (1 + |X|^2)^(1/2)`` over the last axis."""
    xi = np.asarray(xi, dtype=float)
    return np.sqrt(1.0 + np.sum(xi * xi, axis=-1))


@dataclass(frozen=True)
class SymbolClass:
    """Claimed class membership.

    ``kind`` is ``"LinfS"`` (bounded measurable in x), ``"LpMuS"`` (x-norm in
    ``L^p_mu``) or ``"Hormander"`` (``S^m_{rho,delta}``).
    """

    kind: str
    m: float
    rho: float
    delta: float = 0.0
    p: float | None = None
    mu: str | None = None

    def __post_init__(self):
        if self.kind not in ("LinfS", "LpMuS", "Hormander"):
            raise ValueError(f"unknown symbol class {self.kind!r}")
        if self.rho > 1:
            raise ValueError("rho must not exceed 1")

    def with_rho(self, rho: float) -> "SymbolClass":
        return SymbolClass(self.kind, self.m, rho, self.delta, self.p, self.mu)


@dataclass(frozen=True, eq=False)
class SymbolModel:
    """Evaluable symbol with optional analytic frequency derivatives.

    ``derivative(x, X, alpha)`` returns ``d^alpha_X a`` for ``|alpha| <=
    deriv_order``.  ``decays`` marks symbols of rapid decay in ``X``, for
    which the untruncated kernel is meaningful on the grid band.
    """

    n: int
    N: int
    func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    x_dependent: bool = True
    x_smooth: bool = True
    derivative: Callable | None = None
    deriv_order: int = 0
    claimed_class: SymbolClass | None = None
    decays: bool = False
    descriptor: dict | None = None
    name: str = "symbol"

    @property
    def dim(self) -> int:
        return self.n * self.N

    def __call__(self, x, xi) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        if x.shape[-1:] != (self.n,) or xi.shape[-1:] != (self.dim,):
            raise ValueError(f"symbol of arity ({self.n}, {self.N}) got x{x.shape}, X{xi.shape}")
        out = self.func(x, xi)
        shape = np.broadcast_shapes(x.shape[:-1], xi.shape[:-1])
        return np.broadcast_to(np.asarray(out, dtype=complex), shape)

    def d_xi(self, x, xi, alpha) -> np.ndarray:
        """Analytic ``d^alpha_X a``; raises if not declared to that order."""
        if self.derivative is None or sum(alpha) > self.deriv_order:
            raise ValueError(f"no analytic derivative of order {sum(alpha)} declared")
        if sum(alpha) == 0:
            return self(x, xi)
        return np.asarray(self.derivative(np.asarray(x, float), np.asarray(xi, float), tuple(alpha)), dtype=complex)

    def with_class(self, cls: SymbolClass) -> "SymbolModel":
        return SymbolModel(
            self.n, self.N, self.func, self.x_dependent, self.x_smooth, self.derivative,
            self.deriv_order, cls, self.decays, self.descriptor, self.name,
        )


def _desc(constructor: str, seed=None, **params) -> dict:
    d = {"constructor": constructor, "params": params}
    if seed is not None:
        d["seed"] = seed
    return d


def oscillatory_symbol(m: float, rho: float, arity=(1, 1)) -> SymbolModel:
    """``<X>^m exp(i <X>^{1-rho})``, x-independent, in ``S^m_{rho,0}``."""
    n, N = arity
    if not rho > 0:
        raise ValueError("oscillatory witness needs rho > 0")
    if rho > 1:
        raise ValueError("rho must not exceed 1")
    if m > 0:
        raise ValueError("oscillatory witness needs m <= 0")

    def func(x, xi):
        b = bracket(xi)
        return b ** m * np.exp(1j * b ** (1.0 - rho))

    def deriv(x, xi, alpha):
        if sum(alpha) != 1:
            raise ValueError("only first derivatives are declared")
        j = alpha.index(1)
        b = bracket(xi)
        a = b ** m * np.exp(1j * b ** (1.0 - rho))
        return a * xi[..., j] * (m * b ** -2.0 + 1j * (1.0 - rho) * b ** (-1.0 - rho))

    return SymbolModel(
        n, N, func, x_dependent=False, derivative=deriv, deriv_order=1,
        claimed_class=SymbolClass("Hormander", m, rho, 0.0),
        descriptor=_desc("oscillatory", m=m, rho=rho, n=n, N=N),
        name=f"osc(m={m},rho={rho})",
    )


def random_sign_profile(grid: GridSpec, seed: int) -> np.ndarray:
    """Independent +-1 per lattice cell."""
    rng = np.random.default_rng(seed)
    return rng.choice(np.array([-1.0, 1.0]), size=grid.shape)


def sign_sin_profile(grid: GridSpec) -> np.ndarray:
    """``sign(sin x_1)`` sampled on the lattice (product over axes for n > 1)."""
    out = np.ones(grid.shape)
    c = np.sign(np.sin(grid.coords()))
    c[c == 0] = 1.0
    for ax in range(grid.n):
        shape = [1] * grid.n
        shape[ax] = grid.G
        out = out * c.reshape(shape)
    return out


def rough_x_symbol(m: float, rho: float, b, arity=(1, 1), grid: GridSpec | None = None,
                   profile: str = "custom", seed: int | None = None) -> SymbolModel:
    """``<X>^m exp(i b(x) <X>^{1-rho})`` with real ``b`` piecewise constant on lattice cells.

    ``b`` is an array on the x-lattice of ``grid``; a sign profile flips the
    direction of the oscillation from cell to cell.  It may be ``None`` for
    ``b == 1``, in which case the oscillatory witness is returned with the
    ``LinfS`` class.
    """
    base = oscillatory_symbol(m, rho, arity)
    cls = SymbolClass("LinfS", m, rho)
    if b is None:
        return base.with_class(cls)
    if grid is None:
        raise ValueError("a sampled profile needs its grid")
    b = np.asarray(getattr(b, "values", b))
    if np.iscomplexobj(b):
        if np.max(np.abs(b.imag)) > 0:
            raise ValueError("profile must be real")
        b = b.real
    if not np.all(np.isfinite(b)):
        raise ValueError("profile must be bounded")
    b = b.astype(float).reshape(grid.shape)
    bmax = float(np.max(np.abs(b)))

    def lookup(x):
        idx = grid.index_of(x)
        return b[tuple(idx[..., i] for i in range(grid.n))]

    def func(x, xi):
        br = bracket(xi)
        return br ** m * np.exp(1j * lookup(x) * br ** (1.0 - rho))

    def deriv(x, xi, alpha):
        if sum(alpha) != 1:
            raise ValueError("only first derivatives are declared")
        j = alpha.index(1)
        bx = lookup(x)
        br = bracket(xi)
        a = br ** m * np.exp(1j * bx * br ** (1.0 - rho))
        return a * xi[..., j] * (m * br ** -2.0 + 1j * bx * (1.0 - rho) * br ** (-1.0 - rho))

    return SymbolModel(
        arity[0], arity[1], func, x_dependent=True, x_smooth=False, derivative=deriv, deriv_order=1,
        claimed_class=cls,
        descriptor=_desc("rough_x", seed=seed, m=m, rho=rho, n=arity[0], N=arity[1], profile=profile,
                         sup_b=bmax),
        name=f"rough(m={m},rho={rho},{profile})",
    )


def compact_rho0_symbol(m: float, radius: float = 4.0, arity=(1, 1)) -> SymbolModel:
    """``phi_0(X/R) <X>^m exp(i <X>)``: a compactly supported witness for ``rho = 0``."""
    from .lp_decomp import phi0_profile

    n, N = arity
    if not m < -n * N:
        raise ValueError("the rho = 0 kernel estimate needs m < -nN")

    def func(x, xi):
        b = bracket(xi)
        r = np.sqrt(np.sum(xi * xi, axis=-1))
        return phi0_profile(r / radius) * b ** m * np.exp(1j * b)

    return SymbolModel(
        n, N, func, x_dependent=False, claimed_class=SymbolClass("LinfS", m, 0.0), decays=True,
        descriptor=_desc("compact_rho0", m=m, radius=radius, n=n, N=N),
        name=f"compact_rho0(m={m})",
    )


def separable_bilinear_symbol(g: Callable, h: Callable, n: int = 1, *, decays: bool = True,
                              descriptor: dict | None = None) -> SymbolModel:
    """``a(xi, eta) = g(xi + eta) h(eta)``; ``g``, ``h`` act on arrays ``(..., n)``."""

    def func(x, xi):
        return g(xi[..., :n] + xi[..., n:]) * h(xi[..., n:])

    return SymbolModel(
        n, 2, func, x_dependent=False, claimed_class=SymbolClass("Hormander", 0.0, 1.0, 0.0),
        decays=decays, descriptor=descriptor, name="separable",
    )


def gaussian_profile(width: float = 1.0, center: float = 0.0) -> Callable:
    def prof(v):
        v = np.asarray(v, dtype=float)
        return np.exp(-np.sum((v - center) ** 2, axis=-1) / (2.0 * width ** 2))

    return prof


def x_modulated_symbol(base: SymbolModel, amplitude: float = 1.0) -> SymbolModel:
    """``exp(i A sin x_1) base(x, X)``: smooth bounded x-dependence (delta = 0)."""

    def func(x, xi):
        return np.exp(1j * amplitude * np.sin(x[..., 0])) * base.func(x, xi)

    def deriv(x, xi, alpha):
        return np.exp(1j * amplitude * np.sin(x[..., 0])) * base.derivative(x, xi, alpha)

    desc = None
    if base.descriptor is not None:
        desc = {"constructor": "x_modulated", "params": {"amplitude": amplitude}, "base": base.descriptor}
    return SymbolModel(
        base.n, base.N, func, x_dependent=True, x_smooth=True,
        derivative=deriv if base.derivative is not None else None, deriv_order=base.deriv_order, claimed_class=base.claimed_class, decays=base.decays,
        descriptor=desc, name=f"e^(i sin x)*{base.name}",
    )


def x_envelope_symbol(base: SymbolModel, width: float = 1.0, p: float = 2.0) -> SymbolModel:
    """``exp(-|x|^2 / (2 w^2)) base(X)``: an ``L^p S^m_rho`` member, integrable in x."""

    def env(x):
        return np.exp(-np.sum(x * x, axis=-1) / (2.0 * width ** 2))

    def func(x, xi):
        return env(x) * base.func(x, xi)

    def deriv(x, xi, alpha):
        return env(x) * base.derivative(x, xi, alpha)

    cls = None
    if base.claimed_class is not None:
        c = base.claimed_class
        cls = SymbolClass("LpMuS", c.m, c.rho, 0.0, p=p, mu="unit")
    desc = None
    if base.descriptor is not None:
        desc = {"constructor": "x_envelope", "params": {"width": width, "p": p}, "base": base.descriptor}
    return SymbolModel(
        base.n, base.N, func, x_dependent=True, x_smooth=True,
        derivative=deriv if base.derivative is not None else None, deriv_order=base.deriv_order, claimed_class=cls, decays=base.decays,
        descriptor=desc, name=f"env*{base.name}",
    )


def translation_symbol(v, arity=(1, 2)) -> SymbolModel:
    """``exp(i (xi_1 + ... + xi_N) . v)``: shifts every input by ``v``."""
    n, N = arity
    v = np.asarray(v, dtype=float).reshape(n)

    def func(x, xi):
        s = sum(xi[..., j * n:(j + 1) * n] for j in range(N))
        return np.exp(1j * s @ v)

    return SymbolModel(
        n, N, func, x_dependent=False, claimed_class=SymbolClass("Hormander", 0.0, 0.0, 0.0),
        descriptor=_desc("translation", v=v.tolist(), n=n, N=N), name="translation",
    )


def plane_wave_symbol(n: int = 1) -> SymbolModel:
    """``exp(i x . xi)``, linear; its frequency derivatives grow like ``|x|``."""

    def func(x, xi):
        return np.exp(1j * np.sum(x * xi, axis=-1))

    def deriv(x, xi, alpha):
        x, xi = np.broadcast_arrays(x, xi)
        out = np.exp(1j * np.sum(x * xi, axis=-1))
        for j, a in enumerate(alpha):
            out = out * (1j * x[..., j]) ** a
        return out

    return SymbolModel(
        n, 1, func, x_dependent=True, x_smooth=True, derivative=deriv, deriv_order=3,
        claimed_class=SymbolClass("Hormander", 0.0, 1.0, 0.0),
        descriptor=_desc("plane_wave", n=n), name="exp(ix.xi)",
    )


def gaussian_symbol(arity=(1, 1), scale: float = 1.0) -> SymbolModel:
    """``exp(-|X|^2 / scale^2)``."""
    n, N = arity

    def func(x, xi):
        return np.exp(-np.sum(xi * xi, axis=-1) / scale ** 2)

    def deriv(x, xi, alpha):
        if sum(alpha) != 1:
            raise ValueError("only first derivatives are declared")
        j = alpha.index(1)
        return -2.0 * xi[..., j] / scale ** 2 * func(x, xi)

    return SymbolModel(
        n, N, func, x_dependent=False, derivative=deriv, deriv_order=1,
        claimed_class=SymbolClass("Hormander", -50.0, 1.0, 0.0), decays=True,
        descriptor=_desc("gaussian", scale=scale, n=n, N=N), name="gaussian",
    )


def constant_symbol(c: complex = 1.0, arity=(1, 1)) -> SymbolModel:
    n, N = arity

    def func(x, xi):
        return np.full(np.broadcast_shapes(x.shape[:-1], xi.shape[:-1]), c, dtype=complex)

    def deriv(x, xi, alpha):
        return np.zeros(np.broadcast_shapes(x.shape[:-1], xi.shape[:-1]), dtype=complex)

    return SymbolModel(
        n, N, func, x_dependent=False, derivative=deriv, deriv_order=3,
        claimed_class=SymbolClass("Hormander", 0.0, 1.0, 0.0),
        descriptor=_desc("constant", c=[float(np.real(c)), float(np.imag(c))], n=n, N=N), name=f"const({c})",
    )


def truncated_symbol(base: SymbolModel, K: int) -> SymbolModel:
    """``base * sum_{k<=K} phi_k = base * phi_0(2^-K X)``: the dyadic truncation."""
    from .lp_decomp import phi0_profile

    def func(x, xi):
        r = np.sqrt(np.sum(xi * xi, axis=-1))
        return base.func(x, xi) * phi0_profile(r * 2.0 ** -K)

    desc = None
    if base.descriptor is not None:
        desc = {"constructor": "truncated", "params": {"K": K}, "base": base.descriptor}
    return SymbolModel(
        base.n, base.N, func, x_dependent=base.x_dependent, x_smooth=base.x_smooth,
        claimed_class=base.claimed_class, decays=True, descriptor=desc, name=f"{base.name}|K={K}",
    )


def tabulated_symbol(values: np.ndarray, grid: GridSpec, N: int, x_dependent: bool = False,
                     name: str = "tabulated") -> SymbolModel:
    """Symbol given by its samples on the lattice (nearest-sample lookup).

    ``values`` has shape ``(G,)*(nN)`` (frequency axes in FFT order), or
    ``(G,)*n + (G,)*(nN)`` when ``x_dependent``.
    """
    n = grid.n
    values = np.asarray(values, dtype=complex)
    want = (grid.G,) * (n * N + (n if x_dependent else 0))
    if values.shape != want:
        raise ValueError(f"expected table of shape {want}, got {values.shape}")

    def fidx(xi):
        k = np.rint(np.asarray(xi) / grid.dxi).astype(np.int64)
        return k % grid.G

    def func(x, xi):
        k = fidx(xi)
        kk = tuple(k[..., i] for i in range(n * N))
        if not x_dependent:
            return values[kk]
        j = grid.index_of(x)
        jj = tuple(j[..., i] for i in range(n))
        jj, kk = _broadcast_index(jj, kk)
        return values[jj + kk]

    return SymbolModel(n, N, func, x_dependent=x_dependent, x_smooth=False, decays=True, name=name)


def _broadcast_index(a: tuple, b: tuple):
    arrs = np.broadcast_arrays(*a, *b)
    return tuple(arrs[: len(a)]), tuple(arrs[len(a):])


@dataclass
class SeminormEstimate:
    """Estimated class constants keyed by ``(alpha, beta)``."""

    constants: dict = field(default_factory=dict)
    probes: dict = field(default_factory=dict)

    def get(self, alpha, beta=None) -> float:
        """Constant for ``(alpha, beta)``; ``beta`` defaults to the zero multi-index."""
        alpha = tuple(alpha)
        if beta is None:
            for (a, b), v in self.constants.items():
                if a == alpha and sum(b) == 0:
                    return v
            raise KeyError(alpha)
        return self.constants[(alpha, tuple(beta))]

    def max_order(self, order: int) -> float:
        vals = [v for (a, b), v in self.constants.items() if sum(a) == order and sum(b) == 0]
        return max(vals) if vals else 0.0


def _default_xi_probes(grid: GridSpec, dim: int, budget: int = 4096, seed: int = 0) -> np.ndarray:
    pts = grid.frequency_points(dim)
    if len(pts) <= budget:
        return pts
    rng = np.random.default_rng(seed)
    return pts[np.sort(rng.choice(len(pts), budget, replace=False))]


def estimate_seminorms(a: SymbolModel, alpha_max: int, beta_max: int = 0, grid: GridSpec | None = None,
                       x_probes=None, xi_probes=None, *, mu=None, step: float = 1e-3,
                       cls: SymbolClass | None = None) -> SeminormEstimate:
    """Scan ``|d^alpha_X d^beta_x a| <X>^{rho|alpha| - delta|beta| - m}`` over probes.

    For ``LpMuS`` classes the x-reduction is the discrete ``L^p_mu`` norm
    over the whole x-lattice; otherwise it is the maximum over ``x_probes``.
    Analytic frequency derivatives are used when declared, else fourth-order
    central differences with step ``step``.
    """
    cls = a.claimed_class if cls is None else cls
    if cls is None:
        raise ValueError("no symbol class to test against")
    if alpha_max > 3 or beta_max > 3:
        raise ValueError("derivative orders are limited to 3")
    if beta_max > 0 and not a.x_smooth:
        raise ValueError("symbol is not smooth in x; only beta_max = 0 is admissible")
    if x_probes is None and xi_probes is None and grid is None:
        raise ValueError("need a grid or explicit probes")
    lp_mode = cls.kind == "LpMuS"
    if lp_mode:
        if grid is None:
            raise ValueError("L^p_mu reduction needs the x-lattice")
        xs = grid.points(a.n)
    elif x_probes is not None:
        xs = np.asarray(x_probes, dtype=float).reshape(-1, a.n)
    elif not a.x_dependent:
        xs = np.zeros((1, a.n))
    else:
        xs = grid.points(a.n)
    xis = _default_xi_probes(grid, a.dim) if xi_probes is None else np.asarray(xi_probes, float).reshape(-1, a.dim)

    X = xs[:, None, :]
    XI = xis[None, :, :]
    weight_base = bracket(xis)
    est = SeminormEstimate(probes={"n_x": len(xs), "n_xi": len(xis),
                                   "xi_max": float(np.max(np.linalg.norm(xis, axis=-1))),
                                   "x_max": float(np.max(np.abs(xs)))})
    for beta in multi_indices(a.n, beta_max):
        for alpha in multi_indices(a.dim, alpha_max):
            vals = _partial(a, X, XI, alpha, beta, step)
            mag = np.abs(vals)
            if lp_mode:
                mag = mag.reshape(grid.shape + (len(xis),))
                red = np.array([lp_norm(_Wrap(grid, mag[..., i]), cls.p, mu) for i in range(len(xis))])
            else:
                red = mag.max(axis=0)
            expo = cls.rho * sum(alpha) - cls.delta * sum(beta) - cls.m
            est.constants[(alpha, beta)] = float(np.max(red * weight_base ** expo))
    return est


class _Wrap:
    def __init__(self, grid, values):
        self.grid = grid
        self.values = values


def _partial(a: SymbolModel, X, XI, alpha, beta, step):
    order = sum(alpha)
    if sum(beta) == 0:
        if order == 0:
            return a(X, XI)
        if a.derivative is not None and order <= a.deriv_order:
            return a.d_xi(X, XI, alpha)
        return fd_partial(lambda xi: a(X, xi), np.broadcast_to(XI, np.broadcast_shapes(X.shape[:-1], XI.shape[:-1]) + XI.shape[-1:]), alpha, step)
    n = a.n
    shape = np.broadcast_shapes(X.shape[:-1], XI.shape[:-1])
    Z = np.concatenate([np.broadcast_to(X, shape + (n,)), np.broadcast_to(XI, shape + XI.shape[-1:])], axis=-1)
    return fd_partial(lambda z: a(z[..., :n], z[..., n:]), Z, tuple(beta) + tuple(alpha), step)


def _ball_points(grid: GridSpec, x0, radius: float = 1.0) -> np.ndarray:
    """Lattice points within periodic distance ``radius`` of ``x0`` (unwrapped around x0)."""
    pts = grid.points(grid.n)
    d = pts - np.asarray(x0, float)
    period = 2.0 * grid.L
    d = (d + grid.L) % period - grid.L
    inside = np.sqrt(np.sum(d * d, axis=-1)) <= radius + 1e-12
    return np.asarray(x0, float) + d[inside]


def ssstar_pairs(grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Lattice frequencies ``zeta`` and the array of ``([zeta - eta], eta)`` pairs.

    Returns ``(zetas (P, n), Xi (P, P, 2n))`` with ``zeta - eta`` wrapped
    periodically back onto the lattice.
    """
    n = grid.n
    k = np.stack(np.meshgrid(*([np.fft.fftfreq(grid.G, 1.0 / grid.G).astype(np.int64)] * n), indexing="ij"),
                 axis=-1).reshape(-1, n)
    diff = k[:, None, :] - k[None, :, :]
    diff = (diff + grid.G // 2) % grid.G - grid.G // 2
    xi = diff * grid.dxi
    eta = np.broadcast_to(k[None, :, :] * grid.dxi, xi.shape)
    return k * grid.dxi, np.concatenate([xi, eta], axis=-1)


def hypo_functional(a: SymbolModel, alpha_max: int, grid: GridSpec, x0_probes, zeta_index=None,
                    step: float = 1e-3) -> BoundReport:
    """``sup_{x0, zeta} (int_{B_1(x0)} int |d_x^alpha a(x, zeta - eta, eta)|^2 deta dx)^(1/2)``.

    ``deta`` is the Plancherel-normalised lattice measure ``dxi^n / (2 pi)^n``
    and ``zeta - eta`` wraps on the lattice, matching
    :func:`pdolab.operators.ssstar_multiplier`.  ``zeta_index`` restricts the
    sup to a subset of lattice frequencies (indices into the flattened
    lattice).
    """
    if a.N != 2:
        raise ValueError("hypo functional is defined for bilinear symbols")
    if alpha_max > 0 and not a.x_smooth:
        raise ValueError("x-derivatives need an x-smooth symbol")
    n = a.n
    zetas, pairs = ssstar_pairs(grid)
    if zeta_index is not None:
        pairs = pairs[np.asarray(zeta_index)]
    deta = (grid.dxi / (2.0 * np.pi)) ** n
    x0s = np.asarray(x0_probes, dtype=float).reshape(-1, n)
    report = BoundReport("hypo_functional", params={"alpha_max": alpha_max, "n_x0": len(x0s), "G": grid.G,
                                                    "n_zeta": int(pairs.shape[0])})
    finite = True
    for alpha in multi_indices(n, alpha_max):
        best = 0.0
        for i, x0 in enumerate(x0s):
            xb = _ball_points(grid, x0)
            X = xb[:, None, None, :]
            XI = pairs[None, :, :, :]
            vals = _partial(a, X, XI, (0,) * a.dim, alpha, step) if sum(alpha) else a(X, XI)
            dens = grid.h ** n * deta * np.sum(np.abs(vals) ** 2, axis=(0, 2))
            val = float(np.sqrt(dens.max()))
            best = max(best, val)
            report.add(f"alpha={alpha}", i, val)
        report.trend[str(alpha)] = best
        finite = finite and math.isfinite(best)
    report.passed = finite
    report.criterion = "all suprema finite"
    return report


def symbol_from_descriptor(desc: dict, grid: GridSpec | None = None) -> SymbolModel:
    """Rebuild a symbol from its JSON descriptor (constructor name, parameters, seed)."""
    kind = desc["constructor"]
    p = dict(desc.get("params", {}))
    arity = (int(p.pop("n", 1)), int(p.pop("N", 1)))
    if kind == "oscillatory":
        return oscillatory_symbol(p["m"], p["rho"], arity)
    if kind == "rough_x":
        prof = p.get("profile", "random_sign")
        if grid is None:
            raise ValueError("rough_x descriptor needs a grid")
        if prof == "random_sign":
            b = random_sign_profile(grid, desc.get("seed", 0))
        elif prof == "sign_sin":
            b = sign_sin_profile(grid)
        elif prof == "ones":
            b = np.ones(grid.shape)
        else:
            raise ValueError(f"unknown profile {prof!r}")
        return rough_x_symbol(p["m"], p["rho"], b, arity, grid, profile=prof, seed=desc.get("seed"))
    if kind == "compact_rho0":
        return compact_rho0_symbol(p["m"], p.get("radius", 4.0), arity)
    if kind == "translation":
        return translation_symbol(p["v"], arity)
    if kind == "plane_wave":
        return plane_wave_symbol(arity[0])
    if kind == "gaussian":
        return gaussian_symbol(arity, p.get("scale", 1.0))
    if kind == "constant":
        c = p.get("c", [1.0, 0.0])
        return constant_symbol(complex(c[0], c[1]) if isinstance(c, list) else c, arity)
    if kind == "separable_gaussian":
        g = gaussian_profile(p.get("g_width", 1.0))
        h = gaussian_profile(p.get("h_width", 1.0))
        return separable_bilinear_symbol(g, h, arity[0], descriptor=desc)
    if kind == "x_modulated":
        return x_modulated_symbol(symbol_from_descriptor(desc["base"], grid), p.get("amplitude", 1.0))
    if kind == "x_envelope":
        return x_envelope_symbol(symbol_from_descriptor(desc["base"], grid), p.get("width", 1.0), p.get("p", 2.0))
    if kind == "truncated":
        return truncated_symbol(symbol_from_descriptor(desc["base"], grid), p["K"])
    if kind == "dyadic_piece":
        from .lp_decomp import build_family, dyadic_piece
        if grid is None:
            raise ValueError("dyadic_piece descriptor needs a grid")
        return dyadic_piece(symbol_from_descriptor(desc["base"], grid), build_family(grid), p["k"])
    raise ValueError(f"unknown symbol constructor {kind!r}")


_SHORT = {"osc": "oscillatory", "rough": "rough_x", "gauss": "gaussian", "const": "constant",
          "rho0": "compact_rho0", "plane": "plane_wave", "sepgauss": "separable_gaussian"}


def parse_symbol_spec(spec: str, arity=(1, 1), seed: int | None = None) -> dict:
    """Parse ``"osc:m=-1,rho=0.5"`` into a descriptor dict."""
    name, _, rest = spec.partition(":")
    params: dict = {}
    for item in filter(None, rest.split(",")):
        k, _, v = item.partition("=")
        try:
            params[k.strip()] = float(v)
        except ValueError:
            params[k.strip()] = v.strip()
    params.setdefault("n", arity[0])
    params.setdefault("N", arity[1])
    desc = {"constructor": _SHORT.get(name, name), "params": params}
    if seed is not None:
        desc["seed"] = seed
    return desc
