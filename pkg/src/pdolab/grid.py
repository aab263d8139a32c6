"""Periodic lattices, Riemann-sum Fourier transforms and discrete norms.

Space is modelled by the torus ``[-L, L)^d`` sampled at ``G`` points per
axis.  All integrals are Riemann sums with cell volume ``h**d`` in space and
``dxi**d`` in frequency, where ``h = 2L/G`` and ``dxi = pi/L``.  With these
weights the discrete transform pair

    u_hat(xi) = h^d sum_x u(x) exp(-i xi.x)
    u(x)      = (2 pi)^-d dxi^d sum_xi u_hat(xi) exp(+i xi.x)

is an exact inverse pair and satisfies Plancherel with the continuum
constant ``(2 pi)^(d/2)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "GridSpec",
    "Field",
    "MultiField",
    "ExponentTriple",
    "make_grid",
    "forward_ft",
    "inverse_ft",
    "lp_norm",
    "mixed_norm",
    "iterated_norm",
    "save_field",
    "load_field",
]

INF = math.inf


def _recip(p: float) -> float:
    return 0.0 if p == INF else 1.0 / p


@dataclass(frozen=True)
class GridSpec:
    """Periodic lattice for ``N`` blocks of ``n``-dimensional variables.

    ``offset`` is the position of the first sample inside its cell, in units
    of ``h``: ``0.0`` puts a sample on the origin, ``0.5`` is the half-cell
    shifted lattice used for singular power weights.
    """

    n: int
    N: int
    L: float
    G: int
    offset: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"block dimension n must be a positive integer, got {self.n}")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"block count N must be a positive integer, got {self.N}")
        if not (self.L > 0 and math.isfinite(self.L)):
            raise ValueError(f"half-period L must be positive, got {self.L}")
        G = self.G
        if int(G) != G or G < 2 or G % 2 or (G & (G - 1)):
            raise ValueError(f"points per axis G must be an even power of two, got {G}")
        if not 0.0 <= self.offset < 1.0:
            raise ValueError(f"offset must lie in [0, 1), got {self.offset}")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.G

    @property
    def dxi(self) -> float:
        return math.pi / self.L

    @property
    def nyquist(self) -> float:
        """Per-axis Nyquist frequency ``pi G / (2L)``."""
        return math.pi * self.G / (2.0 * self.L)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.G,) * self.n

    @property
    def product_shape(self) -> tuple[int, ...]:
        return (self.G,) * (self.n * self.N)

    def coords(self) -> np.ndarray:
        """Sample positions along one axis, ``-L + (j + offset) h``."""
        return -self.L + (np.arange(self.G) + self.offset) * self.h

    def index_of(self, x) -> np.ndarray:
        """Index of the lattice point nearest to ``x`` (periodic)."""
        j = np.rint((np.asarray(x, dtype=float) + self.L) / self.h - self.offset)
        return j.astype(np.int64) % self.G

    def frequencies(self) -> np.ndarray:
        """Frequency lattice ``pi k / L`` along one axis, in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.G, d=self.h)

    def displacements(self) -> np.ndarray:
        """Centred displacement lattice ``j h``, ``j = -G/2, ..., G/2 - 1``."""
        return (np.arange(self.G) - self.G // 2) * self.h

    def points(self, dim: int | None = None) -> np.ndarray:
        """All lattice points in ``dim`` dimensions as an array ``(G**dim, dim)``."""
        return _mesh(self.coords(), self.n if dim is None else dim)

    def frequency_points(self, dim: int | None = None) -> np.ndarray:
        """All lattice frequencies (FFT order, C-ordered) as ``(G**dim, dim)``."""
        return _mesh(self.frequencies(), self.n * self.N if dim is None else dim)

    def with_size(self, G: int) -> "GridSpec":
        return GridSpec(self.n, self.N, self.L, G, self.offset)

    def header(self) -> dict:
        return {"n": self.n, "N": self.N, "L": self.L, "G": self.G, "offset": self.offset}


def _mesh(axis: np.ndarray, dim: int) -> np.ndarray:
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def make_grid(n: int, N: int, L: float, G: int, offset: float = 0.0) -> GridSpec:
    """Validated periodic lattice; see :class:`GridSpec`."""
    return GridSpec(int(n), int(N), float(L), int(G), float(offset))


@dataclass(frozen=True, eq=False)
class Field:
    """Complex samples on the ``n``-dimensional lattice of one block.

    ``domain`` is ``"space"`` for samples ``u(x)`` and ``"frequency"`` for
    transform samples on the frequency lattice (FFT order).
    """

    grid: GridSpec
    values: np.ndarray
    domain: str = "space"

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        expected = self._expected_shape()
        if vals.shape != expected:
            if vals.size == math.prod(expected):
                vals = vals.reshape(expected)
            else:
                raise ValueError(f"expected {math.prod(expected)} samples of shape {expected}, got {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field samples must be finite")
        if self.domain not in ("space", "frequency"):
            raise ValueError(f"unknown domain {self.domain!r}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def _expected_shape(self) -> tuple[int, ...]:
        return self.grid.shape

    @property
    def ndim(self) -> int:
        return len(self._expected_shape())

    def __mul__(self, c):
        return type(self)(self.grid, self.values * c, self.domain)

    __rmul__ = __mul__

    def __add__(self, other):
        return type(self)(self.grid, self.values + other.values, self.domain)

    def abs(self) -> np.ndarray:
        return np.abs(self.values)


@dataclass(frozen=True, eq=False)
class MultiField(Field):
    """Complex samples on the full ``nN``-dimensional product lattice."""

    def _expected_shape(self) -> tuple[int, ...]:
        return self.grid.product_shape


def _axis_phase(grid: GridSpec, ndim: int, sign: float) -> np.ndarray:
    """``exp(sign i xi x0)`` on the frequency lattice, broadcast over ``ndim`` axes."""
    x0 = -grid.L + grid.offset * grid.h
    ph1 = np.exp(sign * 1j * grid.frequencies() * x0)
    out = np.ones((1,) * ndim, dtype=complex)
    for ax in range(ndim):
        shape = [1] * ndim
        shape[ax] = grid.G
        out = out * ph1.reshape(shape)
    return out


def forward_ft(u: Field) -> Field:
    """Riemann-sum Fourier transform ``h^d sum u(y) exp(-i xi.y)`` via FFT."""
    if u.domain != "space":
        raise ValueError("forward_ft expects space-domain samples")
    grid = u.grid
    d = u.ndim
    vals = grid.h ** d * _axis_phase(grid, d, -1.0) * np.fft.fftn(u.values)
    return type(u)(grid, vals, "frequency")


def inverse_ft(uhat: Field) -> Field:
    """Inverse of :func:`forward_ft`: ``(2 pi)^-d dxi^d sum u_hat exp(+i xi.x)``."""
    if uhat.domain != "frequency":
        raise ValueError("inverse_ft expects frequency-domain samples")
    grid = uhat.grid
    d = uhat.ndim
    scale = (grid.dxi * grid.G / (2.0 * np.pi)) ** d
    vals = scale * np.fft.ifftn(uhat.values * _axis_phase(grid, d, 1.0))
    return type(uhat)(grid, vals, "space")


def _weight_values(w, shape) -> np.ndarray | None:
    if w is None:
        return None
    vals = np.asarray(getattr(w, "values", w), dtype=float)
    if vals.shape != shape:
        raise ValueError(f"weight shape {vals.shape} does not match field shape {shape}")
    if np.any(vals < 0):
        raise ValueError("weights must be nonnegative")
    return vals


def _check_exponent(p: float, allow_quasi: bool = False) -> float:
    p = float(p)
    lo = 0.0 if allow_quasi else 1.0
    if not (p >= lo and p > 0) or math.isnan(p):
        raise ValueError(f"exponent must lie in [1, inf], got {p}")
    return p


def lp_norm(u, p: float, w=None, *, allow_quasi: bool = False) -> float:
    """Discrete weighted ``L^p`` norm ``(h^d sum |u|^p w)^(1/p)``.

    ``p = inf`` returns the maximum of ``|u|`` over points of positive
    weight.  ``allow_quasi`` admits ``0 < p < 1`` (quasi-norm).
    """
    p = _check_exponent(p, allow_quasi)
    vals = np.abs(np.asarray(getattr(u, "values", u)))
    wv = _weight_values(w, vals.shape)
    if p == INF:
        if wv is not None:
            vals = vals[wv > 0]
        return float(vals.max()) if vals.size else 0.0
    cell = u.grid.h ** vals.ndim
    s = vals ** p if wv is None else vals ** p * wv
    return float((cell * s.sum()) ** (1.0 / p))


def iterated_norm(values: np.ndarray, exponents: Sequence[float], n: int, cell: float) -> float:
    """Iterated norm over consecutive ``n``-axis blocks, innermost block first.

    ``cell`` is the per-block cell volume (``h**n`` in space, ``dxi**n`` in
    frequency).
    """
    v = np.abs(np.asarray(values))
    if v.ndim != n * len(exponents):
        raise ValueError(f"{len(exponents)} exponents do not match an array of {v.ndim} axes with n={n}")
    axes = tuple(range(n))
    for p in exponents:
        p = _check_exponent(p)
        if p == INF:
            v = v.max(axis=axes)
        else:
            v = (cell * (v ** p).sum(axis=axes)) ** (1.0 / p)
    return float(v)


def mixed_norm(u: MultiField, exponents: Sequence[float]) -> float:
    """Mixed norm with ``exponents[j]`` applied in block ``j``, innermost first."""
    grid = u.grid
    if len(exponents) != grid.N:
        raise ValueError(f"need {grid.N} exponents, got {len(exponents)}")
    return iterated_norm(u.values, exponents, grid.n, grid.h ** grid.n)


@dataclass(frozen=True)
class ExponentTriple:
    """Exponents ``(p, q, r)`` in ``[1, inf]`` with ``1/p + 1/q = 1/r``."""

    p: float
    q: float
    r: float

    def __post_init__(self):
        for name in ("p", "q", "r"):
            v = float(getattr(self, name))
            if not v >= 1.0:
                raise ValueError(f"{name} must lie in [1, inf], got {v}")
            object.__setattr__(self, name, v)
        a, b, c = self.reciprocals
        if abs(a + b - c) > 1e-12:
            raise ValueError(f"1/p + 1/q = {a + b} differs from 1/r = {c}")

    @classmethod
    def from_reciprocals(cls, ip: float, iq: float, ir: float | None = None) -> "ExponentTriple":
        ir = ip + iq if ir is None else ir

        def inv(t):
            return INF if t == 0 else 1.0 / t

        return cls(inv(ip), inv(iq), inv(ir))

    @property
    def reciprocals(self) -> tuple[float, float, float]:
        return _recip(self.p), _recip(self.q), _recip(self.r)

    def in_triangle(self) -> bool:
        """Membership in the closed triangle with vertices (0,1,1), (1,0,1), (0,0,0)."""
        a, b, c = self.reciprocals
        return 0 <= a <= 1 and 0 <= b <= 1 and c <= 1 + 1e-15

    def in_l2_triangle(self) -> bool:
        """Membership in the sub-triangle with vertices (1/2,1/2,1), (0,1/2,1/2), (1/2,0,1/2)."""
        a, b, c = self.reciprocals
        eps = 1e-15
        return a <= 0.5 + eps and b <= 0.5 + eps and c >= 0.5 - eps


def save_field(path, u: Field) -> None:
    """Write ``u`` as one JSON header line followed by little-endian float64 pairs."""
    header = dict(u.grid.header())
    header.update(
        kind="multifield" if isinstance(u, MultiField) else "field",
        domain=u.domain,
        shape=list(u.values.shape),
        dtype="<c16",
    )
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode() + b"\n")
        fh.write(np.ascontiguousarray(u.values, dtype="<c16").tobytes(order="C"))


def load_field(path) -> Field:
    data = Path(path).read_bytes()
    head, _, body = data.partition(b"\n")
    header = json.loads(head)
    grid = make_grid(header["n"], header["N"], header["L"], header["G"], header.get("offset", 0.0))
    vals = np.frombuffer(body, dtype="<c16").reshape(header["shape"])
    cls = MultiField if header.get("kind") == "multifield" else Field
    return cls(grid, vals.copy(), header.get("domain", "space"))
