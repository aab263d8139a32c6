"""Discrete multilinear pseudodifferential operators, their kernels and adjoints.

Operators are normalised by ``(2 pi)^{-nN}`` so that the constant symbol 1
gives the pointwise product.  On the lattice,

    T_a(u_1, ..., u_N)(x) = (dxi / 2 pi)^{nN} sum_X a(x, X) prod_j u_j^(xi_j) e^{i x.xi_j}

and the exponentials are evaluated exactly at the sample points, so the
formulas hold for shifted lattices too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Field, GridSpec, MultiField, forward_ft, inverse_ft
from .lp_decomp import LittlewoodPaleyFamily, dyadic_piece, phi0_profile
from .report import BoundReport
from .symbols import SymbolModel, ssstar_pairs

__all__ = [
    "KernelSlice",
    "exp_matrix",
    "symbol_on_lattice",
    "apply_multilinear",
    "multilinear_batch",
    "apply_linear",
    "compute_kernel",
    "apply_kernel",
    "fit_kernel_decay",
    "BilinearDense",
    "adjoint_bilinear",
    "adjoint1_matrix_free",
    "adjoint2_matrix_free",
    "apply_S",
    "apply_S_adjoint",
    "ssstar_multiplier",
    "a_constant",
    "s_operator_norm",
]

_CHUNK_ELEMS = 1 << 21


def _norm_const(grid: GridSpec, dim: int) -> float:
    return (grid.dxi / (2.0 * np.pi)) ** dim


def exp_matrix(grid: GridSpec, dim: int | None = None) -> np.ndarray:
    """``E[x, xi] = exp(i x.xi)`` over the ``dim``-dimensional lattice (C order, FFT-order frequencies)."""
    dim = grid.n if dim is None else dim
    e1 = np.exp(1j * np.outer(grid.coords(), grid.frequencies()))
    out = e1
    for _ in range(dim - 1):
        out = np.kron(out, e1)
    return out


def symbol_on_lattice(a: SymbolModel, grid: GridSpec, xs=None) -> np.ndarray:
    """Samples ``a(x, X)`` with ``X`` over the full frequency lattice.

    Returns shape ``(G^n,)*N`` for x-independent symbols (``xs`` ignored),
    otherwise ``(len(xs),) + (G^n,)*N``.
    """
    P = grid.G ** grid.n
    xi = grid.frequency_points(a.dim)
    if not a.x_dependent:
        vals = a(np.zeros(a.n), xi)
        return vals.reshape((P,) * a.N)
    xs = grid.points(a.n) if xs is None else np.asarray(xs, float).reshape(-1, a.n)
    vals = a(xs[:, None, :], xi[None, :, :])
    return vals.reshape((len(xs),) + (P,) * a.N)


def _check_inputs(a: SymbolModel, inputs) -> GridSpec:
    if len(inputs) != a.N:
        raise ValueError(f"symbol expects {a.N} inputs, got {len(inputs)}")
    grid = inputs[0].grid
    for u in inputs:
        if u.grid != grid:
            raise ValueError("inputs live on different grids")
        if u.values.shape != grid.shape:
            raise ValueError("inputs must be single-block fields")
    if grid.n != a.n:
        raise ValueError(f"symbol block dimension {a.n} differs from grid n={grid.n}")
    return grid


def _contract(A_chunk, V_list, x_independent: bool):
    """Contract symbol samples against phase-shifted spectra.

    ``A_chunk``: ``(P,)*N`` or ``(X, (P,)*N)``; ``V_list[j]``: ``(T, X, P)``.
    Returns ``(T, X)``.
    """
    N = len(V_list)
    T, X, P = V_list[0].shape
    if x_independent:
        R = V_list[-1] @ A_chunk.reshape(P ** (N - 1), P).T  # (T, X, P^{N-1})
    else:
        A = A_chunk.reshape(X, P ** (N - 1), P)
        R = np.matmul(A, V_list[-1].transpose(1, 2, 0))  # (X, P^{N-1}, T)
        R = R.transpose(2, 0, 1)
    for j in range(N - 2, -1, -1):
        R = R.reshape(T, X, P ** j, P)
        R = np.einsum("txap,txp->txa", R, V_list[j])
    return R.reshape(T, X)


def multilinear_batch(a: SymbolModel, grid: GridSpec, spectra, symbol_table=None) -> np.ndarray:
    """Apply ``T_a`` to a batch of inputs given by their spectra.

    ``spectra[j]`` has shape ``(T, G^n)`` (flattened frequency lattice).
    Returns ``(T, G^n)`` samples of the output.  ``symbol_table`` may supply
    precomputed :func:`symbol_on_lattice` samples.
    """
    N = a.N
    E = exp_matrix(grid, grid.n)
    X, P = E.shape
    c = _norm_const(grid, a.dim)
    spectra = [np.atleast_2d(np.asarray(s, dtype=complex)).reshape(-1, P) for s in spectra]
    T = spectra[0].shape[0]
    if not a.x_dependent:
        A = symbol_on_lattice(a, grid) if symbol_table is None else symbol_table
        out = np.empty((T, X), dtype=complex)
        step = max(1, _CHUNK_ELEMS // max(1, T * P ** max(1, N - 1)))
        for s in range(0, X, step):
            V = [sp[:, None, :] * E[None, s:s + step, :] for sp in spectra]
            out[:, s:s + step] = _contract(A, V, True)
        return c * out
    xs = grid.points(a.n)
    xi = grid.frequency_points(a.dim)
    out = np.empty((T, X), dtype=complex)
    step = max(1, _CHUNK_ELEMS // P ** N)
    for s in range(0, X, step):
        if symbol_table is not None:
            A = symbol_table[s:s + step]
        else:
            A = a(xs[s:s + step, None, :], xi[None, :, :])
        V = [sp[:, None, :] * E[None, s:s + step, :] for sp in spectra]
        out[:, s:s + step] = _contract(A, V, False)
    return c * out


def apply_multilinear(a: SymbolModel, inputs) -> Field:
    """``T_a(u_1, ..., u_N)`` on the x-lattice."""
    grid = _check_inputs(a, inputs)
    spectra = [forward_ft(u).values.reshape(1, -1) for u in inputs]
    out = multilinear_batch(a, grid, spectra)
    return Field(grid, out.reshape(grid.shape))


def apply_linear(a: SymbolModel, u: MultiField) -> MultiField:
    """Linear operator on ``R^{nN}`` whose symbol has arity ``(nN, 1)``."""
    grid = u.grid
    d = grid.n * grid.N
    if a.N != 1 or a.n != d:
        raise ValueError(f"linear symbol on R^{d} must have arity ({d}, 1), got ({a.n}, {a.N})")
    uhat = forward_ft(u)
    xi = grid.frequency_points(d)
    if not a.x_dependent:
        A = a(np.zeros(d), xi).reshape(grid.product_shape)
        return inverse_ft(MultiField(grid, A * uhat.values, "frequency"))
    c = _norm_const(grid, d)
    xs = grid.points(d)
    uh = uhat.values.ravel()
    out = np.empty(len(xs), dtype=complex)
    step = max(1, _CHUNK_ELEMS // len(xi))
    for s in range(0, len(xs), step):
        xc = xs[s:s + step]
        A = a(xc[:, None, :], xi[None, :, :])
        out[s:s + step] = c * np.sum(A * np.exp(1j * xc @ xi.T) * uh[None, :], axis=1)
    return MultiField(grid, out.reshape(grid.product_shape))


@dataclass(frozen=True, eq=False)
class KernelSlice:
    """Kernel ``K(x, Y) = (2 pi)^{-nN} int a(x, X) e^{i Y.X} dX`` sampled on displacements.

    ``values`` has shape ``(len(x_points),) + (G,)*(nN)`` with displacement
    axes centred: index ``j`` is displacement ``(j - G/2) h``.
    """

    grid: GridSpec
    values: np.ndarray
    x_points: np.ndarray
    k: object
    N: int
    name: str = ""

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise ValueError("kernel samples must be finite")

    @property
    def x_independent(self) -> bool:
        return len(self.x_points) == 1

    def at(self, ix: int = 0) -> np.ndarray:
        return self.values[ix]

    def fft_ordered(self) -> np.ndarray:
        axes = tuple(range(1, self.values.ndim))
        return np.fft.ifftshift(self.values, axes=axes)

    def to_field(self, ix: int = 0) -> MultiField:
        """Kernel slice at ``x_points[ix]`` as a field on the product lattice (centred displacements)."""
        g = self.grid
        grid = GridSpec(g.n, self.N, g.L, g.G, 0.0)
        return MultiField(grid, self.values[ix])


def _lattice_kernel(a: SymbolModel, grid: GridSpec, xs=None) -> tuple[np.ndarray, np.ndarray]:
    d = a.dim
    if a.x_dependent:
        xs = grid.points(a.n) if xs is None else np.asarray(xs, float).reshape(-1, a.n)
    else:
        xs = np.zeros((1, a.n))
    xi = grid.frequency_points(d)
    shape = (grid.G,) * d
    out = np.empty((len(xs),) + shape, dtype=complex)
    scale = _norm_const(grid, d) * grid.G ** d
    for i, x in enumerate(xs):
        A = a(x, xi).reshape(shape)
        out[i] = np.fft.fftshift(scale * np.fft.ifftn(A))
    return out, xs


def compute_kernel(a: SymbolModel, fam: LittlewoodPaleyFamily | None, k="total", xs=None) -> KernelSlice:
    """Kernel of a dyadic piece ``a phi_k``, of the resolved partial sum, or of ``a`` itself.

    ``k`` is an integer piece index, ``"summed"`` for
    ``a * sum_{k <= K_res} phi_k`` with ``K_res`` the last fully resolved
    piece, or ``"total"`` for the untruncated symbol (only for symbols
    declaring rapid decay).
    """
    if fam is None or fam.grid is None:
        raise ValueError("need a family attached to a grid")
    grid = fam.grid
    if k == "total":
        if not a.decays:
            raise ValueError("total kernel refused: symbol declares no decay, the lattice sum would not converge")
        sym = a
    elif k == "summed":
        K = fam.resolved_max()

        def func(x, xi, _a=a, _K=K):
            r = np.sqrt(np.sum(xi * xi, axis=-1))
            return _a.func(x, xi) * phi0_profile(r * 2.0 ** -_K)

        sym = SymbolModel(a.n, a.N, func, x_dependent=a.x_dependent, decays=True, name=f"{a.name}|<=K{K}")
    else:
        sym = dyadic_piece(a, fam, int(k))
    vals, xs = _lattice_kernel(sym, grid, xs)
    return KernelSlice(grid, vals, xs, k, a.N, sym.name)


def _shift_matrix(u: np.ndarray, grid: GridSpec) -> np.ndarray:
    """``S[i, l] = u(x_i - y_l)`` with ``y_l`` on the centred displacement lattice (periodic)."""
    n, G = grid.n, grid.G
    idx = np.stack(np.meshgrid(*([np.arange(G)] * n), indexing="ij"), -1).reshape(-1, n)
    disp = idx - G // 2
    tgt = (idx[:, None, :] - disp[None, :, :]) % G
    return np.asarray(u).reshape((G,) * n)[tuple(tgt[..., a] for a in range(n))]


def apply_kernel(K: KernelSlice, inputs) -> Field:
    """``h^{nN} sum_Y K(x, Y) prod_j u_j(x - y_j)`` (discrete convolution form)."""
    grid = inputs[0].grid
    n, N = grid.n, K.N
    P = grid.G ** n
    S = [_shift_matrix(u.values, grid) for u in inputs]  # (X, P) each
    X = S[0].shape[0]
    out = np.empty(X, dtype=complex)
    for i in range(X):
        kv = K.values[0 if K.x_independent else i].reshape((P,) * N)
        r = kv
        for j in range(N - 1, -1, -1):
            r = r @ S[j][i]
        out[i] = r
    return Field(grid, grid.h ** (n * N) * out.reshape(grid.shape))


def _default_rays(n: int, N: int) -> list[np.ndarray]:
    rays = []
    for j in range(N):
        v = np.zeros(n * N, dtype=int)
        v[j * n] = 1
        rays.append(v)
    if N > 1:
        v = np.zeros(n * N, dtype=int)
        v[::n] = 1
        rays.append(v)
        w = v.copy()
        w[n::2 * n] = -1
        rays.append(w)
    return rays


def fit_kernel_decay(K: KernelSlice, orders, rays=None, x_index: int = 0, rmin: float = 1.0,
                     rmax: float | None = None, noise_floor: float = 1e-12, slack: float = 0.2,
                     min_samples: int = 8) -> BoundReport:
    """Log-log decay fit of ``|K(x, Y)|`` along lattice rays.

    Along each ray the blocks moved away from the origin form the set ``S``
    and the model is ``prod_{j in S} |z_j|^{-N_j}``.  The fit uses the
    monotone envelope ``sup_{t' >= t} |K(t')|``, discarding values under
    ``noise_floor`` times the kernel maximum.  A ray passes when the fitted
    slope is at most ``-sum_{j in S} N_j + slack``.
    """
    grid = K.grid
    n, N = grid.n, K.N
    orders = np.broadcast_to(np.asarray(orders, dtype=float), (N,))
    rmax = grid.L / 2 if rmax is None else rmax
    vals = np.abs(K.values[x_index])
    floor = noise_floor * vals.max()
    rays = _default_rays(n, N) if rays is None else [np.asarray(r, int) for r in rays]
    report = BoundReport("kernel_decay", params={"orders": orders.tolist(), "rmin": rmin, "rmax": rmax,
                                                 "G": grid.G, "L": grid.L, "k": str(K.k)})
    ok = True
    c = grid.G // 2
    for ri, v in enumerate(rays):
        blocks = [np.linalg.norm(v[j * n:(j + 1) * n]) for j in range(N)]
        S = [j for j in range(N) if blocks[j] > 0]
        bmin = min(blocks[j] for j in S)
        bmax = max(blocks[j] for j in S)
        ts = np.arange(1, grid.G)
        z_lo = ts * grid.h * bmin
        z_hi = ts * grid.h * bmax
        sel = (z_lo >= rmin - 1e-12) & (z_hi <= rmax + 1e-12)
        ts = ts[sel]
        if len(ts) < min_samples:
            raise ValueError(f"fewer than {min_samples} sample radii on ray {v.tolist()}")
        idx = (c + np.outer(ts, v)) % grid.G
        kv = vals[tuple(idx[:, a] for a in range(n * N))]
        env = np.maximum.accumulate(kv[::-1])[::-1]
        keep = env > floor
        if keep.sum() < min_samples:
            raise ValueError(f"fewer than {min_samples} sample radii above the noise floor on ray {v.tolist()}")
        t = ts[keep] * grid.h
        slope = float(np.polyfit(np.log(t), np.log(env[keep]), 1)[0])
        target = -float(sum(orders[j] for j in S))
        zprod = np.ones(len(ts))
        for j in S:
            zprod = zprod * (ts * grid.h * blocks[j]) ** orders[j]
        ratio = float(np.max(kv * zprod))
        passed = bool(slope <= target + slack and math.isfinite(ratio))
        ok = ok and passed
        report.add(f"ray={v.tolist()}", ri, ratio, slope=slope, target=target, passed=passed,
                   n_samples=int(keep.sum()))
        report.trend[str(v.tolist())] = slope
    report.passed = ok
    report.threshold = float(-orders.sum())
    report.criterion = f"fitted slope <= -sum N_j + {slack} on every ray"
    return report


@dataclass(frozen=True, eq=False)
class BilinearDense:
    """Dense realisation ``T(f, g)(x) = sum W[x, y1, y2] f(y1) g(y2)`` with its two adjoints.

    Adjoints are taken with respect to ``<u, v> = h^n sum u conj(v)``.
    """

    grid: GridSpec
    W: np.ndarray

    def pair(self, u, v) -> complex:
        u = getattr(u, "values", u)
        v = getattr(v, "values", v)
        return complex(self.grid.h ** self.grid.n * np.sum(np.ravel(u) * np.conj(np.ravel(v))))

    def _wrap(self, v) -> Field:
        return Field(self.grid, v.reshape(self.grid.shape))

    def apply(self, f, g) -> Field:
        f = np.ravel(getattr(f, "values", f))
        g = np.ravel(getattr(g, "values", g))
        return self._wrap(np.einsum("xab,a,b->x", self.W, f, g))

    def adjoint1(self, h, g) -> Field:
        h = np.ravel(getattr(h, "values", h))
        g = np.ravel(getattr(g, "values", g))
        return self._wrap(np.conj(np.einsum("xyb,x,b->y", self.W, np.conj(h), g)))

    def adjoint2(self, f, h) -> Field:
        f = np.ravel(getattr(f, "values", f))
        h = np.ravel(getattr(h, "values", h))
        return self._wrap(np.conj(np.einsum("xay,a,x->y", self.W, f, np.conj(h))))


def adjoint_bilinear(a: SymbolModel, grid: GridSpec) -> BilinearDense:
    """Materialise the bilinear operator as a dense tensor (only for ``G^n <= 64``)."""
    if a.N != 2:
        raise ValueError("adjoint_bilinear needs a bilinear symbol")
    P = grid.G ** grid.n
    if P > 64:
        raise ValueError(f"grid too large for a dense tensor (G^n = {P} > 64)")
    Kc, _ = _lattice_kernel(a, grid)
    n, G = grid.n, grid.G
    axes = tuple(range(1, Kc.ndim))
    Kf = np.fft.ifftshift(Kc, axes=axes).reshape((Kc.shape[0],) + (G,) * (2 * n))
    idx = np.stack(np.meshgrid(*([np.arange(G)] * n), indexing="ij"), -1).reshape(-1, n)
    d = (idx[:, None, :] - idx[None, :, :]) % G  # (x, y, n): x - y
    W = np.empty((P, P, P), dtype=complex)
    for i in range(P):
        kv = Kf[0 if not a.x_dependent else i]
        d1 = d[i]  # (P, n)
        W[i] = kv[tuple(d1[:, None, c] for c in range(n)) + tuple(d1[None, :, c] for c in range(n))]
    W *= grid.h ** (2 * n)
    return BilinearDense(grid, W)


def _adjoint_core(a: SymbolModel, grid: GridSpec, h: np.ndarray, other_hat: np.ndarray, slot: int) -> np.ndarray:
    """``conj`` of the matrix-free adjoint in ``slot`` (0 or 1), see :func:`adjoint1_matrix_free`."""
    E = exp_matrix(grid, grid.n)
    X, P = E.shape
    c = _norm_const(grid, 2 * grid.n)
    xs = grid.points(grid.n)
    xi = grid.frequency_points(2 * grid.n)
    hn = grid.h ** grid.n
    out = np.zeros(X, dtype=complex)  # indexed by y
    step = max(1, _CHUNK_ELEMS // (P * P))
    for s in range(0, X, step):
        if a.x_dependent:
            A = a(xs[s:s + step, None, :], xi[None, :, :]).reshape(-1, P, P)
        else:
            A = symbol_on_lattice(a, grid)[None]
        Ex = E[s:s + step]  # (x, P)
        if slot == 0:
            # inner[x, xi] = sum_eta A[x, xi, eta] ghat(eta) e^{i x eta}
            inner = np.einsum("xab,xb->xa", np.broadcast_to(A, (len(Ex), P, P)), Ex * other_hat[None, :])
        else:
            inner = np.einsum("xab,xa->xb", np.broadcast_to(A, (len(Ex), P, P)), Ex * other_hat[None, :])
        weighted = inner * Ex * np.conj(h[s:s + step])[:, None]  # (x, P_free)
        # sum_x ... e^{-i y xi}
        out += np.conj(E) @ weighted.sum(axis=0)
    return hn * c * out


def adjoint1_matrix_free(a: SymbolModel, h: Field, g: Field) -> Field:
    """``T^{*1}(h, g)`` without materialising the tensor."""
    grid = h.grid
    ghat = forward_ft(g).values.ravel()
    core = _adjoint_core(a, grid, h.values.ravel(), ghat, 0)
    return Field(grid, np.conj(core).reshape(grid.shape))


def adjoint2_matrix_free(a: SymbolModel, f: Field, h: Field) -> Field:
    """``T^{*2}(f, h)`` without materialising the tensor."""
    grid = h.grid
    fhat = forward_ft(f).values.ravel()
    core = _adjoint_core(a, grid, h.values.ravel(), fhat, 1)
    return Field(grid, np.conj(core).reshape(grid.shape))


def _require_frequency_only(a: SymbolModel):
    if a.x_dependent:
        raise ValueError("S is defined for x-independent symbols only")
    if a.N != 2:
        raise ValueError("S needs a symbol of two frequency blocks")


def apply_S(a: SymbolModel, F: MultiField) -> Field:
    """``S(F)(x) = (2 pi)^{-2n} sum a(xi, eta) F^(xi, eta) e^{i x.(xi + eta)}``."""
    _require_frequency_only(a)
    grid = F.grid
    if grid.N != 2:
        raise ValueError("S acts on functions of two blocks")
    P = grid.G ** grid.n
    A = symbol_on_lattice(a, grid)
    B = A * forward_ft(F).values.reshape(P, P)
    E = exp_matrix(grid, grid.n)
    out = np.sum(E * (E @ B.T), axis=1)
    return Field(grid, _norm_const(grid, 2 * grid.n) * out.reshape(grid.shape))


def apply_S_adjoint(a: SymbolModel, g: Field, table=None) -> MultiField:
    """Adjoint of :func:`apply_S` for the discrete ``L^2`` pairings."""
    _require_frequency_only(a)
    grid = g.grid
    A = symbol_on_lattice(a, grid) if table is None else table
    E = exp_matrix(grid, grid.n)
    Ec = np.conj(E)
    gplus = grid.h ** grid.n * (Ec.T * g.values.ravel()[None, :]) @ Ec  # (xi, eta)
    spec = np.conj(A) * gplus
    return inverse_ft(MultiField(grid, spec.reshape(grid.product_shape), "frequency"))


def ssstar_multiplier(a: SymbolModel, grid: GridSpec) -> Field:
    """Symbol of ``S S^*``: ``m(zeta) = (2 pi)^{-n} dxi^n sum_eta |a([zeta - eta], eta)|^2``."""
    _require_frequency_only(a)
    _, pairs = ssstar_pairs(grid)
    vals = a(np.zeros(grid.n), pairs)
    m = (grid.dxi / (2.0 * np.pi)) ** grid.n * np.sum(np.abs(vals) ** 2, axis=1)
    return Field(grid, m.reshape(grid.shape), "frequency")


def a_constant(a: SymbolModel, grid: GridSpec) -> float:
    """``A = sup_zeta m(zeta)^(1/2)``."""
    return float(np.sqrt(np.max(ssstar_multiplier(a, grid).values.real)))


def s_operator_norm(a: SymbolModel, grid: GridSpec, seed: int = 0, max_iter: int = 20000,
                    tol: float = 1e-15) -> float:
    """Operator norm of ``S`` by power iteration on ``S S^*``."""
    _require_frequency_only(a)
    rng = np.random.default_rng(seed)
    table = symbol_on_lattice(a, grid)
    hn = grid.h ** grid.n
    g = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    g = Field(grid, g / math.sqrt(hn * np.sum(np.abs(g) ** 2)))
    lam = 0.0
    for it in range(max_iter):
        s_star = apply_S_adjoint(a, g, table)
        lam_new = grid.h ** (2 * grid.n) * float(np.sum(np.abs(s_star.values) ** 2))
        if lam_new == 0.0:
            return 0.0
        ng = apply_S(a, s_star)
        nrm = math.sqrt(hn * float(np.sum(np.abs(ng.values) ** 2)))
        g = Field(grid, ng.values / nrm)
        if it > 10 and abs(lam_new - lam) <= tol * lam_new:
            lam = lam_new
            break
        lam = lam_new
    return math.sqrt(lam)
