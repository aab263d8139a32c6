import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdolab.grid import Field, MultiField, forward_ft, lp_norm, make_grid
from pdolab.lp_decomp import build_family
from pdolab.operators import a_constant, adjoint1_matrix_free, adjoint2_matrix_free, adjoint_bilinear, \
    apply_kernel, apply_linear, apply_multilinear, apply_S, apply_S_adjoint, compute_kernel, exp_matrix, \
    fit_kernel_decay, multilinear_batch, s_operator_norm, ssstar_multiplier, symbol_on_lattice
from pdolab.symbols import constant_symbol, gaussian_profile, gaussian_symbol, oscillatory_symbol, \
    plane_wave_symbol, separable_bilinear_symbol, tabulated_symbol, translation_symbol, x_modulated_symbol


def _field(grid, rng, real=False):
    v = rng.standard_normal(grid.shape)
    if not real:
        v = v + 1j * rng.standard_normal(grid.shape)
    return Field(grid, v)


class TestApplication:
    def test_constant_symbol_gives_product(self, rng):
        grid = make_grid(1, 2, math.pi, 32)
        f, g = _field(grid, rng), _field(grid, rng)
        T = apply_multilinear(constant_symbol(1.0, (1, 2)), [f, g])
        np.testing.assert_allclose(T.values, f.values * g.values, atol=1e-12)

    def test_constant_symbol_linear_identity(self, rng):
        grid = make_grid(2, 1, math.pi, 16)
        u = _field(grid, rng)
        np.testing.assert_allclose(apply_multilinear(constant_symbol(3.0, (2, 1)), [u]).values, 3 * u.values,
                                   atol=1e-12)

    def test_translation_symbol_shifts(self, rng):
        grid = make_grid(1, 2, math.pi, 32)
        f, g = _field(grid, rng), _field(grid, rng)
        T = apply_multilinear(translation_symbol([3 * grid.h], (1, 2)), [f, g])
        expect = np.roll(f.values, -3) * np.roll(g.values, -3)
        np.testing.assert_allclose(T.values, expect, atol=1e-12)

    def test_plane_wave_doubles_argument(self, rng):
        grid = make_grid(1, 1, math.pi, 32)
        u = _field(grid, rng)
        T = apply_multilinear(plane_wave_symbol(1), [u])
        idx = grid.index_of(2 * grid.coords())
        np.testing.assert_allclose(T.values, u.values[idx], atol=1e-11)

    def test_x_dependent_path_matches_multiplier(self, rng):
        grid = make_grid(1, 2, math.pi, 16)
        f, g = _field(grid, rng), _field(grid, rng)
        a = oscillatory_symbol(-0.5, 0.5, (1, 2))
        fast = apply_multilinear(a, [f, g])
        slow = apply_multilinear(x_modulated_symbol(a, 0.0), [f, g])
        np.testing.assert_allclose(fast.values, slow.values, atol=1e-12)

    def test_batch_matches_single(self, rng):
        grid = make_grid(1, 2, math.pi, 16)
        a = x_modulated_symbol(oscillatory_symbol(-0.5, 0.5, (1, 2)))
        fs = [_field(grid, rng) for _ in range(3)]
        gs = [_field(grid, rng) for _ in range(3)]
        batch = multilinear_batch(a, grid, [np.array([forward_ft(u).values for u in fs]),
                                            np.array([forward_ft(u).values for u in gs])])
        for t in range(3):
            np.testing.assert_allclose(batch[t], apply_multilinear(a, [fs[t], gs[t]]).values, atol=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(c=st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3), seed=st.integers(0, 1000))
    def test_multilinearity(self, c, seed):
        rng = np.random.default_rng(seed)
        grid = make_grid(1, 2, math.pi, 8)
        a = oscillatory_symbol(-0.5, 0.5, (1, 2))
        f, f2, g = _field(grid, rng), _field(grid, rng), _field(grid, rng)
        lhs = apply_multilinear(a, [c * f + f2, g]).values
        rhs = c * apply_multilinear(a, [f, g]).values + apply_multilinear(a, [f2, g]).values
        np.testing.assert_allclose(lhs, rhs, atol=1e-9 * max(1.0, abs(c)))

    def test_linear_on_product_space(self, rng):
        grid = make_grid(1, 2, math.pi, 16)
        u = MultiField(grid, rng.standard_normal((16, 16)))
        a = oscillatory_symbol(-1.0, 0.5, (2, 1))
        fast = apply_linear(a, u)
        slow = apply_linear(x_modulated_symbol(a, 0.0), u)
        np.testing.assert_allclose(fast.values, slow.values, atol=1e-12)

    def test_input_validation(self, rng):
        grid = make_grid(1, 2, math.pi, 16)
        other = make_grid(1, 2, math.pi, 32)
        a = oscillatory_symbol(-1.0, 0.5, (1, 2))
        with pytest.raises(ValueError):
            apply_multilinear(a, [_field(grid, rng)])
        with pytest.raises(ValueError):
            apply_multilinear(a, [_field(grid, rng), _field(other, rng)])
        with pytest.raises(ValueError):
            apply_linear(a, MultiField(grid, np.ones((16, 16))))

    def test_lattice_tables(self):
        grid = make_grid(1, 2, math.pi, 8)
        E = exp_matrix(grid, 1)
        assert E.shape == (8, 8)
        np.testing.assert_allclose(np.abs(E), 1.0)
        assert symbol_on_lattice(oscillatory_symbol(-1, 0.5, (1, 2)), grid).shape == (8, 8)
        assert symbol_on_lattice(x_modulated_symbol(gaussian_symbol((1, 2))), grid).shape == (8, 8, 8)


class TestKernels:
    def test_gaussian_kernel_closed_form(self):
        grid = make_grid(1, 1, 16.0, 512)
        K = compute_kernel(gaussian_symbol((1, 1)), build_family(grid), "total")
        y = grid.displacements()
        exact = math.sqrt(math.pi) / (2 * math.pi) * np.exp(-y ** 2 / 4)
        assert np.max(np.abs(K.values[0] - exact)) < 1e-8

    def test_bilinear_gaussian_kernel_factorises(self):
        grid = make_grid(1, 2, 8.0, 64)
        K = compute_kernel(gaussian_symbol((1, 2)), build_family(grid), "total")
        y = grid.displacements()
        k1 = math.sqrt(math.pi) / (2 * math.pi) * np.exp(-y ** 2 / 4)
        assert np.max(np.abs(K.values[0] - np.outer(k1, k1))) < 1e-8

    def test_total_kernel_needs_decay(self):
        grid = make_grid(1, 1, math.pi, 64)
        with pytest.raises(ValueError):
            compute_kernel(oscillatory_symbol(-1, 0.5), build_family(grid), "total")

    def test_kernel_representation_matches_operator(self, rng):
        grid = make_grid(1, 2, 4.0, 16)
        a = gaussian_symbol((1, 2), 2.0)
        K = compute_kernel(a, build_family(grid), "total")
        f, g = _field(grid, rng), _field(grid, rng)
        np.testing.assert_allclose(apply_kernel(K, [f, g]).values, apply_multilinear(a, [f, g]).values,
                                   atol=1e-12)

    def test_x_dependent_kernel(self, rng):
        grid = make_grid(1, 1, 4.0, 16)
        a = x_modulated_symbol(gaussian_symbol((1, 1)))
        K = compute_kernel(a, build_family(grid), "total")
        assert not K.x_independent
        u = _field(grid, rng)
        np.testing.assert_allclose(apply_kernel(K, [u]).values, apply_multilinear(a, [u]).values, atol=1e-12)

    def test_gaussian_decay_fit(self):
        grid = make_grid(1, 1, 16.0, 512)
        K = compute_kernel(gaussian_symbol((1, 1)), build_family(grid), "total")
        assert fit_kernel_decay(K, [6]).passed

    def test_oscillatory_summed_kernel_decays(self):
        grid = make_grid(1, 1, 16.0, 512)
        K = compute_kernel(oscillatory_symbol(-1.0, 0.5), build_family(grid), "summed")
        rep = fit_kernel_decay(K, [2])
        assert rep.passed, rep.trend

    def test_slow_kernel_fails_high_order(self):
        grid = make_grid(1, 1, 16.0, 512)
        K = compute_kernel(oscillatory_symbol(-1.0, 0.5), build_family(grid), "summed")
        assert not fit_kernel_decay(K, [8]).passed

    def test_too_few_samples(self):
        K = compute_kernel(gaussian_symbol((1, 1)), build_family(make_grid(1, 1, 1.0, 64)), "total")
        with pytest.raises(ValueError):
            fit_kernel_decay(K, [2], rmin=0.4, rmax=0.45)


class TestAdjoints:
    def _setup(self, rng, G=16, xdep=True):
        grid = make_grid(1, 2, math.pi, G)
        a = oscillatory_symbol(-0.5, 0.5, (1, 2))
        if xdep:
            a = x_modulated_symbol(a)
        return grid, a, [_field(grid, rng) for _ in range(3)]

    def test_dense_identities(self, rng):
        grid, a, (f, g, h) = self._setup(rng)
        D = adjoint_bilinear(a, grid)
        lhs = D.pair(D.apply(f, g), h)
        assert abs(lhs - D.pair(f, D.adjoint1(h, g))) < 1e-10 * abs(lhs)
        assert abs(lhs - D.pair(g, D.adjoint2(f, h))) < 1e-10 * abs(lhs)
        np.testing.assert_allclose(D.apply(f, g).values, apply_multilinear(a, [f, g]).values, atol=1e-12)

    def test_matrix_free_matches_dense(self, rng):
        grid, a, (f, g, h) = self._setup(rng)
        D = adjoint_bilinear(a, grid)
        np.testing.assert_allclose(adjoint1_matrix_free(a, h, g).values, D.adjoint1(h, g).values, atol=1e-12)
        np.testing.assert_allclose(adjoint2_matrix_free(a, f, h).values, D.adjoint2(f, h).values, atol=1e-12)

    def test_dense_size_limit(self):
        grid = make_grid(1, 2, math.pi, 128)
        with pytest.raises(ValueError):
            adjoint_bilinear(oscillatory_symbol(-0.5, 0.5, (1, 2)), grid)

    def test_tabulated_x_dependent(self, rng):
        grid = make_grid(1, 2, math.pi, 8)
        a = tabulated_symbol(rng.standard_normal((8, 8, 8)) + 1j * rng.standard_normal((8, 8, 8)), grid, 2,
                             x_dependent=True)
        f, g, h = (_field(grid, rng) for _ in range(3))
        D = adjoint_bilinear(a, grid)
        lhs = D.pair(D.apply(f, g), h)
        assert abs(lhs - D.pair(f, D.adjoint1(h, g))) < 1e-10 * abs(lhs)


class TestSOperator:
    def test_adjoint_pairing(self, rng):
        grid = make_grid(1, 2, math.pi, 16)
        a = tabulated_symbol(rng.standard_normal((16, 16)), grid, 2)
        F = MultiField(grid, rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16)))
        g = _field(grid, rng)
        lhs = grid.h * np.sum(apply_S(a, F).values * np.conj(g.values))
        rhs = grid.h ** 2 * np.sum(F.values * np.conj(apply_S_adjoint(a, g).values))
        assert abs(lhs - rhs) < 1e-10 * abs(lhs)

    def test_bound_and_sharpness(self, rng):
        grid = make_grid(1, 2, math.pi, 32)
        a = tabulated_symbol(rng.standard_normal((32, 32)) + 1j * rng.standard_normal((32, 32)), grid, 2)
        A = a_constant(a, grid)
        for _ in range(5):
            F = MultiField(grid, rng.standard_normal((32, 32)))
            assert lp_norm(apply_S(a, F), 2) <= A * lp_norm(F, 2) * (1 + 1e-10)
        assert abs(s_operator_norm(a, grid) - A) < 1e-6 * A

    def test_separable_multiplier_closed_form(self):
        grid = make_grid(1, 2, math.pi, 32)
        g, h = gaussian_profile(1.0), gaussian_profile(0.7)
        a = separable_bilinear_symbol(g, h)
        xi = grid.frequencies()[:, None]
        h2 = grid.dxi / (2 * math.pi) * np.sum(h(xi) ** 2)
        m = ssstar_multiplier(a, grid).values.real
        np.testing.assert_allclose(m, g(xi) ** 2 * h2, atol=1e-12)

    def test_zero_symbol(self):
        grid = make_grid(1, 2, math.pi, 8)
        a = tabulated_symbol(np.zeros((8, 8)), grid, 2)
        assert a_constant(a, grid) == 0.0
        assert s_operator_norm(a, grid) == 0.0

    def test_x_dependent_symbol_rejected(self):
        grid = make_grid(1, 2, math.pi, 8)
        with pytest.raises(ValueError):
            ssstar_multiplier(x_modulated_symbol(gaussian_symbol((1, 2))), grid)
