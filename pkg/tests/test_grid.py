import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdolab.grid import INF, ExponentTriple, Field, MultiField, forward_ft, inverse_ft, iterated_norm, \
    load_field, lp_norm, make_grid, mixed_norm, save_field


class TestGridSpec:
    def test_spacings(self):
        g = make_grid(1, 2, 4.0, 64)
        assert g.h == pytest.approx(0.125)
        assert g.dxi == pytest.approx(math.pi / 4)
        assert g.nyquist == pytest.approx(8 * math.pi)
        assert g.shape == (64,)
        assert g.product_shape == (64, 64)

    @pytest.mark.parametrize("G", [3, 6, 48, 1])
    def test_rejects_bad_sizes(self, G):
        with pytest.raises(ValueError):
            make_grid(1, 1, 1.0, G)

    @pytest.mark.parametrize("kw", [{"L": 0.0}, {"L": -1.0}, {"offset": 1.0}, {"n": 0}])
    def test_rejects_bad_parameters(self, kw):
        args = {"n": 1, "N": 1, "L": 1.0, "G": 8, **kw}
        with pytest.raises(ValueError):
            make_grid(**args)

    def test_offset_lattice_avoids_origin(self):
        g = make_grid(1, 1, 1.0, 16, 0.5)
        assert np.min(np.abs(g.coords())) == pytest.approx(g.h / 2)
        assert 0.0 in make_grid(1, 1, 1.0, 16).coords()

    def test_index_of_is_periodic(self):
        g = make_grid(1, 1, 1.0, 16)
        assert g.index_of(-1.0) == 0
        assert g.index_of(1.0) == 0
        assert g.index_of(0.0) == 8

    def test_frequencies_are_fft_ordered(self):
        g = make_grid(1, 1, 2.0, 8)
        k = g.frequencies() / g.dxi
        np.testing.assert_allclose(k, [0, 1, 2, 3, -4, -3, -2, -1])


class TestField:
    def test_values_are_read_only(self, grid1):
        u = Field(grid1, np.ones(64))
        with pytest.raises(ValueError):
            u.values[0] = 2.0

    def test_shape_is_checked(self, grid1):
        with pytest.raises(ValueError):
            Field(grid1, np.ones(10))

    def test_non_finite_rejected(self, grid1):
        v = np.ones(64)
        v[3] = np.nan
        with pytest.raises(ValueError):
            Field(grid1, v)

    def test_multifield_shape(self, grid2):
        assert MultiField(grid2, np.zeros(32 * 32)).values.shape == (32, 32)

    def test_save_load_round_trip(self, tmp_path, grid2, rng):
        u = MultiField(grid2, rng.standard_normal((32, 32)) + 1j * rng.standard_normal((32, 32)))
        save_field(tmp_path / "u.bin", u)
        v = load_field(tmp_path / "u.bin")
        assert isinstance(v, MultiField)
        assert v.grid == u.grid
        np.testing.assert_array_equal(v.values, u.values)


class TestTransforms:
    def test_gaussian_closed_form(self):
        g = make_grid(1, 1, 16.0, 512)
        x = g.coords()
        uh = forward_ft(Field(g, np.exp(-x ** 2 / 2))).values
        xi = g.frequencies()
        assert np.max(np.abs(uh - math.sqrt(2 * math.pi) * np.exp(-xi ** 2 / 2))) < 1e-10

    def test_gaussian_two_dimensional(self):
        g = make_grid(2, 1, 12.0, 128)
        pts = g.points()
        u = np.exp(-np.sum(pts ** 2, axis=-1) / 2).reshape(g.shape)
        uh = forward_ft(Field(g, u)).values.ravel()
        xi = g.frequency_points(2)
        assert np.max(np.abs(uh - 2 * math.pi * np.exp(-np.sum(xi ** 2, axis=-1) / 2))) < 1e-10

    def test_shifted_gaussian_phase(self):
        g = make_grid(1, 1, 16.0, 512, 0.5)
        x = g.coords()
        uh = forward_ft(Field(g, np.exp(-(x - 1.5) ** 2 / 2))).values
        xi = g.frequencies()
        exact = math.sqrt(2 * math.pi) * np.exp(-xi ** 2 / 2) * np.exp(-1.5j * xi)
        assert np.max(np.abs(uh - exact)) < 1e-10

    def test_plane_wave_is_a_spike(self):
        g = make_grid(1, 1, math.pi, 32)
        k = 3 * g.dxi
        uh = forward_ft(Field(g, np.exp(1j * k * g.coords()))).values
        expect = np.zeros(32, complex)
        expect[3] = 2 * g.L
        np.testing.assert_allclose(uh, expect, atol=1e-12)

    @pytest.mark.parametrize("offset", [0.0, 0.5])
    def test_round_trip_and_plancherel(self, rng, offset):
        g = make_grid(1, 1, 16.0, 512, offset)
        u = Field(g, rng.standard_normal(512) + 1j * rng.standard_normal(512))
        uh = forward_ft(u)
        np.testing.assert_allclose(inverse_ft(uh).values, u.values, atol=1e-12)
        lhs = g.dxi * np.sum(np.abs(uh.values) ** 2)
        rhs = 2 * math.pi * g.h * np.sum(np.abs(u.values) ** 2)
        assert abs(lhs - rhs) / rhs < 1e-10

    def test_domain_is_checked(self, grid1):
        u = Field(grid1, np.ones(64))
        with pytest.raises(ValueError):
            inverse_ft(u)
        with pytest.raises(ValueError):
            forward_ft(forward_ft(u))


class TestNorms:
    @pytest.mark.parametrize("p", [1.0, 2.0, 3.5])
    def test_constant(self, grid1, p):
        assert lp_norm(Field(grid1, np.ones(64)), p) == pytest.approx((2 * math.pi) ** (1 / p))

    def test_inf_norm_and_weights(self, grid1):
        v = np.arange(64.0)
        w = np.ones(64)
        w[-1] = 0.0
        assert lp_norm(Field(grid1, v), INF) == 63.0
        assert lp_norm(Field(grid1, v), INF, w) == 62.0
        assert lp_norm(Field(grid1, np.ones(64)), 1, 2 * w) == pytest.approx(2 * grid1.h * 63)

    def test_quasi_norm_needs_flag(self, grid1):
        u = Field(grid1, np.ones(64))
        with pytest.raises(ValueError):
            lp_norm(u, 0.5)
        assert lp_norm(u, 0.5, allow_quasi=True) == pytest.approx((2 * math.pi) ** 2)

    def test_negative_weight_rejected(self, grid1):
        with pytest.raises(ValueError):
            lp_norm(Field(grid1, np.ones(64)), 2, -np.ones(64))

    @settings(max_examples=40, deadline=None)
    @given(c=st.floats(1e-3, 1e3), p=st.sampled_from([1.0, 1.5, 2.0, 4.0, INF]))
    def test_homogeneity(self, c, p):
        g = make_grid(1, 1, 1.0, 16)
        v = np.cos(np.arange(16)) + 2j
        assert lp_norm(Field(g, c * v), p) == pytest.approx(c * lp_norm(Field(g, v), p), rel=1e-12)

    def test_mixed_norm_of_product(self, grid2):
        x = grid2.coords()
        f, g = np.exp(-x ** 2), 1 + np.cos(x) ** 2
        u = MultiField(grid2, f[:, None] * g[None, :])
        g1 = make_grid(1, 1, grid2.L, grid2.G)
        expect = lp_norm(Field(g1, f), 1.5) * lp_norm(Field(g1, g), 3.0)
        assert mixed_norm(u, [1.5, 3.0]) == pytest.approx(expect, rel=1e-12)

    def test_equal_exponents_reduce_to_lp(self, grid2, rng):
        u = MultiField(grid2, rng.standard_normal((32, 32)))
        assert mixed_norm(u, [2.5, 2.5]) == pytest.approx(lp_norm(u, 2.5), rel=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(p=st.floats(1.0, 4.0), dq=st.floats(0.0, 4.0), seed=st.integers(0, 10 ** 6))
    def test_minkowski_order(self, p, dq, seed):
        q = p + dq
        v = np.random.default_rng(seed).standard_normal((8, 8))
        inner_first = iterated_norm(v, [p, q], 1, 0.25)
        swapped = iterated_norm(v.T, [q, p], 1, 0.25)
        assert inner_first <= swapped * (1 + 1e-12)

    def test_exponent_count_checked(self, grid2):
        with pytest.raises(ValueError):
            mixed_norm(MultiField(grid2, np.ones((32, 32))), [2.0])


class TestExponentTriple:
    def test_consistency_enforced(self):
        with pytest.raises(ValueError):
            ExponentTriple(2, 2, 2)
        with pytest.raises(ValueError):
            ExponentTriple(0.5, INF, 0.5)

    def test_from_reciprocals(self):
        t = ExponentTriple.from_reciprocals(0.0, 0.5)
        assert (t.p, t.q, t.r) == (INF, 2.0, 2.0)
        assert t.reciprocals == (0.0, 0.5, 0.5)

    def test_triangles(self):
        assert ExponentTriple(2, 2, 1).in_l2_triangle()
        assert ExponentTriple(INF, 2, 2).in_l2_triangle()
        assert not ExponentTriple(1, INF, 1).in_l2_triangle()
        assert ExponentTriple(1, INF, 1).in_triangle()
        assert not ExponentTriple(INF, INF, INF).in_l2_triangle()
