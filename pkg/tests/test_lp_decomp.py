import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdolab.grid import make_grid
from pdolab.lp_decomp import build_family, check_derivative_bounds, check_piece_bounds, dyadic_piece, \
    phi0_profile, smooth_step
from pdolab.symbols import constant_symbol, oscillatory_symbol


class TestProfile:
    def test_smooth_step_limits(self):
        t = np.array([-1.0, 0.0, 0.5, 1.0, 3.0])
        np.testing.assert_allclose(smooth_step(t), [0.0, 0.0, 0.5, 1.0, 1.0])

    @settings(max_examples=50, deadline=None)
    @given(t=st.floats(0.0, 1.0))
    def test_smooth_step_symmetry(self, t):
        assert smooth_step(t) + smooth_step(1.0 - t) == pytest.approx(1.0, abs=1e-15)

    def test_phi0_plateau_and_support(self):
        r = np.linspace(0, 3, 301)
        v = phi0_profile(r)
        assert np.all(v[r <= 1] == 1.0)
        assert np.all(v[r >= 2] == 0.0)
        assert np.all(np.diff(v) <= 0)


class TestFamily:
    def test_partition_on_resolved_band(self, rng):
        grid = make_grid(1, 2, np.pi, 64)
        fam = build_family(grid)
        pts = rng.uniform(-1, 1, (10_000, 2)) * 2.0 ** (fam.k_max - 1) / np.sqrt(2)
        assert np.max(np.abs(fam.partial_sum(fam.k_max, pts) - 1.0)) < 1e-12

    def test_pieces_vanish_off_support(self, rng):
        fam = build_family(make_grid(1, 1, np.pi, 256))
        for k in range(1, 5):
            lo, hi = fam.support(k)
            r = rng.uniform(0, 4 * hi, 2000)[:, None]
            v = fam.phi(k, r)
            assert np.all(v[(r[:, 0] < lo) | (r[:, 0] > hi)] == 0.0)
            assert np.all(v >= 0)

    def test_k_max_from_nyquist(self):
        grid = make_grid(1, 1, np.pi, 64)
        fam = build_family(grid)
        assert fam.k_max == 5
        assert fam.resolved_max() == 4

    def test_coarse_grid_rejected(self):
        with pytest.raises(ValueError):
            build_family(make_grid(1, 1, np.pi, 4))

    def test_negative_index_rejected(self):
        fam = build_family(make_grid(1, 1, np.pi, 64))
        with pytest.raises(ValueError):
            fam.phi(-1, np.zeros((1, 1)))

    @pytest.mark.parametrize("dim", [1, 2])
    def test_derivative_bounds_k_stable(self, dim):
        fam = build_family(make_grid(1, dim, np.pi, 64))
        rep = check_derivative_bounds(fam, 2, ks=range(1, 6))
        assert rep.passed, rep.trend


class TestPieces:
    def test_piece_of_constant_is_phi_k(self):
        grid = make_grid(1, 1, np.pi, 64)
        fam = build_family(grid)
        piece = dyadic_piece(constant_symbol(2.0, (1, 1)), fam, 3)
        xi = np.linspace(0, 20, 50)[:, None]
        np.testing.assert_allclose(piece(np.zeros(1), xi), 2.0 * fam.phi(3, xi))

    def test_pieces_sum_to_symbol(self):
        grid = make_grid(1, 1, np.pi, 64)
        fam = build_family(grid)
        a = oscillatory_symbol(-0.5, 0.5)
        xi = np.linspace(-8, 8, 101)[:, None]
        total = sum(dyadic_piece(a, fam, k)(np.zeros(1), xi) for k in range(fam.k_max + 1))
        np.testing.assert_allclose(total, a(np.zeros(1), xi), atol=1e-13)

    def test_oscillatory_piece_bounds(self):
        fam = build_family(make_grid(1, 1, np.pi, 256))
        rep = check_piece_bounds(oscillatory_symbol(-1.0, 0.5), fam, 2, ks=range(1, 8))
        assert rep.passed, rep.trend

    def test_wrong_rho_breaks_piece_bounds(self):
        fam = build_family(make_grid(1, 1, np.pi, 256))
        a = oscillatory_symbol(-1.0, 0.5)
        a = a.with_class(a.claimed_class.with_rho(1.0))
        assert not check_piece_bounds(a, fam, 2, ks=range(1, 8)).passed

    def test_index_above_k_max_rejected(self):
        fam = build_family(make_grid(1, 1, np.pi, 64))
        with pytest.raises(ValueError):
            dyadic_piece(constant_symbol(1.0, (1, 1)), fam, fam.k_max + 1)
