import math

import numpy as np
import pytest

from pdolab.grid import make_grid
from pdolab.operators import ssstar_multiplier
from pdolab.symbols import SymbolClass, bracket, compact_rho0_symbol, constant_symbol, estimate_seminorms, \
    gaussian_profile, gaussian_symbol, hypo_functional, oscillatory_symbol, parse_symbol_spec, \
    plane_wave_symbol, random_sign_profile, rough_x_symbol, separable_bilinear_symbol, sign_sin_profile, \
    ssstar_pairs, symbol_from_descriptor, tabulated_symbol, translation_symbol, truncated_symbol, \
    x_envelope_symbol, x_modulated_symbol


class TestConstructors:
    def test_bracket(self):
        np.testing.assert_allclose(bracket([[0.0, 0.0], [3.0, 4.0]]), [1.0, math.sqrt(26.0)])

    def test_oscillatory_values_and_derivative(self):
        a = oscillatory_symbol(-0.5, 0.5, (1, 2))
        X = np.array([[1.0, 2.0]])
        b = math.sqrt(6.0)
        assert a(np.zeros(1), X)[0] == pytest.approx(b ** -0.5 * np.exp(1j * b ** 0.5))
        h = 1e-6
        fd = (a(np.zeros(1), X + [h, 0]) - a(np.zeros(1), X - [h, 0])) / (2 * h)
        assert a.d_xi(np.zeros(1), X, (1, 0))[0] == pytest.approx(fd[0], rel=1e-7)

    @pytest.mark.parametrize("kw", [{"m": 0.5, "rho": 0.5}, {"m": -1, "rho": 0.0}, {"m": -1, "rho": 1.5}])
    def test_oscillatory_parameter_checks(self, kw):
        with pytest.raises(ValueError):
            oscillatory_symbol(kw["m"], kw["rho"])

    def test_undeclared_derivative_raises(self):
        with pytest.raises(ValueError):
            oscillatory_symbol(-1, 0.5).d_xi(np.zeros(1), np.ones((1, 1)), (2,))

    def test_arity_checked_on_call(self):
        with pytest.raises(ValueError):
            oscillatory_symbol(-1, 0.5, (1, 2))(np.zeros(1), np.zeros((3, 1)))

    def test_rough_profile_flips_oscillation(self):
        grid = make_grid(1, 1, math.pi, 16)
        b = np.where(grid.coords() < 0, -1.0, 1.0)
        a = rough_x_symbol(-1.0, 0.5, b, (1, 1), grid)
        xi = np.array([[2.0]])
        left = a(np.array([-1.0]), xi)[0]
        right = a(np.array([1.0]), xi)[0]
        assert left == pytest.approx(np.conj(right))
        assert a.claimed_class.kind == "LinfS"
        assert not a.x_smooth

    def test_rough_profile_must_be_real(self):
        grid = make_grid(1, 1, math.pi, 16)
        with pytest.raises(ValueError):
            rough_x_symbol(-1.0, 0.5, 1j * np.ones(16), (1, 1), grid)

    def test_profiles(self):
        grid = make_grid(1, 1, math.pi, 32)
        s = random_sign_profile(grid, 3)
        assert set(np.unique(s)) <= {-1.0, 1.0}
        np.testing.assert_array_equal(s, random_sign_profile(grid, 3))
        t = sign_sin_profile(grid)
        assert np.all(t[grid.coords() > 0.1] == 1.0)

    def test_compact_rho0_support_and_order(self):
        a = compact_rho0_symbol(-3.0, 4.0, (1, 1))
        assert a(np.zeros(1), np.array([[9.0]]))[0] == 0
        assert a.claimed_class.rho == 0.0
        with pytest.raises(ValueError):
            compact_rho0_symbol(-0.5, 4.0, (1, 1))

    def test_separable_closed_form(self):
        g, h = gaussian_profile(1.0), gaussian_profile(0.5, 1.0)
        a = separable_bilinear_symbol(g, h)
        X = np.array([[0.3, 1.2]])
        assert a(np.zeros(1), X)[0] == pytest.approx(np.exp(-1.5 ** 2 / 2) * np.exp(-0.2 ** 2 / 0.5))

    def test_modulation_and_envelope(self):
        base = gaussian_symbol((1, 1))
        mod = x_modulated_symbol(base, 2.0)
        x = np.array([0.7])
        X = np.array([[0.5]])
        assert mod(x, X)[0] == pytest.approx(np.exp(2j * np.sin(0.7)) * np.exp(-0.25))
        env = x_envelope_symbol(oscillatory_symbol(-1.0, 0.5), width=2.0)
        assert abs(env(np.array([2.0]), np.zeros((1, 1)))[0]) == pytest.approx(np.exp(-0.5))
        assert env.claimed_class.kind == "LpMuS"

    def test_translation_and_plane_wave(self):
        a = translation_symbol([0.5], (1, 1))
        assert a(np.zeros(1), np.array([[2.0]]))[0] == pytest.approx(np.exp(1j))
        pw = plane_wave_symbol(1)
        x, X = np.array([0.3]), np.array([[1.7]])
        assert abs(pw(x, X)[0]) == pytest.approx(1.0)

    def test_truncation(self):
        a = truncated_symbol(constant_symbol(1.0, (1, 1)), 2)
        vals = a(np.zeros(1), np.array([[1.0], [3.9], [8.5]]))
        np.testing.assert_allclose(vals.real, [1.0, 1.0, 0.0], atol=1e-12)

    def test_tabulated_lookup(self, rng):
        grid = make_grid(1, 2, math.pi, 8)
        tab = rng.standard_normal((8, 8))
        a = tabulated_symbol(tab, grid, 2)
        assert a(np.zeros(1), np.array([[grid.dxi * 2, -grid.dxi]]))[0] == pytest.approx(tab[2, 7])
        with pytest.raises(ValueError):
            tabulated_symbol(tab[:4], grid, 2)


class TestDescriptors:
    def test_short_spec(self):
        d = parse_symbol_spec("osc:m=-1,rho=0.5", (1, 2))
        assert d == {"constructor": "oscillatory", "params": {"m": -1.0, "rho": 0.5, "n": 1, "N": 2}}

    @pytest.mark.parametrize("sym", [
        oscillatory_symbol(-1.0, 0.5, (1, 2)),
        x_modulated_symbol(gaussian_symbol((1, 2), 2.0), 0.5),
        truncated_symbol(oscillatory_symbol(-0.5, 0.5), 3),
        x_envelope_symbol(oscillatory_symbol(-0.5, 0.5)),
    ])
    def test_round_trip(self, sym):
        grid = make_grid(1, sym.N, math.pi, 16)
        again = symbol_from_descriptor(sym.descriptor, grid)
        x = np.array([[0.3], [-1.1]])[:, None, :]
        X = np.random.default_rng(0).normal(size=(1, 5, sym.dim))
        np.testing.assert_allclose(again(x, X), sym(x, X))

    def test_rough_round_trip(self):
        grid = make_grid(1, 1, math.pi, 16)
        d = {"constructor": "rough_x", "seed": 4, "params": {"m": -1.0, "rho": 0.5}}
        a, b = symbol_from_descriptor(d, grid), symbol_from_descriptor(d, grid)
        x = grid.points()[:, None, :]
        X = np.ones((1, 1, 1))
        np.testing.assert_array_equal(a(x, X), b(x, X))

    def test_unknown_constructor(self):
        with pytest.raises(ValueError):
            symbol_from_descriptor({"constructor": "nope"})


class TestSeminorms:
    def test_oscillatory_finite_and_probe_stable(self):
        a = oscillatory_symbol(-0.5, 0.5)
        g1, g2 = make_grid(1, 1, math.pi, 64), make_grid(1, 1, 2 * math.pi, 128)
        e1 = estimate_seminorms(a, 2, 0, g1)
        e2 = estimate_seminorms(a, 2, 0, g2)
        for key, c in e1.constants.items():
            assert math.isfinite(c)
            assert abs(e2.constants[key] / c - 1) < 0.10

    def test_probe_monotonicity(self):
        a = oscillatory_symbol(-0.5, 0.5)
        grid = make_grid(1, 1, math.pi, 64)
        xi = grid.frequency_points(1)
        small = estimate_seminorms(a, 2, 0, xi_probes=xi[:20], grid=grid)
        big = estimate_seminorms(a, 2, 0, xi_probes=xi, grid=grid)
        shuffled = estimate_seminorms(a, 2, 0, xi_probes=xi[::-1], grid=grid)
        for key in small.constants:
            assert small.constants[key] <= big.constants[key]
            assert shuffled.constants[key] == big.constants[key]

    def test_wrong_rho_grows_with_band(self):
        a = oscillatory_symbol(-0.5, 0.5)
        cls = a.claimed_class.with_rho(1.0)
        c = [estimate_seminorms(a, 1, 0, make_grid(1, 1, math.pi, G), cls=cls).get((1,)) for G in (64, 1024)]
        assert c[1] > 2 * c[0]

    def test_rough_symbol_frequency_seminorms(self):
        grid = make_grid(1, 1, math.pi, 64)
        a = rough_x_symbol(-1.0, 0.5, sign_sin_profile(grid), (1, 1), grid, profile="sign_sin")
        est = estimate_seminorms(a, 2, 0, grid)
        assert all(math.isfinite(v) for v in est.constants.values())
        with pytest.raises(ValueError):
            estimate_seminorms(a, 1, 1, grid)

    def test_lp_reduction_for_integrable_symbols(self):
        grid = make_grid(1, 1, 4 * math.pi, 128)
        a = x_envelope_symbol(oscillatory_symbol(-0.5, 0.5), width=1.0, p=2.0)
        est = estimate_seminorms(a, 0, 0, grid)
        assert est.get((0,)) == pytest.approx(math.pi ** 0.25, rel=1e-6)

    def test_x_derivatives_of_modulated_symbol(self):
        grid = make_grid(1, 1, math.pi, 32)
        a = x_modulated_symbol(oscillatory_symbol(0.0, 1.0), 1.0)
        est = estimate_seminorms(a, 0, 1, grid)
        assert est.get((0,), (1,)) == pytest.approx(1.0, rel=1e-3)


class TestHypoFunctional:
    def test_matches_multiplier_for_x_independent_symbols(self):
        grid = make_grid(1, 2, math.pi, 16)
        a = separable_bilinear_symbol(gaussian_profile(1.0), gaussian_profile(1.0))
        rep = hypo_functional(a, 0, grid, np.zeros((1, 1)))
        ball = grid.h * np.sum(np.abs(grid.coords()) <= 1.0 + 1e-12)
        m = ssstar_multiplier(a, grid).values.real
        assert rep.trend["(0,)"] == pytest.approx(math.sqrt(ball * m.max()), rel=1e-12)

    def test_needs_bilinear_smooth_symbol(self):
        grid = make_grid(1, 2, math.pi, 16)
        with pytest.raises(ValueError):
            hypo_functional(oscillatory_symbol(-1, 0.5, (1, 1)), 0, grid, np.zeros((1, 1)))
        rough = rough_x_symbol(-1.0, 0.5, np.ones(16), (1, 2), grid)
        with pytest.raises(ValueError):
            hypo_functional(rough, 1, grid, np.zeros((1, 1)))

    def test_pairs_wrap(self):
        grid = make_grid(1, 2, math.pi, 8)
        zetas, pairs = ssstar_pairs(grid)
        assert pairs.shape == (8, 8, 2)
        k = np.rint(pairs / grid.dxi).astype(int)
        assert np.all((k >= -4) & (k < 4))
        assert np.all(((k[..., 0] + k[..., 1]) - np.rint(zetas / grid.dxi).astype(int)) % 8 == 0)


def test_symbol_class_validation():
    with pytest.raises(ValueError):
        SymbolClass("Foo", 0.0, 0.5)
    with pytest.raises(ValueError):
        SymbolClass("LinfS", 0.0, 1.5)
