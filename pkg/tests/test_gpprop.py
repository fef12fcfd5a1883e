import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from madelung_flow.errors import ConfigError, DomainError, RangeError
from madelung_flow.gpprop import (
    SpectralGrid,
    collapse_check,
    dft,
    dft2,
    energy,
    field_from_table,
    gaussian_packet,
    max_stable_dt,
    norm,
    selfsimilar_potential,
    split_step,
)
from madelung_flow.reconstruct import ComplexField
from madelung_flow.similarity import PhysParams

import oracles

P = PhysParams()


class TestDft:
    def test_impulse(self):
        assert np.allclose(dft([1, 0, 0, 0]), [1, 1, 1, 1], atol=0)

    def test_constant(self):
        out = dft(np.full(8, 2.5 - 1j))
        assert out[0] == pytest.approx(8 * (2.5 - 1j))
        assert np.max(np.abs(out[1:])) < 1e-14

    @pytest.mark.parametrize("n", [1, 2, 4, 16, 64])
    def test_against_naive(self, n):
        rng = np.random.default_rng(n)
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        ref = np.array(oracles.naive_dft(list(x)))
        assert np.max(np.abs(dft(x) - ref)) < 1e-12 * max(1, np.abs(ref).max())
        refi = np.array(oracles.naive_dft(list(x), inverse=True))
        assert np.max(np.abs(dft(x, "inverse") - refi)) < 1e-12

    def test_round_trip_and_parseval(self):
        rng = np.random.default_rng(7)
        x = rng.normal(size=1024) + 1j * rng.normal(size=1024)
        X = dft(x)
        assert np.linalg.norm(dft(X, "inverse") - x) / np.linalg.norm(x) <= 1e-12
        ratio = np.sum(np.abs(X) ** 2) / (1024 * np.sum(np.abs(x) ** 2))
        assert abs(ratio - 1) <= 1e-12
        # the 64-sample prefix against the direct sum
        pre = x[:64]
        assert np.max(np.abs(dft(pre) - np.array(oracles.naive_dft(list(pre))))) < 1e-11

    @pytest.mark.parametrize("n", [3, 6, 100])
    def test_non_power_of_two(self, n):
        with pytest.raises(DomainError):
            dft(np.ones(n))

    def test_bad_direction(self):
        with pytest.raises(ConfigError):
            dft(np.ones(4), "sideways")

    def test_two_dimensional(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(8, 16)) + 0j
        ref = np.array([oracles.naive_dft(list(r)) for r in a])
        ref = np.array([oracles.naive_dft(list(c)) for c in ref.T]).T
        assert np.max(np.abs(dft2(a) - ref)) < 1e-11
        assert np.max(np.abs(dft2(dft2(a), "inverse") - a)) < 1e-14

    @given(st.integers(0, 8), st.integers(0, 2**31 - 1))
    @settings(max_examples=30)
    def test_linearity(self, logn, seed):
        n = 2**logn
        rng = np.random.default_rng(seed)
        x, y = rng.normal(size=(2, n)) + 1j * rng.normal(size=(2, n))
        assert np.allclose(dft(2 * x - 3j * y), 2 * dft(x) - 3j * dft(y), atol=1e-11)


class TestGrid:
    def test_wavenumbers(self):
        g = SpectralGrid((8,), (2 * math.pi,))
        assert list(g.wavenumbers(0)) == [0, 1, 2, 3, -4, -3, -2, -1]
        assert g.axis(0)[0] == -math.pi
        assert g.cell_volume == pytest.approx(2 * math.pi / 8)

    def test_rejects(self):
        with pytest.raises(DomainError):
            SpectralGrid((12,), (1.0,))
        with pytest.raises(DomainError):
            SpectralGrid((8,), (0.0,))
        with pytest.raises(DomainError):
            SpectralGrid((8, 8, 8), (1.0,))

    def test_shared_box_length(self):
        g = SpectralGrid((8, 16), (4.0,))
        assert g.box_length == (4.0, 4.0) and g.shape == (8, 16)


def _gauss_field(n=1024, L=80.0, k0=0.0):
    g = SpectralGrid((n,), (L,))
    return ComplexField(g, gaussian_packet(g.axis(0), 0.0, 1.0, k0, p=P))


class TestSplitStep:
    def test_free_gaussian(self):
        fld = _gauss_field(k0=1.0)
        r = split_step(fld, P, 1e-3, 1000)
        x = fld.grid.axis(0)
        err = math.sqrt(np.sum(np.abs(r.final.values - gaussian_packet(x, 1.0, 1.0, 1.0, p=P)) ** 2) * fld.grid.cell_volume)
        assert err <= 1e-6
        assert r.t_final == pytest.approx(1.0)

    def test_second_order_in_time(self):
        # the nonlinear packet has a splitting error; compare against a fine-step run
        p = P.with_n(2.0)
        fld = _gauss_field(128, 40.0)
        ref = split_step(fld, p, 1e-4, 5000).final.values
        errs = [np.linalg.norm(split_step(fld, p, dt, int(round(0.5 / dt))).final.values - ref) for dt in (1e-2, 5e-3)]
        assert 3.6 < errs[0] / errs[1] < 4.4

    def test_plane_wave_nonlinear(self):
        g = SpectralGrid((64,), (2 * math.pi,))
        x = g.axis(0)
        k, n = 3.0, 0.8
        r = split_step(ComplexField(g, np.exp(1j * k * x)), P.with_n(n), 1e-3, 1000, edge_check=False)
        exact = np.exp(1j * (k * x - (k * k / 2 + n) * 1.0))
        assert np.max(np.abs(r.final.values - exact)) <= 1e-8

    def test_zero_stays_zero(self):
        g = SpectralGrid((32,), (10.0,))
        r = split_step(ComplexField(g, np.zeros(32)), P.with_n(1.0), 1e-2, 50)
        assert np.all(r.final.values == 0)
        assert np.all(r.norm_history == 0)

    def test_aliasing_names_max_dt(self):
        fld = _gauss_field()
        dtm = max_stable_dt(fld.grid, P)
        with pytest.raises(ConfigError, match=repr(dtm)[:8]):
            split_step(fld, P, 1.01 * dtm, 1)

    def test_reversibility(self):
        p = P.with_n(1.0)
        fld = _gauss_field(256, 40.0)
        fwd = split_step(fld, p, 1e-3, 500)
        back = split_step(fwd.final, p, -1e-3, 500, t0=fwd.t_final)
        assert np.linalg.norm(back.final.values - fld.values) / np.linalg.norm(fld.values) <= 1e-8
        assert back.t_final == pytest.approx(0.0, abs=1e-12)

    def test_history_lengths(self):
        r = split_step(_gauss_field(64, 20.0), P, 1e-3, 30, record_every=10)
        assert len(r.norm_history) == len(r.energy_history) == 4 and r.steps_taken == 30

    def test_energy_conserved(self):
        r = split_step(_gauss_field(256, 40.0), P.with_n(0.5), 1e-3, 400, record_every=100)
        assert np.ptp(r.energy_history) < 1e-5 * abs(r.energy_history[0])

    def test_energy_of_gaussian(self):
        # free packet, k0 = 0: <p^2>/2 = 1/(8 sigma^2)
        fld = _gauss_field()
        assert energy(fld.values, fld.grid, P) == pytest.approx(1 / 8, rel=1e-12)
        assert norm(fld.values, fld.grid) == pytest.approx(1.0, rel=1e-12)

    def test_edge_warning(self):
        g = SpectralGrid((64,), (4.0,))
        with pytest.warns(RuntimeWarning, match="edge"):
            split_step(ComplexField(g, gaussian_packet(g.axis(0), 0.0, 1.0)), P, 1e-3, 2)

    def test_two_dimensional_product(self):
        g = SpectralGrid((64, 64), (24.0,))
        X, Y = g.mesh()
        psi0 = gaussian_packet(X, 0, 1.0, 0.5, p=P) * gaussian_packet(Y, 0, 1.0, p=P)
        r = split_step(ComplexField(g, psi0), P, 1e-2, 50)
        exact = gaussian_packet(X, 0.5, 1.0, 0.5, p=P) * gaussian_packet(Y, 0.5, 1.0, p=P)
        assert np.max(np.abs(r.final.values - exact)) < 1e-9

    def test_rejects(self):
        fld = _gauss_field(64, 20.0)
        with pytest.raises(ConfigError):
            split_step(fld, P, 0.0, 1)
        with pytest.raises(ConfigError):
            split_step(fld, P, 1e-3, -1)
        with pytest.raises(DomainError):
            from madelung_flow.reconstruct import SpacetimeGrid
            grid = SpacetimeGrid.uniform((-1, 1), 5, (1, 2), 5)
            split_step(ComplexField(grid, np.zeros((5, 5))), P, 1e-3, 1)

    def test_potential_is_applied(self):
        # uniform state in U = 1/t^2 (v = 1, beta = 1): phase -int dt/t^2 = 1/t1 - 1/t0
        g = SpectralGrid((16,), (5.0,))
        pot = selfsimilar_potential(lambda e: np.ones_like(e), 1.0)
        r = split_step(ComplexField(g, np.ones(16)), P, 1e-3, 1000, potential=pot, t0=1.0, edge_check=False)
        expected = np.exp(1j * (1 / 2.0 - 1 / 1.0))
        assert np.max(np.abs(r.final.values - expected)) < 1e-6


class TestPotential:
    def test_zero(self):
        u = selfsimilar_potential(lambda e: 0 * e, 0.5)
        assert np.all(u(np.linspace(-1, 1, 5), 0.0, 2.0) == 0)

    def test_quadratic(self):
        u = selfsimilar_potential(lambda e: e**2, 0.5)
        assert u(1.0, 1.0, 2.0) == pytest.approx(1.0)

    def test_cosine(self):
        u = selfsimilar_potential(np.cos, 0.5)
        for (x, y, t), ref in oracles.COS_POTENTIAL.items():
            assert u(x, y, t) == pytest.approx(ref, rel=1e-14)

    def test_nonpositive_time(self):
        with pytest.raises(DomainError):
            selfsimilar_potential(np.cos, 0.5)(0.0, 0.0, 0.0)


class TestCollapse:
    def _report(self, values, grid, t):
        from madelung_flow.gpprop import PropagationReport
        fld = ComplexField(grid, values)
        return PropagationReport(fld, np.ones(1), np.ones(1), 0, t)

    def test_round_trip(self, linear_table_two_sided):
        g = SpectralGrid((256,), (30.0,))
        fld = field_from_table(g, linear_table_two_sided, 1.7)
        assert collapse_check(self._report(fld.values, g, 1.7), linear_table_two_sided) <= 1e-10

    def test_doubled_field(self, linear_table_two_sided):
        g = SpectralGrid((256,), (30.0,))
        fld = field_from_table(g, linear_table_two_sided, 1.7)
        m = collapse_check(self._report(2 * fld.values, g, 1.7), linear_table_two_sided)
        assert m == pytest.approx(3.0, rel=1e-12)

    def test_two_dimensional_row(self, linear_table_two_sided):
        g = SpectralGrid((64, 64), (16.0,))
        fld = field_from_table(g, linear_table_two_sided, 1.0)
        assert collapse_check(self._report(fld.values, g, 1.0), linear_table_two_sided) <= 1e-10

    def test_insufficient_overlap(self, linear_table_two_sided):
        g = SpectralGrid((4,), (4.0,))
        with pytest.raises(RangeError):
            collapse_check(self._report(np.ones(4), g, 1.0), linear_table_two_sided)

    def test_field_from_table_range(self, linear_table_two_sided):
        with pytest.raises(RangeError):
            field_from_table(SpectralGrid((64,), (100.0,)), linear_table_two_sided, 1.0)

    def test_propagated_metric_stable_under_refinement(self, linear_table_two_sided):
        # the self-similar field is not periodic, so only stability is checked
        out = []
        for n in (64, 128):
            g = SpectralGrid((n, n), (16.0,))
            fld = field_from_table(g, linear_table_two_sided, 1.0)
            dt = 0.5 * max_stable_dt(g, P)
            steps = int(math.ceil(0.5 / dt))
            r = split_step(fld, P, 0.5 / steps, steps, t0=1.0, edge_check=False)
            out.append(collapse_check(r, linear_table_two_sided))
        print(f"collapse metric at t = 1.5 for grids 64^2, 128^2: {out}")
        assert all(np.isfinite(out))
        assert abs(out[0] - out[1]) < 0.25 * max(out)
