import math

import numpy as np
import pytest

import catcorr as cc
from catcorr.phasespace import box_normalization, build_factor_table, _accumulate

from oracles import dyad_to_fock, fock_husimi, fock_nmax, fock_wigner

TWO_OVER_PI = 2.0 / math.pi

# Values from the high-order quadrature run (192 nodes per axis, box 4.5);
# kept as regression fixtures for the low-amplitude ordering.
PINNED_NEG_PP_HALF = 0.031554138044763036
PINNED_NEG_PM_HALF = 0.022530039504145005


class TestDyadKernel:
    @pytest.mark.parametrize("gamma", [0.0, 1.0, -0.7 + 1.2j])
    def test_coherent_peak(self, gamma):
        assert cc.wigner_dyad_kernel(gamma, gamma, gamma) == pytest.approx(
            TWO_OVER_PI, abs=1e-14
        )

    def test_off_diagonal_matches_fock(self):
        from oracles import coherent_vector, displaced_parity

        ket, bra, z = 1.0, -1.0, 0.3j
        nmax = 40
        dyad = np.outer(coherent_vector(ket, nmax), coherent_vector(bra, nmax).conj())
        expected = complex(TWO_OVER_PI * np.trace(dyad @ displaced_parity(z, nmax)))
        assert cc.wigner_dyad_kernel(ket, bra, z) == pytest.approx(expected, abs=1e-8)

    def test_vectorized_matches_scalar(self):
        zs = np.array([0.1 + 0.2j, -1.0, 0.5j])
        values = cc.wigner_dyad_kernel(1.0, -1.0, zs)
        for z, v in zip(zs, values):
            assert v == pytest.approx(cc.wigner_dyad_kernel(1.0, -1.0, z))


class TestWigner:
    @pytest.mark.parametrize("gamma", [0.3, 1.0, 2.0])
    def test_odd_cat_origin(self, state, gamma):
        assert cc.wigner(state("ODD_CAT", gamma), 0.0) == pytest.approx(
            -TWO_OVER_PI, abs=1e-12
        )

    def test_marginal_positive_on_grid(self, state):
        rho = state("MARGINAL", 2.0)
        axis = np.linspace(-6.0, 6.0, 201)
        zs = axis[:, None] + 1j * axis[None, :]
        values = cc.wigner(rho, zs)
        assert values.min() >= -1e-12

    def test_coherent_pair_marginal_at_origin(self, state):
        # the two-component marginal evaluates to (2/pi) e^{-2} at the origin
        rho = cc.partial_trace(state("SIGMA_Q_PP", 1.0), 0)
        assert cc.wigner(rho, 0.0) == pytest.approx(
            TWO_OVER_PI * math.exp(-2.0), abs=1e-13
        )

    @pytest.mark.parametrize("name", ["RHO_PP", "SIGMA_C_PM"])
    def test_matches_fock_oracle_pointwise(self, state, fock_state, name):
        gamma = 1.0
        rho = state(name, gamma)
        mat, nmax = fock_state(name, gamma)
        for z1, z2 in [(0.2 + 0.1j, -0.4j), (1.0, 1.0), (0.5j, 0.3)]:
            assert cc.wigner(rho, z1, z2) == pytest.approx(
                fock_wigner(mat, nmax, z1, z2), abs=1e-8
            )

    def test_rejects_non_hermitian(self):
        broken = cc.DyadOperator(1, ((1.0 + 0.0j, (1.0 + 0.0j,), (-1.0 + 0.0j,)),))
        with pytest.raises(ValueError):
            cc.wigner(broken, 0.3j)

    def test_point_count_checked(self, state):
        with pytest.raises(ValueError):
            cc.wigner(state("RHO_PP", 1.0), 0.0)


class TestHusimi:
    def test_vacuum(self, state):
        rho = state("COHERENT_PRODUCT", 0.0)
        assert cc.husimi(rho, 0.0, 0.0) == pytest.approx(1.0 / math.pi**2, abs=1e-14)

    def test_single_mode_vacuum(self):
        from catcorr.algebra import ModeKet

        rho = cc.mixture_to_dyads([(1.0, ModeKet(((1.0 + 0.0j, 0.0j),)))])
        assert cc.husimi(rho, 0.0) == pytest.approx(1.0 / math.pi, abs=1e-14)

    def test_matches_fock(self, state, fock_state):
        rho = state("RHO_PP", 1.0)
        mat, nmax = fock_state("RHO_PP", 1.0)
        value = cc.husimi(rho, 1.0, 1.0)
        assert value > 0.0
        assert value == pytest.approx(fock_husimi(mat, nmax, 1.0, 1.0), abs=1e-9)

    @pytest.mark.parametrize(
        "name", ["RHO_PP", "RHO_PM", "SIGMA_Q_PP", "SIGMA_C_PP", "SIGMA_C_PM"]
    )
    def test_nonnegative_on_probe_grid(self, state, name):
        rho = state(name, 1.0)
        axis = np.linspace(-5.0, 5.0, 41)
        pts = (axis[:, None] + 1j * axis[None, :]).ravel()
        assert cc.husimi_grid_min(rho, pts, pts) >= -1e-12

    def test_equals_smoothed_wigner(self, state):
        # the Husimi value is the Gaussian-smoothed Wigner function
        rho = state("RHO_PM", 0.8)
        spec = cc.QuadratureSpec(4.8, 96)
        table = build_factor_table(rho, spec, "wigner")
        z1, z2 = 0.4 + 0.3j, -0.2 + 0.5j
        w_grid = (table.a_real @ table.b_real.T).reshape(-1)
        pts = table.points[0]
        kern1 = TWO_OVER_PI * np.exp(-2.0 * np.abs(pts - z1) ** 2) * table.weights2d
        kern2 = TWO_OVER_PI * np.exp(-2.0 * np.abs(pts - z2) ** 2) * table.weights2d
        smoothed = kern1 @ (table.a_real @ table.b_real.T) @ kern2
        assert cc.husimi(rho, z1, z2) == pytest.approx(float(smoothed), abs=1e-6)


class TestNegativityVolume:
    def test_coherent_product_is_classical(self, state):
        res = cc.negativity_volume(state("COHERENT_PRODUCT", 1.0))
        assert res.converged
        assert res.value == pytest.approx(0.0, abs=1e-6)

    def test_low_amplitude_ordering_and_fixtures(self, state):
        spec = cc.QuadratureSpec(4.5, 96)
        res_pp = cc.negativity_volume(state("RHO_PP", 0.5), spec)
        res_pm = cc.negativity_volume(state("RHO_PM", 0.5), spec)
        assert res_pp.converged and res_pm.converged
        assert res_pm.value < res_pp.value
        assert res_pp.value == pytest.approx(PINNED_NEG_PP_HALF, abs=2e-4)
        assert res_pm.value == pytest.approx(PINNED_NEG_PM_HALF, abs=2e-4)

    @pytest.mark.slow
    def test_asymptotic_band(self, state):
        spec = cc.QuadratureSpec(6.5, 96)
        for name in ("RHO_PP", "RHO_PM"):
            res = cc.negativity_volume(state(name, 2.5), spec)
            assert res.converged
            assert abs(res.value - 0.2) < 0.02

    def test_sigma_q_positive_wigner(self, state):
        res = cc.negativity_volume(state("SIGMA_Q_PP", 1.0))
        assert res.value == pytest.approx(0.0, abs=1e-6)
        res = cc.negativity_volume(state("SIGMA_Q_PM", 1.0))
        assert res.value == pytest.approx(0.0, abs=1e-6)

    def test_narrow_box_warns(self, state):
        with pytest.warns(UserWarning):
            cc.negativity_volume(state("RHO_PP", 1.0), cc.QuadratureSpec(2.0, 48))

    @pytest.mark.parametrize(
        "name", ["RHO_PP", "RHO_PM", "SIGMA_Q_PP", "SIGMA_C_PP", "SIGMA_C_PM"]
    )
    def test_box_normalization(self, state, name):
        rho = state(name, 1.0)
        spec = cc.QuadratureSpec(5.0, 96)
        assert box_normalization(rho, spec) == pytest.approx(1.0, abs=1e-4)

    def test_single_mode_odd_cat_near_photon_limit(self, state):
        # near gamma = 0 the odd cat approaches the one-photon state, whose
        # negative volume is 4 exp(-1/2) - 2 (elementary radial integral)
        res = cc.negativity_volume(state("ODD_CAT", 0.05), cc.QuadratureSpec(4.1, 96))
        assert res.converged
        assert res.value == pytest.approx(4.0 * math.exp(-0.5) - 2.0, abs=3e-3)

    def test_threaded_accumulation_matches(self, state):
        rho = state("RHO_PM", 0.5)
        spec = cc.QuadratureSpec(4.5, 48)
        lone = cc.negativity_volume(rho, spec, threads=1)
        dual = cc.negativity_volume(rho, spec, threads=2)
        assert lone.value == dual.value

    def test_partial_trace_consistency(self, state):
        # integrating the second mode out of the grid reproduces the marginal
        rho = state("RHO_PP", 1.0)
        marginal = state("MARGINAL", 1.0)
        spec = cc.QuadratureSpec(5.0, 96)
        table = build_factor_table(rho, spec, "wigner")
        pts, w2 = table.points[0], table.weights2d
        for z1 in (0.0, 0.5 + 0.5j, -1.0 + 0.2j):
            values = cc.wigner(rho, np.full(pts.shape, z1), pts)
            integrated = float(values @ w2)
            assert integrated == pytest.approx(cc.wigner(marginal, z1), abs=1e-5)


class TestGridMinima:
    def test_sigma_q_grid_positive(self, state):
        axis = np.linspace(-5.0, 5.0, 61)
        pts = (axis[:, None] + 1j * axis[None, :]).ravel()
        assert cc.wigner_grid_min(state("SIGMA_Q_PP", 1.0), pts, pts) >= -1e-9

    def test_two_mode_mixture_goes_negative(self, state):
        axis = np.linspace(-5.0, 5.0, 41)
        pts = (axis[:, None] + 1j * axis[None, :]).ravel()
        assert cc.wigner_grid_min(state("RHO_PP", 1.0), pts, pts) < -1e-3
