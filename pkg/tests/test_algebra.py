import cmath
import math

import numpy as np
import pytest

import catcorr as cc
from catcorr.algebra import ModeKet, TwoModeKet, is_hermitian

from oracles import dyad_to_fock, fock_moment, fock_nmax, mixture_fock_spectrum
import oracles


def fock_series_overlap(alpha, beta, nmax=40):
    """<beta|alpha> summed in the number basis (independent of the closed form)."""
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(nmax + 1):
        if n > 0:
            term *= np.conj(beta) * alpha / n
        total += term
    return total * cmath.exp(-0.5 * (abs(alpha) ** 2 + abs(beta) ** 2))


class TestOverlap:
    def test_cat_pair_overlap(self):
        assert cc.overlap(1.0, -1.0) == pytest.approx(math.exp(-2.0), abs=1e-15)

    def test_vacuum_self_overlap(self):
        assert cc.overlap(0.0, 0.0) == 1.0

    def test_against_fock_series(self):
        alpha, beta = 0.7 + 0.3j, 0.2 - 0.5j
        expected = fock_series_overlap(alpha, beta)
        assert cc.overlap(alpha, beta) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize(
        "alpha", [0.0, 1.5, -0.3 + 2j, 2.5j, -1.7 - 0.4j]
    )
    def test_unit_modulus_on_diagonal(self, alpha):
        assert abs(cc.overlap(alpha, alpha)) == pytest.approx(1.0, abs=1e-14)

    def test_conjugate_under_argument_swap(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            a, b = (complex(*rng.normal(size=2)) for _ in range(2))
            assert cc.overlap(a, b) == pytest.approx(
                np.conj(cc.overlap(b, a)), abs=1e-14
            )

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            cc.overlap(float("nan"), 0.0)


class TestCatKets:
    def test_orthonormal(self):
        even, odd = cc.cat_kets(1.0)
        assert cc.ket_overlap(even, even) == pytest.approx(1.0, abs=1e-14)
        assert cc.ket_overlap(odd, odd) == pytest.approx(1.0, abs=1e-14)
        assert cc.ket_overlap(even, odd) == pytest.approx(0.0, abs=1e-14)

    def test_even_component_of_coherent(self):
        # expanding |g> over the even/odd pair gives sqrt((1 + <g|-g>)/2)
        even, _ = cc.cat_kets(1.0)
        coherent = ModeKet(((1.0 + 0.0j, 1.0 + 0.0j),))
        big_gamma = math.exp(-2.0)
        assert cc.ket_overlap(even, coherent) == pytest.approx(
            math.sqrt((1.0 + big_gamma) / 2.0), abs=1e-14
        )

    def test_degenerate_at_zero(self):
        with pytest.raises(cc.DegenerateOddCatError):
            cc.cat_kets(0.0)


class TestMixtures:
    def test_single_product_ket(self):
        ket = cc.product_ket(
            ModeKet(((1.0 + 0.0j, 1.0 + 0.0j),)), ModeKet(((1.0 + 0.0j, 1.0 + 0.0j),))
        )
        rho = cc.mixture_to_dyads([(1.0, ket)])
        assert len(rho.terms) == 1
        assert cc.trace(rho) == pytest.approx(1.0, abs=1e-14)

    def test_four_component_mixture_trace(self, state):
        assert cc.trace(state("RHO_PP", 1.0)).real == pytest.approx(1.0, abs=1e-12)

    def test_purity_matches_fock(self, state, fock_state):
        rho = state("RHO_PP", 1.0)
        mat, _ = fock_state("RHO_PP", 1.0)
        assert cc.purity(rho) == pytest.approx(
            float(np.trace(mat @ mat).real), abs=1e-8
        )

    def test_negative_weight_rejected(self):
        ket = ModeKet(((1.0 + 0.0j, 0.5 + 0.0j),))
        with pytest.raises(ValueError):
            cc.mixture_to_dyads([(-0.2, ket), (1.2, ket)])

    def test_zero_total_weight_rejected(self):
        ket = ModeKet(((1.0 + 0.0j, 0.5 + 0.0j),))
        with pytest.raises(ValueError):
            cc.mixture_to_dyads([(0.0, ket)])

    def test_weights_must_sum_to_one(self):
        ket = ModeKet(((1.0 + 0.0j, 0.5 + 0.0j),))
        with pytest.raises(ValueError):
            cc.mixture_to_dyads([(0.7, ket)])

    def test_hermiticity_of_random_mixtures(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            kets = []
            weights = rng.dirichlet(np.ones(3))
            for _ in range(3):
                terms = tuple(
                    (complex(*rng.normal(size=2)), complex(*rng.normal(size=2)),
                     complex(*rng.normal(size=2)))
                    for _ in range(2)
                )
                kets.append(TwoModeKet(terms))
            rho = cc.mixture_to_dyads(list(zip(weights, kets)))
            assert is_hermitian(rho)
            cc.validate_state(rho)


class TestPartialTrace:
    def test_matches_marginal_construction(self, state):
        rho = state("RHO_PP", 2.0)
        marginal = state("MARGINAL", 2.0)
        for keep in (0, 1):
            assert cc.operators_equal(
                cc.partial_trace(rho, keep), marginal, tol=1e-12
            )

    def test_product_state_reduces_exactly(self):
        ket_a = ModeKet(((1.0 + 0.0j, 0.8 + 0.1j),))
        ket_b = ModeKet(((1.0 + 0.0j, -0.4 + 0.6j),))
        rho = cc.mixture_to_dyads([(1.0, cc.product_ket(ket_a, ket_b))])
        rho_a = cc.mixture_to_dyads([(1.0, ket_a)])
        assert cc.operators_equal(cc.partial_trace(rho, 0), rho_a, tol=1e-12)

    def test_marginal_spectrum_in_pair_basis(self, state):
        big_gamma = math.exp(-2.0)
        marg = cc.partial_trace(state("RHO_PM", 1.0), 0)
        eigs = cc.spectrum(marg)
        assert eigs == pytest.approx(
            [0.5 + big_gamma / 4.0, 0.5 - big_gamma / 4.0], abs=1e-12
        )

    def test_invalid_mode(self, state):
        with pytest.raises(ValueError):
            cc.partial_trace(state("RHO_PP", 1.0), 2)

    def test_full_trace_composition(self, state):
        rho = state("RHO_PM", 1.5)
        reduced = cc.partial_trace(rho, 0)
        assert cc.trace(reduced).real == pytest.approx(
            cc.trace(rho).real, abs=1e-12
        )


class TestSpectrum:
    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_four_component_mixture_plus(self, state, gamma):
        big_gamma = math.exp(-2.0 * gamma * gamma)
        expected = sorted(
            [0.0, 0.25, (2.0 + big_gamma**2) / 4.0, (1.0 - big_gamma**2) / 4.0],
            reverse=True,
        )
        assert cc.spectrum(state("RHO_PP", gamma)) == pytest.approx(
            expected, abs=1e-10
        )

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_four_component_mixture_minus(self, state, gamma):
        big_gamma = math.exp(-2.0 * gamma * gamma)
        expected = sorted(
            [0.0, 0.25, (1.0 + big_gamma**2) / 4.0, (2.0 - big_gamma**2) / 4.0],
            reverse=True,
        )
        assert cc.spectrum(state("RHO_PM", gamma)) == pytest.approx(
            expected, abs=1e-10
        )

    def test_pure_state(self, state):
        assert cc.spectrum(state("COHERENT_PRODUCT", 1.0)) == pytest.approx(
            [1.0], abs=1e-12
        )

    def test_sum_and_reorder_invariance(self, state):
        rho = state("RHO_PM", 0.7)
        eigs = cc.spectrum(rho)
        assert float(np.sum(eigs)) == pytest.approx(1.0, abs=1e-8)
        reordered = cc.DyadOperator(rho.modes, tuple(reversed(rho.terms)))
        assert cc.spectrum(reordered) == pytest.approx(eigs, abs=1e-9)

    @pytest.mark.parametrize("name", ["RHO_PP", "RHO_PM", "SIGMA_Q_PP", "SIGMA_C_PM"])
    def test_matches_fock_rank_factorization(self, state, name):
        gamma = 1.0
        nmax = fock_nmax(gamma)
        rho = state(name, gamma)
        components = _fock_components(name, gamma, nmax)
        expected = mixture_fock_spectrum(components, nmax)
        eigs = cc.spectrum(rho)
        padded = np.zeros(max(len(eigs), len(expected)))
        padded[: len(eigs)] += np.asarray(eigs)
        padded[: len(expected)] -= expected[: len(expected)]
        assert float(np.max(np.abs(padded))) < 1e-8


def _fock_components(name, gamma, nmax):
    """The catalog mixtures written directly as Fock vectors."""
    plus = oracles.coherent_vector(gamma, nmax)
    minus = oracles.coherent_vector(-gamma, nmax)
    even, odd = oracles.cat_vectors(gamma, nmax)
    kron = np.kron
    table = {
        "RHO_PP": [
            (0.25, kron(plus, plus)),
            (0.25, kron(minus, minus)),
            (0.25, kron(even, even)),
            (0.25, kron(odd, odd)),
        ],
        "RHO_PM": [
            (0.25, kron(plus, minus)),
            (0.25, kron(minus, plus)),
            (0.25, kron(even, odd)),
            (0.25, kron(odd, even)),
        ],
        "SIGMA_Q_PP": [(0.5, kron(plus, plus)), (0.5, kron(minus, minus))],
        "SIGMA_C_PM": [(0.5, kron(even, odd)), (0.5, kron(odd, even))],
    }
    return table[name]


class TestEntropy:
    def test_pure(self):
        assert cc.von_neumann_entropy([1.0]) == 0.0

    def test_uniform_bit(self):
        assert cc.von_neumann_entropy([0.5, 0.5], base=2) == pytest.approx(1.0)

    def test_large_amplitude_limit(self):
        # spectrum of the four-component mixture when the overlap dies out
        assert cc.von_neumann_entropy([0.0, 0.25, 0.5, 0.25], base=2) == pytest.approx(
            1.5, abs=1e-14
        )

    def test_natural_base(self):
        assert cc.von_neumann_entropy([0.5, 0.5], base="e") == pytest.approx(
            math.log(2.0)
        )

    def test_rejects_unknown_base(self):
        with pytest.raises(ValueError):
            cc.von_neumann_entropy([1.0], base=10)


class TestNormalMoments:
    def test_coherent_is_eigenstate(self):
        ket = ModeKet(((1.0 + 0.0j, 0.9 - 0.2j),))
        rho = cc.mixture_to_dyads([(1.0, ket)])
        assert cc.normal_moment(rho, 1, 1) == pytest.approx(
            abs(0.9 - 0.2j) ** 2, abs=1e-14
        )

    def test_mean_photon_number_against_fock(self, state, fock_state):
        rho = state("RHO_PP", 1.0)
        mat, nmax = fock_state("RHO_PP", 1.0)
        assert cc.normal_moment(rho, 1, 1, 0, 0) == pytest.approx(
            fock_moment(mat, nmax, 1, 1, 0, 0), abs=1e-10
        )

    def test_odd_cat_closed_form(self, state):
        gamma = 1.0
        big_gamma = math.exp(-2.0)
        rho = state("ODD_CAT", gamma)
        expected = gamma**2 * (1.0 + big_gamma) / (1.0 - big_gamma)
        assert cc.normal_moment(rho, 1, 1).real == pytest.approx(expected, abs=1e-12)
        nmax = fock_nmax(gamma)
        mat = dyad_to_fock(rho, nmax)
        assert fock_moment(mat, nmax, 1, 1).real == pytest.approx(expected, abs=1e-10)

    def test_mode_exponent_guard(self, state):
        with pytest.raises(ValueError):
            cc.normal_moment(state("ODD_CAT", 1.0), 1, 1, 1, 0)

    @pytest.mark.parametrize("name", ["RHO_PP", "RHO_PM", "SIGMA_Q_PM", "SIGMA_C_PP"])
    @pytest.mark.parametrize("gamma", [0.5, 2.0])
    def test_assorted_moments_against_fock(self, state, fock_state, name, gamma):
        rho = state(name, gamma)
        mat, nmax = fock_state(name, gamma)
        for powers in [(1, 1, 0, 0), (2, 2, 0, 0), (0, 1, 0, 1), (1, 0, 0, 1), (1, 1, 1, 1)]:
            assert cc.normal_moment(rho, *powers) == pytest.approx(
                fock_moment(mat, nmax, *powers), abs=1e-8
            )
