import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from ergokit.errors import DimensionMismatch, NotHermitian, NotPositive, NotSquare, TraceError
from ergokit.linalg import (
    DEFAULT_TOL,
    hermitian_spectrum,
    ket_to_density,
    partial_trace,
    swap_subsystems,
    validate_density,
    von_neumann_entropy,
)
from ergokit.states import PHI_PLUS, PSI_MINUS, werner_state

from conftest import random_density, random_unitary


class TestValidateDensity:
    def test_maximally_mixed_qubit(self):
        rho = validate_density(np.eye(2) / 2)
        assert_allclose(hermitian_spectrum(rho), [0.5, 0.5])

    def test_pure_projector(self):
        rho = validate_density(np.diag([1.0, 0.0]))
        assert_allclose(hermitian_spectrum(rho), [1.0, 0.0])

    def test_bad_trace(self):
        with pytest.raises(TraceError):
            validate_density(np.diag([0.6, 0.6]))

    def test_not_square(self):
        with pytest.raises(NotSquare):
            validate_density(np.ones((2, 3)) / 2)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            validate_density(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_negative_eigenvalue(self):
        with pytest.raises(NotPositive):
            validate_density(np.diag([1.1, -0.1]))

    def test_tiny_negative_is_clipped(self):
        rho = validate_density(np.diag([1.0 + 5e-10, -5e-10]))
        w = hermitian_spectrum(rho)
        assert w.min() >= 0
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-15)


class TestSpectrum:
    def test_werner_third(self):
        assert_allclose(hermitian_spectrum(werner_state(1 / 3).rho), [1 / 2, 1 / 6, 1 / 6, 1 / 6], atol=1e-12)

    @pytest.mark.parametrize("d", [1, 2, 3, 5])
    def test_identity(self, d):
        assert_allclose(hermitian_spectrum(np.eye(d) / d), np.full(d, 1 / d), atol=1e-14)

    def test_bell_projector(self):
        assert_allclose(hermitian_spectrum(ket_to_density(PHI_PLUS)), [1, 0, 0, 0], atol=1e-14)

    def test_reconstruction(self, rng):
        for d in (2, 3, 4, 6):
            rho = random_density(d, rng)
            w, v = np.linalg.eigh(rho)
            assert_allclose((v * w) @ v.conj().T, rho, atol=10 * DEFAULT_TOL.tol_herm)

    def test_unitary_invariance(self, rng):
        for d in (2, 3, 4, 9):
            rho = random_density(d, rng, rank=max(1, d // 2))
            u = random_unitary(d, rng)
            assert_allclose(
                hermitian_spectrum(u @ rho @ u.conj().T), hermitian_spectrum(rho), atol=DEFAULT_TOL.tol_eig
            )


def _brute_partial_trace_a(rho, d1, d2):
    out = np.zeros((d1, d1), dtype=complex)
    for i in range(d1):
        for k in range(d1):
            for j in range(d2):
                out[i, k] += rho[i * d2 + j, k * d2 + j]
    return out


class TestPartialTrace:
    def test_bell_marginal(self):
        assert_allclose(partial_trace(ket_to_density(PHI_PLUS), 2, 2, "A").matrix, np.eye(2) / 2)

    def test_product(self, rng):
        sigma, tau = random_density(2, rng), random_density(3, rng)
        rho = np.kron(sigma, tau)
        assert_allclose(partial_trace(rho, 2, 3, "A").matrix, sigma, atol=1e-14)
        assert_allclose(partial_trace(rho, 2, 3, "B").matrix, tau, atol=1e-14)

    @pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 0.9])
    def test_degenerate_mixture(self, p):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = p
        rho += (1 - p) * ket_to_density(PSI_MINUS)
        got = partial_trace(rho, 2, 2, "A").matrix
        assert_allclose(got, _brute_partial_trace_a(rho, 2, 2), atol=1e-15)
        assert_allclose(got, np.diag([p + (1 - p) / 2, (1 - p) / 2]), atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            partial_trace(np.eye(4) / 4, 2, 3)

    def test_unit_trace_random(self, rng):
        for d1, d2 in [(2, 2), (2, 3), (3, 2), (3, 3)]:
            rho = random_density(d1 * d2, rng)
            assert_allclose(_brute_partial_trace_a(rho, d1, d2), partial_trace(rho, d1, d2, "A").matrix, atol=1e-14)
            for keep in "AB":
                tr = np.trace(partial_trace(rho, d1, d2, keep).matrix).real
                assert abs(tr - 1) < DEFAULT_TOL.tol_trace

    def test_swap(self, rng):
        sigma, tau = random_density(2, rng), random_density(3, rng)
        assert_allclose(swap_subsystems(np.kron(sigma, tau), 2, 3), np.kron(tau, sigma), atol=1e-15)


class TestEntropy:
    def test_pure(self):
        assert von_neumann_entropy(ket_to_density(PHI_PLUS)) == 0.0

    @pytest.mark.parametrize("d", [2, 3, 4, 7])
    def test_maximally_mixed(self, d):
        assert von_neumann_entropy(np.eye(d) / d) == pytest.approx(math.log2(d), abs=1e-12)

    def test_three_quarters(self):
        expected = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))
        assert expected == pytest.approx(0.811278124459, abs=1e-12)
        assert von_neumann_entropy(np.diag([0.75, 0.25])) == pytest.approx(expected, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
    def test_additivity(self, da, db, seed):
        rng = np.random.default_rng(seed)
        sigma, tau = random_density(da, rng), random_density(db, rng)
        lhs = von_neumann_entropy(np.kron(sigma, tau))
        assert lhs == pytest.approx(
            von_neumann_entropy(sigma) + von_neumann_entropy(tau), abs=10 * DEFAULT_TOL.tol_eig
        )
