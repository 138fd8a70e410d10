import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ergokit.errors import (
    DimensionMismatch,
    InvalidSpacing,
    NormalizationError,
    RangeError,
    SchmidtRankTooLarge,
    SpectrumError,
)
from ergokit.linalg import DEFAULT_TOL, hermitian_spectrum, ket_to_density, partial_trace
from ergokit.majorization import nielsen_kempe_holds
from ergokit.states import (
    PHI_PLUS,
    PSI_MINUS,
    BipartiteSystem,
    HamiltonianSpec,
    bell_diagonal,
    global_ladder,
    haar_random_pure,
    linear_hamiltonian,
    product_state,
    pure_from_schmidt,
    random_separable,
    werner_state,
)

from conftest import random_density, random_probability


class TestHamiltonians:
    @pytest.mark.parametrize(
        "d, spacing, expected",
        [(2, 1.0, (0.0, 1.0)), (4, 0.5, (0.0, 0.5, 1.0, 1.5)), (1, 1.0, (0.0,))],
    )
    def test_linear(self, d, spacing, expected):
        h = linear_hamiltonian(d, spacing)
        assert h.energies == expected
        assert h.is_linear

    @pytest.mark.parametrize("spacing", [0.0, -1.0])
    def test_bad_spacing(self, spacing):
        with pytest.raises(InvalidSpacing):
            linear_hamiltonian(3, spacing)

    def test_from_energies_detects_linear(self):
        assert HamiltonianSpec.from_energies([0, 2, 4]).spacing == 2.0
        assert not HamiltonianSpec.from_energies([0, 1, 3]).is_linear

    def _enumerate(self, ea, eb):
        return sorted(a + b for a, b in itertools.product(ea, eb))

    @pytest.mark.parametrize(
        "ha, hb, expected",
        [
            (linear_hamiltonian(2), linear_hamiltonian(2), [0, 1, 1, 2]),
            (linear_hamiltonian(2), linear_hamiltonian(3), [0, 1, 1, 2, 2, 3]),
            (linear_hamiltonian(2, 1.0), linear_hamiltonian(2, 2.0), [0, 1, 2, 3]),
        ],
    )
    def test_global_ladder(self, ha, hb, expected):
        assert self._enumerate(ha.energies, hb.energies) == expected
        assert_allclose(global_ladder(ha, hb), expected)

    @pytest.mark.parametrize("d1, d2", [(1, 3), (2, 2), (3, 5), (4, 4)])
    def test_global_ladder_shape(self, d1, d2):
        lad = global_ladder(linear_hamiltonian(d1), linear_hamiltonian(d2, 0.7))
        assert lad.size == d1 * d2 and lad[0] == 0 and np.all(np.diff(lad) >= 0)


class TestBipartiteSystem:
    def test_canonical_swap(self, rng):
        sigma, tau = random_density(3, rng), random_density(2, rng)
        sys = product_state(sigma, tau)
        assert (sys.d1, sys.d2, sys.swapped) == (2, 3, True)
        assert_allclose(partial_trace(sys.rho, 2, 3, "A").matrix, tau, atol=1e-14)
        assert sys.ham_a.dim == 2 and sys.ham_b.dim == 3

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            BipartiteSystem.build(np.eye(4) / 4, 2, 3)
        with pytest.raises(DimensionMismatch):
            BipartiteSystem.build(np.eye(4) / 4, 2, 2, linear_hamiltonian(3))


class TestWerner:
    def test_endpoints(self):
        assert_allclose(werner_state(0).rho.matrix, np.eye(4) / 4, atol=1e-15)
        assert_allclose(werner_state(1).rho.matrix, ket_to_density(PSI_MINUS), atol=1e-15)

    @pytest.mark.parametrize("p", np.linspace(0, 1, 11))
    def test_spectrum_and_marginals(self, p):
        sys = werner_state(p)
        assert_allclose(hermitian_spectrum(sys.rho), [(1 + 3 * p) / 4] + [(1 - p) / 4] * 3, atol=1e-12)
        for keep in "AB":
            assert_allclose(partial_trace(sys.rho, 2, 2, keep).matrix, np.eye(2) / 2, atol=1e-15)

    def test_range(self):
        with pytest.raises(RangeError):
            werner_state(1.2)


class TestBellDiagonal:
    def test_pure(self):
        assert_allclose(bell_diagonal([1, 0, 0, 0]).rho.matrix, ket_to_density(PHI_PLUS), atol=1e-15)

    def test_uniform(self):
        assert_allclose(bell_diagonal([0.25] * 4).rho.matrix, np.eye(4) / 4, atol=1e-15)

    def test_marginals(self, rng):
        cases = [np.array([0.6, 0.2, 0.15, 0.05])] + [random_probability(4, rng) for _ in range(20)]
        for x in cases:
            sys = bell_diagonal(x)
            for keep in "AB":
                assert_allclose(partial_trace(sys.rho, 2, 2, keep).matrix, np.eye(2) / 2, atol=1e-15)
            assert_allclose(hermitian_spectrum(sys.rho), x, atol=1e-12)

    @pytest.mark.parametrize("x", [[0.1, 0.2, 0.3, 0.4], [0.5, 0.5, 0.5, 0.0], [1.0, 0.0, 0.0]])
    def test_rejects(self, x):
        with pytest.raises(SpectrumError):
            bell_diagonal(x)


class TestPureFromSchmidt:
    def test_product(self):
        assert_allclose(pure_from_schmidt([1], 2, 2).rho.matrix, np.diag([1, 0, 0, 0]), atol=1e-15)

    def test_bell(self):
        assert_allclose(pure_from_schmidt([0.5, 0.5], 2, 2).rho.matrix, ket_to_density(PHI_PLUS), atol=1e-15)

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_maximally_entangled(self, d):
        psi = np.zeros(d * d)
        for i in range(d):
            psi[i * d + i] = 1 / np.sqrt(d)
        assert_allclose(pure_from_schmidt([1 / d] * d, d, d).rho.matrix, np.outer(psi, psi), atol=1e-14)

    def test_marginal_spectra(self, rng):
        for d1, d2 in [(2, 3), (3, 3), (3, 5)]:
            lam = random_probability(d1, rng)
            sys = pure_from_schmidt(lam, d1, d2)
            assert_allclose(hermitian_spectrum(partial_trace(sys.rho, d1, d2, "A"))[:d1], lam, atol=1e-12)
            assert_allclose(hermitian_spectrum(partial_trace(sys.rho, d1, d2, "B"))[:d1], lam, atol=1e-12)

    def test_errors(self):
        with pytest.raises(SchmidtRankTooLarge):
            pure_from_schmidt([0.25] * 4, 2, 3)
        with pytest.raises(NormalizationError):
            pure_from_schmidt([0.5, 0.4], 2, 2)


class TestSamplers:
    def test_single_term_is_pure_product(self):
        sys = random_separable(2, 3, 1, seed=5)
        w = hermitian_spectrum(sys.rho)
        assert w[0] == pytest.approx(1.0, abs=1e-12)
        assert hermitian_spectrum(partial_trace(sys.rho, 2, 3, "A"))[0] == pytest.approx(1.0, abs=1e-12)

    def test_determinism(self):
        a = random_separable(3, 3, 6, seed=11).rho.matrix
        b = random_separable(3, 3, 6, seed=11).rho.matrix
        assert np.array_equal(a, b)
        assert np.array_equal(haar_random_pure(2, 3, seed=4).rho.matrix, haar_random_pure(2, 3, seed=4).rho.matrix)

    def test_reference_sample_passes_nk(self):
        assert nielsen_kempe_holds(random_separable(2, 2, 8, seed=7))

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_separable_always_nk(self, dims):
        for s in range(1000):
            assert nielsen_kempe_holds(random_separable(*dims, 1 + s % 9, seed=s))

    def test_haar_pure(self):
        for seed in range(20):
            sys = haar_random_pure(2, 3, seed=seed)
            assert np.trace(sys.rho.matrix).real == pytest.approx(1.0, abs=1e-12)
            w = hermitian_spectrum(sys.rho)
            assert w[0] == pytest.approx(1.0, abs=1e-10)
            pa = hermitian_spectrum(partial_trace(sys.rho, 2, 3, "A"))
            pb = hermitian_spectrum(partial_trace(sys.rho, 2, 3, "B"))
            assert_allclose(pa, pb[:2], atol=DEFAULT_TOL.tol_eig)
