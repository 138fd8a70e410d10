"""Hamiltonian ladders, named state families and the BipartiteSystem container."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidSpacing,
    NormalizationError,
    RangeError,
    SchmidtRankTooLarge,
    SpectrumError,
    ValidationError,
)
from .linalg import (
    DEFAULT_TOL,
    DensityMatrix,
    ToleranceSet,
    ket_to_density,
    swap_subsystems,
    validate_density,
)


@dataclass(frozen=True)
class HamiltonianSpec:
    """Diagonal local Hamiltonian with the ground energy pinned to zero."""

    energies: tuple[float, ...]
    is_linear: bool = False
    spacing: float | None = None

    def __post_init__(self):
        e = self.energies
        if len(e) < 1:
            raise ValidationError("a Hamiltonian needs at least one level")
        if e[0] != 0.0:
            raise ValidationError(f"ground energy must be 0, got {e[0]}")
        if any(b < a for a, b in zip(e, e[1:])):
            raise ValidationError("energies must be non-decreasing")
        if self.is_linear:
            if self.spacing is None or self.spacing <= 0:
                raise InvalidSpacing("linear ladder needs a positive spacing")
            if any(v != j * self.spacing for j, v in enumerate(e)):
                raise ValidationError("energies do not form a linear ladder")

    @classmethod
    def from_energies(cls, energies) -> "HamiltonianSpec":
        """Arbitrary ascending ladder; detected as linear when exactly evenly spaced."""
        e = tuple(float(v) for v in energies)
        if len(e) > 1 and e[1] > 0 and all(v == j * e[1] for j, v in enumerate(e)):
            return cls(e, True, e[1])
        return cls(e)

    @property
    def dim(self) -> int:
        return len(self.energies)

    def matrix(self) -> np.ndarray:
        return np.diag(np.asarray(self.energies, dtype=float))


def linear_hamiltonian(d: int, spacing: float = 1.0) -> HamiltonianSpec:
    if d < 1:
        raise ValidationError(f"dimension must be >= 1, got {d}")
    if not spacing > 0:
        raise InvalidSpacing(f"spacing must be positive, got {spacing}")
    return HamiltonianSpec(tuple(j * float(spacing) for j in range(d)), True, float(spacing))


def global_ladder(ham_a: HamiltonianSpec, ham_b: HamiltonianSpec) -> np.ndarray:
    """Sorted spectrum of ``H_A (x) I + I (x) H_B``."""
    return np.sort(np.add.outer(ham_a.energies, ham_b.energies).ravel())


def global_diagonal(ham_a: HamiltonianSpec, ham_b: HamiltonianSpec) -> np.ndarray:
    """Diagonal of the non-interacting global Hamiltonian in product-basis order."""
    return np.add.outer(ham_a.energies, ham_b.energies).ravel()


@dataclass(frozen=True, eq=False)
class BipartiteSystem:
    """Joint state plus local Hamiltonians, canonically ordered so d1 <= d2."""

    d1: int
    d2: int
    rho: DensityMatrix
    ham_a: HamiltonianSpec
    ham_b: HamiltonianSpec
    swapped: bool = False

    @classmethod
    def build(
        cls,
        rho,
        d1: int,
        d2: int,
        ham_a: HamiltonianSpec | None = None,
        ham_b: HamiltonianSpec | None = None,
        tol: ToleranceSet = DEFAULT_TOL,
    ) -> "BipartiteSystem":
        ham_a = ham_a if ham_a is not None else linear_hamiltonian(d1)
        ham_b = ham_b if ham_b is not None else linear_hamiltonian(d2)
        if ham_a.dim != d1 or ham_b.dim != d2:
            raise DimensionMismatch(
                f"Hamiltonian sizes ({ham_a.dim}, {ham_b.dim}) do not match dims ({d1}, {d2})"
            )
        dm = validate_density(rho, tol)
        if dm.dim != d1 * d2:
            raise DimensionMismatch(f"state has dim {dm.dim}, expected {d1}*{d2}")
        if d1 > d2:
            dm = DensityMatrix(swap_subsystems(dm.matrix, d1, d2))
            return cls(d2, d1, dm, ham_b, ham_a, True)
        return cls(d1, d2, dm, ham_a, ham_b, False)

    @property
    def dim(self) -> int:
        return self.d1 * self.d2


def _qubit_pair(spacing: float) -> tuple[HamiltonianSpec, HamiltonianSpec]:
    h = linear_hamiltonian(2, spacing)
    return h, h


_S = 1 / np.sqrt(2)
PHI_PLUS = np.array([_S, 0, 0, _S], dtype=complex)
PHI_MINUS = np.array([_S, 0, 0, -_S], dtype=complex)
PSI_PLUS = np.array([0, _S, _S, 0], dtype=complex)
PSI_MINUS = np.array([0, _S, -_S, 0], dtype=complex)
BELL_BASIS = (PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS)


def werner_state(p: float, spacing: float = 1.0) -> BipartiteSystem:
    """Singlet with weight ``p`` mixed with white noise."""
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"p must lie in [0, 1], got {p}")
    rho = p * ket_to_density(PSI_MINUS) + (1 - p) * np.eye(4) / 4
    return BipartiteSystem.build(rho, 2, 2, *_qubit_pair(spacing))


def bell_diagonal(x, spacing: float = 1.0, tol: ToleranceSet = DEFAULT_TOL) -> BipartiteSystem:
    """Mixture of phi+, phi-, psi+, psi- with weights ``x`` (non-increasing)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (4,):
        raise SpectrumError("Bell-diagonal weights need exactly four entries")
    if np.any(x < -tol.tol_psd) or abs(x.sum() - 1) > tol.tol_trace:
        raise SpectrumError(f"weights {x} are not a probability vector")
    if np.any(np.diff(x) > tol.tol_eig):
        raise SpectrumError(f"weights {x} are not non-increasing")
    rho = sum(w * ket_to_density(b) for w, b in zip(x, BELL_BASIS))
    return BipartiteSystem.build(rho, 2, 2, *_qubit_pair(spacing))


def pure_from_schmidt(
    coeffs,
    d1: int,
    d2: int,
    ham_a: HamiltonianSpec | None = None,
    ham_b: HamiltonianSpec | None = None,
    tol: ToleranceSet = DEFAULT_TOL,
) -> BipartiteSystem:
    """The state sum_i sqrt(coeffs[i]) |ii>, with coeffs the Schmidt weights."""
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or len(c) > min(d1, d2):
        raise SchmidtRankTooLarge(f"{len(c)} Schmidt weights do not fit in {d1}x{d2}")
    if np.any(c < 0) or abs(c.sum() - 1) > tol.tol_trace:
        raise NormalizationError(f"Schmidt weights {c} must be non-negative and sum to 1")
    psi = np.zeros(d1 * d2, dtype=complex)
    for i, lam in enumerate(c):
        psi[i * d2 + i] = np.sqrt(lam)
    return BipartiteSystem.build(ket_to_density(psi), d1, d2, ham_a, ham_b, tol)


def product_state(sigma, tau, ham_a=None, ham_b=None) -> BipartiteSystem:
    sigma = np.asarray(sigma, dtype=complex)
    tau = np.asarray(tau, dtype=complex)
    return BipartiteSystem.build(np.kron(sigma, tau), len(sigma), len(tau), ham_a, ham_b)


def haar_ket(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_separable(
    d1: int,
    d2: int,
    n_terms: int,
    seed=None,
    ham_a: HamiltonianSpec | None = None,
    ham_b: HamiltonianSpec | None = None,
) -> BipartiteSystem:
    """Dirichlet-weighted mixture of ``n_terms`` Haar-random pure product states."""
    if n_terms < 1:
        raise ValidationError("n_terms must be >= 1")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(n_terms))
    rho = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for w in weights:
        ket = np.kron(haar_ket(d1, rng), haar_ket(d2, rng))
        rho += w * np.outer(ket, ket.conj())
    return BipartiteSystem.build(rho, d1, d2, ham_a, ham_b)


def haar_random_pure(
    d1: int,
    d2: int,
    seed=None,
    ham_a: HamiltonianSpec | None = None,
    ham_b: HamiltonianSpec | None = None,
) -> BipartiteSystem:
    rng = np.random.default_rng(seed)
    return BipartiteSystem.build(ket_to_density(haar_ket(d1 * d2, rng)), d1, d2, ham_a, ham_b)


def gibbs_state(ham: HamiltonianSpec, beta: float) -> np.ndarray:
    e = np.asarray(ham.energies, dtype=float)
    w = np.exp(-beta * (e - e.min()))
    return np.diag(w / w.sum()).astype(complex)
