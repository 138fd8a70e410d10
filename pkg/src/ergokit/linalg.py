"""Validated density-matrix primitives.

Everything here is a pure function of its inputs. Matrices are plain complex
``numpy`` arrays; :class:`DensityMatrix` only marks an array that has passed
:func:`validate_density`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EigensolverFailure,
    NotHermitian,
    NotPositive,
    NotSquare,
    TraceError,
)


@dataclass(frozen=True)
class ToleranceSet:
    tol_herm: float = 1e-10
    tol_trace: float = 1e-9
    tol_psd: float = 1e-9
    tol_eig: float = 1e-9

    def with_eig(self, tol_eig: float) -> "ToleranceSet":
        return ToleranceSet(self.tol_herm, self.tol_trace, self.tol_psd, tol_eig)


DEFAULT_TOL = ToleranceSet()


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A Hermitian, positive semidefinite, unit-trace matrix.

    Build instances with :func:`validate_density`; the constructor itself
    performs no checks.
    """

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def hermitianize(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


def _as_array(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def validate_density(m, tol: ToleranceSet = DEFAULT_TOL) -> DensityMatrix:
    """Check ``m`` is a density matrix and return a cleaned copy.

    Eigenvalues that dip below zero by at most ``tol.tol_psd`` are clipped and
    the trace is renormalised to one. Larger violations raise.
    """
    a = np.array(_as_array(m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    herm_err = float(np.max(np.abs(a - a.conj().T)))
    if herm_err > tol.tol_herm:
        raise NotHermitian(f"max |M - M^H| = {herm_err:.3e} exceeds {tol.tol_herm:.1e}")
    a = hermitianize(a)
    tr = float(np.trace(a).real)
    if abs(tr - 1.0) > tol.tol_trace:
        raise TraceError(f"trace {tr!r} differs from 1 by more than {tol.tol_trace:.1e}")
    w, v = _eigh(a)
    if w[0] < -tol.tol_psd:
        raise NotPositive(f"eigenvalue {w[0]:.3e} below -{tol.tol_psd:.1e}")
    if w[0] < 0.0:
        w = np.clip(w, 0.0, None)
        a = (v * w) @ v.conj().T
        a = hermitianize(a)
    a = a / np.trace(a).real
    return DensityMatrix(a)


def _eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK non-convergence
        raise EigensolverFailure(str(exc)) from exc


def hermitian_spectrum(rho) -> np.ndarray:
    """Eigenvalues of ``rho`` in non-increasing order, clipped at 0, summing to 1."""
    a = _as_array(rho)
    try:
        w = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise EigensolverFailure(str(exc)) from exc
    w = np.clip(w[::-1], 0.0, None)
    return w / w.sum()


def partial_trace(rho, d1: int, d2: int, keep: str = "A") -> DensityMatrix:
    """Reduced state of a ``d1 x d2`` system; ``keep`` is ``"A"`` or ``"B"``."""
    a = _as_array(rho)
    if a.shape != (d1 * d2, d1 * d2):
        raise DimensionMismatch(f"matrix of shape {a.shape} is not {d1}x{d2} bipartite")
    t = a.reshape(d1, d2, d1, d2)
    if keep in ("A", "a", 0):
        red = np.einsum("ijkj->ik", t)
    elif keep in ("B", "b", 1):
        red = np.einsum("ijil->jl", t)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityMatrix(hermitianize(red))


def entropy_of_spectrum(values) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    p = np.asarray(values, dtype=float)
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def von_neumann_entropy(rho) -> float:
    return entropy_of_spectrum(hermitian_spectrum(rho))


def ket_to_density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def swap_subsystems(rho, d1: int, d2: int) -> np.ndarray:
    """Reorder a ``d1 x d2`` operator so that B becomes the first factor."""
    a = _as_array(rho)
    return a.reshape(d1, d2, d1, d2).transpose(1, 0, 3, 2).reshape(d1 * d2, d1 * d2)
