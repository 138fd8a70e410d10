"""Passive energies, ergotropy and the global-minus-local ergotropic gap.

All quantities are spectral: the passive state of rho puts its largest
eigenvalue on the lowest level, the next on the next, and so on. Degenerate
levels therefore need no special treatment.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionMismatch, LengthMismatch
from .linalg import DEFAULT_TOL, ToleranceSet, _as_array, hermitian_spectrum, partial_trace
from .states import BipartiteSystem, HamiltonianSpec, global_diagonal, global_ladder


@dataclass(frozen=True)
class GapReport:
    energy_initial: float
    global_ergotropy: float
    local_ergotropy_a: float
    local_ergotropy_b: float
    gap: float

    def to_dict(self) -> dict:
        return asdict(self)


def passive_energy(spectrum, energies) -> float:
    """Energy of the passive state: populations sorted down against energies sorted up."""
    x = np.sort(np.asarray(spectrum, dtype=float))[::-1]
    e = np.sort(np.asarray(energies, dtype=float))
    if x.shape != e.shape:
        raise LengthMismatch(f"spectrum has {x.size} entries, ladder has {e.size}")
    return float(x @ e)


def _clamp(value: float, tol: float) -> float:
    return 0.0 if abs(value) <= tol else value


def ergotropy(rho, energies, tol: ToleranceSet = DEFAULT_TOL) -> float:
    """Maximal unitary work from ``rho`` under ``H = diag(energies)``.

    ``energies`` is the Hamiltonian diagonal in the basis ``rho`` is written
    in; it need not be sorted (the global diagonal of a product ladder is not).
    """
    a = _as_array(rho)
    e = np.asarray(energies, dtype=float)
    if a.shape != (e.size, e.size):
        raise DimensionMismatch(f"state of shape {a.shape} vs {e.size} energy levels")
    energy = float(np.real(np.diagonal(a)) @ e)
    w = energy - passive_energy(hermitian_spectrum(a), e)
    return _clamp(w, tol.tol_eig)


def is_passive(rho, energies, tol: float = DEFAULT_TOL.tol_eig) -> bool:
    return ergotropy(rho, energies) <= tol


def _local_energies(sys: BipartiteSystem):
    return np.asarray(sys.ham_a.energies), np.asarray(sys.ham_b.energies)


def ergotropic_gap(sys: BipartiteSystem, tol: ToleranceSet = DEFAULT_TOL) -> GapReport:
    """Global ergotropy minus the two local ergotropies.

    The gap itself is evaluated as (local passive energies) minus (global
    passive energy), which never touches Tr(rho H) and so avoids a cancellation.
    """
    rho = sys.rho.matrix
    ea, eb = _local_energies(sys)
    rho_a = partial_trace(rho, sys.d1, sys.d2, "A").matrix
    rho_b = partial_trace(rho, sys.d1, sys.d2, "B").matrix
    pe_a = passive_energy(hermitian_spectrum(rho_a), ea)
    pe_b = passive_energy(hermitian_spectrum(rho_b), eb)
    pe_g = passive_energy(hermitian_spectrum(rho), global_ladder(sys.ham_a, sys.ham_b))

    e_a = float(np.real(np.diagonal(rho_a)) @ ea)
    e_b = float(np.real(np.diagonal(rho_b)) @ eb)
    energy = e_a + e_b
    gap = _clamp(pe_a + pe_b - pe_g, tol.tol_eig)
    return GapReport(
        energy_initial=energy,
        global_ergotropy=_clamp(energy - pe_g, tol.tol_eig),
        local_ergotropy_a=_clamp(e_a - pe_a, tol.tol_eig),
        local_ergotropy_b=_clamp(e_b - pe_b, tol.tol_eig),
        gap=gap,
    )


def gap_from_ergotropies(sys: BipartiteSystem, tol: ToleranceSet = DEFAULT_TOL) -> float:
    """Same gap, built as W_global - (W_A + W_B) from three separate ergotropies."""
    rho = sys.rho.matrix
    w_g = ergotropy(rho, global_diagonal(sys.ham_a, sys.ham_b), tol)
    w_a = ergotropy(partial_trace(rho, sys.d1, sys.d2, "A"), sys.ham_a.energies, tol)
    w_b = ergotropy(partial_trace(rho, sys.d1, sys.d2, "B"), sys.ham_b.energies, tol)
    return w_g - (w_a + w_b)


def pure_gap(schmidt, ham_a: HamiltonianSpec, ham_b: HamiltonianSpec) -> float:
    """Gap of a pure state from its Schmidt weights alone.

    Both marginals share the Schmidt spectrum, and the global passive state is
    the product ground state, so the gap is sum_j lambda_j (e^A_j + e^B_j)
    minus the ground energy.
    """
    lam = np.sort(np.asarray(schmidt, dtype=float))[::-1]
    if lam.size > min(ham_a.dim, ham_b.dim):
        raise LengthMismatch(
            f"{lam.size} Schmidt weights exceed local dimensions ({ham_a.dim}, {ham_b.dim})"
        )
    n = lam.size
    ea = np.asarray(ham_a.energies[:n])
    eb = np.asarray(ham_b.energies[:n])
    ground = ham_a.energies[0] + ham_b.energies[0]
    return float(lam @ (ea + eb) - ground)
