"""Ergotropy, ergotropic gap and thermodynamic separability bounds for bipartite states."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    Verdict,
    certify_entanglement,
    dimension_bound_m,
    dimension_witness,
    global_passive_z,
    mutual_information_gap,
    separable_gap_bound,
    solve_kj,
    solve_lm,
    spectral_y,
    uniform_marginal_oracle,
)
from .ergotropy import GapReport, ergotropic_gap, ergotropy, is_passive, passive_energy, pure_gap
from .linalg import (
    DEFAULT_TOL,
    DensityMatrix,
    ToleranceSet,
    hermitian_spectrum,
    partial_trace,
    validate_density,
    von_neumann_entropy,
)
from .majorization import MajorizationVerdict, majorizes, nielsen_kempe_holds
from .states import (
    BipartiteSystem,
    HamiltonianSpec,
    bell_diagonal,
    global_ladder,
    haar_random_pure,
    linear_hamiltonian,
    pure_from_schmidt,
    random_separable,
    werner_state,
)
