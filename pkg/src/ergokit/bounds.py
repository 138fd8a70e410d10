"""Separability bounds on the ergotropic gap and the criteria built on them.

For a separable ``d1 x d2`` state (d1 <= d2) whose local Hamiltonians are
linear ladders with common spacing E::

    gap <= min((Y - Z) * E, M(d1, d2) * E)

``Y`` bounds the local passive energies from the global spectrum, ``Z`` is the
global passive energy at E = 1, and ``M`` is the largest value the bound can
take over all separable states of the given dimensions. Everything is
computed at unit spacing and multiplied by E at the end.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .ergotropy import ergotropic_gap
from .errors import (
    CaseMismatch,
    LengthMismatch,
    NonLinearHamiltonian,
    RangeError,
    UnequalSpacing,
    ValidationError,
)
from .linalg import DEFAULT_TOL, ToleranceSet, hermitian_spectrum, partial_trace, von_neumann_entropy
from .states import BipartiteSystem

#: entrywise distance to I/2 below which a qubit marginal counts as maximally mixed
MAX_MIXED_TOL = 1e-8


class Verdict(str, enum.Enum):
    ENTANGLED = "Entangled"
    INCONCLUSIVE = "Inconclusive"
    SEPARABLE = "Separable"


class BoundCase(str, enum.Enum):
    CASE_I = "CaseI"
    CASE_II = "CaseII"


class DimensionBound(NamedTuple):
    value: float
    case: BoundCase
    lm: tuple[int, int] | None
    kj: tuple[int, int] | None


class MutualInformationGap(NamedTuple):
    delta: float
    bound: float
    flagged: bool


@dataclass(frozen=True)
class BoundReport:
    y: float
    z: float
    spectral_bound: float
    lm: tuple[int, int] | None
    kj: tuple[int, int] | None
    case: BoundCase
    m_value: float
    dimension_bound: float
    bound: float
    spacing: float = 1.0
    gap: float | None = None
    verdict: Verdict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["case"] = self.case.value
        d["verdict"] = self.verdict.value if self.verdict is not None else None
        d["lm"] = list(self.lm) if self.lm is not None else None
        d["kj"] = list(self.kj) if self.kj is not None else None
        return d


def _check_spectrum(x, d1: int, d2: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != d1 * d2:
        raise LengthMismatch(f"spectrum of length {x.size} does not match {d1}x{d2}")
    if np.any(np.diff(x) > DEFAULT_TOL.tol_eig):
        raise ValidationError("spectrum must be in non-increasing order")
    return x


def d1_threshold(d1: int) -> int:
    """Index of the last entry on the energy level d1 - 1 (the D1 constant)."""
    return d1 * (d1 - 1) // 2 + (d1 - 1)


def spectral_y(x, d1: int, d2: int) -> float:
    x = _check_spectrum(x, d1, d2)
    i1 = np.arange(d1)
    i2 = np.arange(d2)
    return float(
        i1 @ x[:d1] + i2 @ x[:d2] + (d1 - 1) * x[d1:].sum() + (d2 - 1) * x[d2:].sum()
    )


def global_passive_z(x, d1: int, d2: int) -> float:
    """Global passive energy at unit spacing, summed level by level.

    Level t of the product ladder holds t + 1 states below d1, d1 states up to
    d2 - 1 and d1 + d2 - 1 - t states above; the spectrum fills them in order.
    """
    x = _check_spectrum(x, d1, d2)
    if d1 > d2:
        d1, d2 = d2, d1
    D1 = d1_threshold(d1)
    D2 = D1 + (d2 - d1) * d1
    z = 0.0
    for i in range(d1):
        start = i * (i + 1) // 2
        z += i * x[start : start + i + 1].sum()
    for i in range(1, d2 - d1 + 1):
        start = D1 + d1 * (i - 1) + 1
        z += (i + d1 - 1) * x[start : start + d1].sum()
    for i in range(1, d1):
        start = D2 + d1 * (i - 1) - i * (i - 1) // 2 + 1
        z += (i + d2 - 1) * x[start : start + d1 - i].sum()
    return float(z)


def solve_lm(d2: int) -> tuple[int, int]:
    """Integers with l(l+1)/2 + m = d2 - 1 and 0 <= m <= l."""
    if d2 < 2:
        raise ValidationError(f"d2 must be >= 2, got {d2}")
    target = d2 - 1
    l = (math.isqrt(8 * target + 1) - 1) // 2
    return l, target - l * (l + 1) // 2


def solve_kj(d1: int, d2: int) -> tuple[int, int]:
    """Integers with D1 + (k-1) d1 + j = d2 - 1 and 1 <= j <= d1."""
    D1 = d1_threshold(d1)
    rest = d2 - 1 - D1
    if rest <= 0:
        raise CaseMismatch(f"d2 - 1 = {d2 - 1} <= D1 = {D1}: the (l, m) case applies")
    k, j = divmod(rest - 1, d1)
    return k + 1, j + 1


def dimension_bound_m(d1: int, d2: int) -> DimensionBound:
    """Largest separable-state gap (in units of E) for the given dimensions."""
    if not 2 <= d1 <= d2:
        raise ValidationError(f"need 2 <= d1 <= d2, got ({d1}, {d2})")
    if d2 - 1 <= d1_threshold(d1):
        l, m = solve_lm(d2)
        value = (d1 - 1) / 2 + (d2 - 1) / 2 - (l / d2) * ((l * l - 1) / 3 + m + 1)
        return DimensionBound(value, BoundCase.CASE_I, (l, m), None)
    k, j = solve_kj(d1, d2)
    # last term: j partially filled entries on level d1 - 1 + k, each weighted 1/d2
    value = (
        (d1 + d2) / 2
        - 1
        - (d1 / d2) * ((d1 * d1 - 1) / 3 + (k - 1) * (d1 - 1 + k / 2))
        - j * (d1 - 1 + k) / d2
    )
    return DimensionBound(value, BoundCase.CASE_II, None, (k, j))


def uniform_marginal_oracle(d1: int, d2: int) -> float:
    """M(d1, d2) by direct summation with uniform marginals.

    Local passive energies of uniform marginals minus R, where R weights each
    of the first d2 marginal populations by the level its index occupies when
    the product ladder is filled anti-diagonal by anti-diagonal.
    """
    levels = []
    for t in range(d1 + d2 - 1):
        levels.extend([t] * sum(1 for a in range(d1) if 0 <= t - a < d2))
        if len(levels) >= d2:
            break
    r = sum(levels[:d2]) / d2
    local = sum(range(d1)) / d1 + sum(range(d2)) / d2
    return local - r


def separable_gap_bound(x, d1: int, d2: int, spacing: float = 1.0) -> BoundReport:
    if not spacing > 0:
        raise RangeError(f"spacing must be positive, got {spacing}")
    if d1 > d2:
        d1, d2 = d2, d1
    y = spectral_y(x, d1, d2)
    z = global_passive_z(x, d1, d2)
    dim = dimension_bound_m(d1, d2)
    spectral = (y - z) * spacing
    dimensional = dim.value * spacing
    return BoundReport(
        y=y,
        z=z,
        spectral_bound=spectral,
        lm=dim.lm,
        kj=dim.kj,
        case=dim.case,
        m_value=dim.value,
        dimension_bound=dimensional,
        bound=min(spectral, dimensional),
        spacing=spacing,
    )


def common_spacing(sys: BipartiteSystem) -> float:
    """Spacing shared by both local ladders, or raise if there is none."""
    for h in (sys.ham_a, sys.ham_b):
        if not h.is_linear:
            raise NonLinearHamiltonian(f"ladder {h.energies} is not linear")
    sa, sb = sys.ham_a.spacing, sys.ham_b.spacing
    if not math.isclose(sa, sb, rel_tol=1e-12, abs_tol=0.0):
        raise UnequalSpacing(f"local spacings differ: {sa} vs {sb}")
    return sa


def has_maximally_mixed_qubit_marginals(sys: BipartiteSystem, atol: float = MAX_MIXED_TOL) -> bool:
    if (sys.d1, sys.d2) != (2, 2):
        return False
    half = np.eye(2) / 2
    for keep in ("A", "B"):
        if np.max(np.abs(partial_trace(sys.rho, 2, 2, keep).matrix - half)) > atol:
            return False
    return True


def certify_entanglement(sys: BipartiteSystem, tol: ToleranceSet = DEFAULT_TOL) -> BoundReport:
    """Compare the gap with the separable bound.

    A violation proves entanglement. Otherwise the answer is Inconclusive,
    except for two qubits with maximally mixed marginals, where the bound is
    also sufficient and the state is reported Separable.
    """
    spacing = common_spacing(sys)
    x = hermitian_spectrum(sys.rho)
    report = separable_gap_bound(x, sys.d1, sys.d2, spacing)
    gap = ergotropic_gap(sys, tol).gap
    if gap > report.bound + tol.tol_eig:
        verdict = Verdict.ENTANGLED
    elif has_maximally_mixed_qubit_marginals(sys):
        verdict = Verdict.SEPARABLE
    else:
        verdict = Verdict.INCONCLUSIVE
    return _with(report, gap=gap, verdict=verdict)


def _with(report: BoundReport, **changes) -> BoundReport:
    d = {f: getattr(report, f) for f in report.__dataclass_fields__}
    d.update(changes)
    return BoundReport(**d)


def dimension_witness(gap: float, spacing: float = 1.0, tol: float = DEFAULT_TOL.tol_eig) -> int:
    """Smallest local dimension D of a D x D system able to produce ``gap``.

    A D x D state reaches at most (D - 1) E, so a larger gap rules out D.
    """
    if not spacing > 0:
        raise RangeError(f"spacing must be positive, got {spacing}")
    if gap < -tol or not math.isfinite(gap):
        raise RangeError(f"gap must be a finite non-negative number, got {gap}")
    if gap <= tol:
        return 1
    return max(2, math.ceil(gap / spacing - tol) + 1)


def mutual_information_gap(
    sys: BipartiteSystem, beta: float, tol: ToleranceSet = DEFAULT_TOL
) -> MutualInformationGap:
    """Free-energy work difference I(A:B)/beta and its separable ceiling.

    Entropies are in bits, so 1/beta carries the matching unit (k_B T ln 2).
    """
    if not beta > 0:
        raise RangeError(f"beta must be positive, got {beta}")
    s_a = von_neumann_entropy(partial_trace(sys.rho, sys.d1, sys.d2, "A"))
    s_b = von_neumann_entropy(partial_trace(sys.rho, sys.d1, sys.d2, "B"))
    s_ab = von_neumann_entropy(sys.rho)
    delta = (s_a + s_b - s_ab) / beta
    bound = min(math.log2(sys.d1), math.log2(sys.d2)) / beta
    return MutualInformationGap(delta, bound, delta > bound + tol.tol_eig)
