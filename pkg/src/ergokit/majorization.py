"""Majorization of probability vectors and the Nielsen-Kempe disorder test."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotNormalizedError
from .linalg import DEFAULT_TOL, ToleranceSet, hermitian_spectrum, partial_trace
from .states import BipartiteSystem


@dataclass(frozen=True)
class MajorizationVerdict:
    holds: bool
    first_violation_index: int | None
    cumulative_margin: tuple[float, ...]

    def __bool__(self) -> bool:
        return self.holds


def _descending_padded(p, q) -> tuple[np.ndarray, np.ndarray]:
    p = np.sort(np.asarray(p, dtype=float))[::-1]
    q = np.sort(np.asarray(q, dtype=float))[::-1]
    n = max(p.size, q.size)
    return np.pad(p, (0, n - p.size)), np.pad(q, (0, n - q.size))


def majorizes(q, p, tol: ToleranceSet = DEFAULT_TOL) -> MajorizationVerdict:
    """Does ``q`` majorize ``p`` (p is more disordered than q)?

    Shorter vectors are padded with zeros. ``cumulative_margin[k]`` is
    ``sum(q[:k+1]) - sum(p[:k+1])``; ``first_violation_index`` is the 1-based
    prefix length where the margin first drops below ``-tol_eig``.
    """
    for name, v in (("q", q), ("p", p)):
        total = float(np.sum(v))
        if abs(total - 1.0) > tol.tol_trace:
            raise NotNormalizedError(f"{name} sums to {total!r}, not 1")
    p, q = _descending_padded(p, q)
    margin = np.cumsum(q) - np.cumsum(p)
    bad = np.flatnonzero(margin < -tol.tol_eig)
    first = int(bad[0]) + 1 if bad.size else None
    return MajorizationVerdict(first is None, first, tuple(float(m) for m in margin))


def nielsen_kempe_holds(sys: BipartiteSystem, tol: ToleranceSet = DEFAULT_TOL) -> bool:
    """True iff both marginal spectra majorize the global spectrum."""
    x = hermitian_spectrum(sys.rho)
    pa = hermitian_spectrum(partial_trace(sys.rho, sys.d1, sys.d2, "A"))
    pb = hermitian_spectrum(partial_trace(sys.rho, sys.d1, sys.d2, "B"))
    return majorizes(pa, x, tol).holds and majorizes(pb, x, tol).holds
