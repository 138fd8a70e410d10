"""Independent checks for the closed forms: exact PPT in low dimension,
permutation brute force for passive energies, and seeded sampling sweeps."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bounds import Verdict, certify_entanglement
from .errors import LengthMismatch, UnsupportedDimension, ValidationError
from .linalg import DEFAULT_TOL, ToleranceSet, _as_array, hermitian_spectrum
from .majorization import nielsen_kempe_holds
from .states import BipartiteSystem, haar_random_pure, random_separable, werner_state

PPT_EXACT_DIMS = {(2, 2), (2, 3)}
BRUTE_FORCE_MAX_LEN = 8
SAMPLERS = ("separable", "haar-pure", "werner-grid")


def partial_transpose(rho, d1: int, d2: int) -> np.ndarray:
    """Transpose on the second factor."""
    a = _as_array(rho)
    return a.reshape(d1, d2, d1, d2).transpose(0, 3, 2, 1).reshape(d1 * d2, d1 * d2)


def ppt_separable(sys: BipartiteSystem, tol: ToleranceSet = DEFAULT_TOL) -> bool:
    """Exact separability test, only offered where PPT is sufficient (2x2, 2x3)."""
    if (sys.d1, sys.d2) not in PPT_EXACT_DIMS:
        raise UnsupportedDimension(f"PPT is not an exact test in {sys.d1}x{sys.d2}")
    w = np.linalg.eigvalsh(partial_transpose(sys.rho, sys.d1, sys.d2))
    return bool(w[0] >= -tol.tol_psd)


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def brute_passive_energy(x, energies) -> float:
    """Minimum of sum_i x[pi(i)] * energies[i] over all orderings pi.

    Exhaustive up to length 8; longer inputs use the sorted pairing, which
    the rearrangement inequality makes optimal.
    """
    x = np.asarray(x, dtype=float)
    e = np.asarray(energies, dtype=float)
    if x.shape != e.shape or x.ndim != 1:
        raise LengthMismatch(f"lengths differ: {x.size} vs {e.size}")
    if x.size <= BRUTE_FORCE_MAX_LEN:
        return float(np.min(x[_permutations(x.size)] @ e))
    return float(np.sort(x)[::-1] @ np.sort(e))


def schmidt_rank(sys: BipartiteSystem, tol: float = 1e-9) -> int:
    """Number of singular values of the reshaped state vector above ``tol``."""
    w = hermitian_spectrum(sys.rho)
    if w[0] < 1 - 1e-8:
        raise ValidationError("state is not pure")
    _, vecs = np.linalg.eigh(sys.rho.matrix)
    psi = vecs[:, -1].reshape(sys.d1, sys.d2)
    s = np.linalg.svd(psi, compute_uv=False)
    return int(np.sum(s > tol))


@dataclass(frozen=True)
class SweepRecord:
    seed: int
    d1: int
    d2: int
    param: float
    spectrum: tuple[float, ...]
    gap: float
    bound_spectral: float
    bound_dimensional: float
    bound: float
    nk_holds: bool
    ppt_separable: bool | None
    verdict: Verdict
    violation: bool

    def row(self) -> dict:
        return {
            "seed": self.seed,
            "d1": self.d1,
            "d2": self.d2,
            "param": self.param,
            "gap": self.gap,
            "bound_spectral": self.bound_spectral,
            "bound_dimensional": self.bound_dimensional,
            "bound": self.bound,
            "nk_holds": self.nk_holds,
            "ppt_separable": self.ppt_separable,
            "verdict": self.verdict.value,
        }


def sample_seed(root: int, index: int) -> int:
    """Per-sample seed derived from a root seed and a counter."""
    return int(np.random.SeedSequence([root, index]).generate_state(1, dtype=np.uint32)[0])


def _make_sample(sampler: str, d1: int, d2: int, index: int, n: int, seed: int, n_terms):
    if sampler == "separable":
        terms = n_terms if n_terms is not None else 1 + index % (d1 * d2)
        return random_separable(d1, d2, terms, seed=seed), float(terms)
    if sampler == "haar-pure":
        sys = haar_random_pure(d1, d2, seed=seed)
        return sys, float(schmidt_rank(sys))
    if sampler == "werner-grid":
        p = index / (n - 1) if n > 1 else 0.0
        return werner_state(p), p
    raise ValueError(f"unknown sampler {sampler!r}; expected one of {SAMPLERS}")


def _record(args) -> SweepRecord:
    sampler, d1, d2, index, n, root, n_terms, tol = args
    seed = sample_seed(root, index)
    sys, param = _make_sample(sampler, d1, d2, index, n, seed, n_terms)
    report = certify_entanglement(sys, tol)
    ppt = ppt_separable(sys, tol) if (sys.d1, sys.d2) in PPT_EXACT_DIMS else None
    return SweepRecord(
        seed=seed,
        d1=sys.d1,
        d2=sys.d2,
        param=param,
        spectrum=tuple(float(v) for v in hermitian_spectrum(sys.rho)),
        gap=report.gap,
        bound_spectral=report.spectral_bound,
        bound_dimensional=report.dimension_bound,
        bound=report.bound,
        nk_holds=nielsen_kempe_holds(sys, tol),
        ppt_separable=ppt,
        verdict=report.verdict,
        violation=report.gap > report.bound + tol.tol_eig,
    )


def violation_sweep(
    dims: tuple[int, int],
    n_samples: int,
    seed: int = 0,
    sampler: str = "separable",
    n_terms: int | None = None,
    tol: ToleranceSet = DEFAULT_TOL,
    workers: int = 1,
) -> list[SweepRecord]:
    """Evaluate gap, bound, Nielsen-Kempe and PPT on ``n_samples`` states.

    Each sample draws from its own seed ``sample_seed(seed, i)``, so records
    do not depend on ``workers``. For the separable sampler ``param`` is the
    number of product terms (cycling through 1..d1*d2 unless ``n_terms`` is
    fixed); for haar-pure it is the Schmidt rank; for werner-grid it is p on
    an even grid over [0, 1] (dims are ignored).
    """
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}; expected one of {SAMPLERS}")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    d1, d2 = dims
    jobs = [(sampler, d1, d2, i, n_samples, seed, n_terms, tol) for i in range(n_samples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_record, jobs, chunksize=max(1, n_samples // (4 * workers))))
    return [_record(job) for job in jobs]


def summarize(records: list[SweepRecord]) -> dict:
    ppt_known = [r for r in records if r.ppt_separable is not None]
    return {
        "n": len(records),
        "violations": sum(r.violation for r in records),
        "nk_failures": sum(not r.nk_holds for r in records),
        "entangled": sum(r.verdict is Verdict.ENTANGLED for r in records),
        "separable": sum(r.verdict is Verdict.SEPARABLE for r in records),
        "ppt_entangled": sum(not r.ppt_separable for r in ppt_known),
        "false_positives": sum(
            r.verdict is Verdict.ENTANGLED and r.ppt_separable for r in ppt_known
        ),
    }
