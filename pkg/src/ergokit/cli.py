"""Command-line front end.

Exit codes: 0 success (whatever the verdict), 2 unreadable input or bad
flags, 3 input that fails validation, 4 Hamiltonians outside the bound's
hypothesis (non-linear or unequal spacings).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import certify_entanglement, dimension_bound_m, dimension_witness, separable_gap_bound
from .ergotropy import ergotropic_gap
from .errors import ErgokitError, UnsupportedHamiltonian, ValidationError
from .linalg import DEFAULT_TOL, ToleranceSet
from .oracles import summarize, violation_sweep
from .states import BipartiteSystem, linear_hamiltonian

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_HAMILTONIAN = 4

TOL_ENV = "ERGOKIT_TOL_EIG"
SWEEP_COLUMNS = [
    "seed", "d1", "d2", "param", "gap", "bound_spectral", "bound_dimensional",
    "bound", "nk_holds", "ppt_separable", "verdict",
]
FAMILIES = {"werner": "werner-grid", "separable": "separable", "haar": "haar-pure"}


class ParseError(ErgokitError):
    pass


def load_state_file(path: Path, tol: ToleranceSet = DEFAULT_TOL) -> tuple[BipartiteSystem, str]:
    """Read a state JSON file; returns the system and the sha256 of the raw bytes."""
    try:
        raw = Path(path).read_bytes()
        data = json.loads(raw)
    except (OSError, ValueError) as exc:
        raise ParseError(f"cannot read state file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("state file must hold a JSON object")
    try:
        d1, d2 = int(data["d1"]), int(data["d2"])
        re_part = np.asarray(data["matrix_re"], dtype=float)
        im_part = np.asarray(data.get("matrix_im", np.zeros_like(re_part)), dtype=float)
        spacing_a = float(data.get("spacing_a", 1.0))
        spacing_b = float(data.get("spacing_b", 1.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed state file: {exc}") from exc
    n = d1 * d2
    if re_part.shape != (n, n) or im_part.shape != (n, n):
        raise ValidationError(
            f"matrix arrays have shapes {re_part.shape}, {im_part.shape}; expected {(n, n)}"
        )
    sys_ = BipartiteSystem.build(
        re_part + 1j * im_part,
        d1,
        d2,
        linear_hamiltonian(d1, spacing_a),
        linear_hamiltonian(d2, spacing_b),
        tol,
    )
    return sys_, hashlib.sha256(raw).hexdigest()


def state_file_payload(rho, d1: int, d2: int, spacing_a: float = 1.0, spacing_b: float = 1.0) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {
        "d1": d1,
        "d2": d2,
        "matrix_re": rho.real.tolist(),
        "matrix_im": rho.imag.tolist(),
        "spacing_a": spacing_a,
        "spacing_b": spacing_b,
    }


def _meta(tol: ToleranceSet, digest: str | None = None) -> dict:
    meta = {"tool_version": __version__, "tolerances": asdict(tol)}
    if digest is not None:
        meta["input_digest"] = "sha256:" + digest
    return meta


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _dump(payload: dict, out: Path | None) -> None:
    _emit(json.dumps(payload, indent=2) + "\n", out)


def cmd_gap(args, tol: ToleranceSet) -> int:
    system, digest = load_state_file(args.state, tol)
    report = ergotropic_gap(system, tol)
    payload = {"d1": system.d1, "d2": system.d2, "swapped": system.swapped}
    payload.update(report.to_dict())
    payload.update(_meta(tol, digest))
    _dump(payload, args.out)
    return EXIT_OK


def cmd_certify(args, tol: ToleranceSet) -> int:
    system, digest = load_state_file(args.state, tol)
    gap_report = ergotropic_gap(system, tol)
    bound_report = certify_entanglement(system, tol)
    payload = {"d1": system.d1, "d2": system.d2, "swapped": system.swapped}
    payload.update(gap_report.to_dict())
    payload.update(bound_report.to_dict())
    payload.update(_meta(tol, digest))
    _dump(payload, args.out)
    return EXIT_OK


def _parse_spectrum(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v.strip()], dtype=float)
    except ValueError as exc:
        raise ParseError(f"bad --spectrum {text!r}: {exc}") from exc


def cmd_bound(args, tol: ToleranceSet) -> int:
    d1, d2 = sorted((args.d1, args.d2))
    if d1 < 2:
        raise ValidationError("dimensions must be >= 2")
    if args.spectrum is None:
        dim = dimension_bound_m(d1, d2)
        payload = {
            "d1": d1,
            "d2": d2,
            "case": dim.case.value,
            "lm": list(dim.lm) if dim.lm else None,
            "kj": list(dim.kj) if dim.kj else None,
            "m_value": dim.value,
            "dimension_bound": dim.value * args.spacing,
            "spacing": args.spacing,
        }
    else:
        x = _parse_spectrum(args.spectrum)
        if x.size != d1 * d2:
            raise ValidationError(f"spectrum has {x.size} entries, expected {d1 * d2}")
        if np.any(x < -tol.tol_psd) or abs(x.sum() - 1) > tol.tol_trace:
            raise ValidationError("spectrum must be non-negative and sum to 1")
        x = np.sort(np.clip(x, 0, None))[::-1]
        payload = {"d1": d1, "d2": d2}
        payload.update(separable_gap_bound(x, d1, d2, args.spacing).to_dict())
        for key in ("gap", "verdict"):
            payload.pop(key)
    payload.update(_meta(tol))
    _dump(payload, args.out)
    return EXIT_OK


def cmd_witness_dim(args, tol: ToleranceSet) -> int:
    d = dimension_witness(args.gap, args.spacing, tol.tol_eig)
    _emit(f"{d}\n", args.out)
    return EXIT_OK


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def sweep_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for r in records:
        row = r.row()
        writer.writerow([_csv_value(row[c]) for c in SWEEP_COLUMNS])
    return buf.getvalue()


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"dims must look like 2x3, got {text!r}") from exc


def cmd_sweep(args, tol: ToleranceSet) -> int:
    records = violation_sweep(
        args.dims,
        args.n,
        seed=args.seed,
        sampler=FAMILIES[args.family],
        n_terms=args.n_terms,
        tol=tol,
        workers=args.workers,
    )
    if args.format == "json":
        payload = {
            "family": args.family,
            "root_seed": args.seed,
            "summary": summarize(records),
            "records": [r.row() for r in records],
        }
        payload.update(_meta(tol))
        _dump(payload, args.out)
    else:
        _emit(sweep_to_csv(records), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None, help="write to a file instead of stdout")
    common.add_argument("--tol-eig", type=float, default=None,
                        help=f"eigenvalue tolerance (default 1e-9, or ${TOL_ENV})")

    parser = argparse.ArgumentParser(prog="ergokit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gap", parents=[common], help="global/local ergotropies and their gap")
    p.add_argument("state", type=Path, help="state JSON file")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("certify", parents=[common], help="compare the gap with the separable bound")
    p.add_argument("state", type=Path)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bound", parents=[common], help="separable bound for given dims/spectrum")
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--spectrum", default=None, help="comma-separated eigenvalues")
    p.add_argument("--spacing", type=float, default=1.0)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("witness-dim", parents=[common], help="minimum local dimension for a gap")
    p.add_argument("--gap", type=float, required=True)
    p.add_argument("--spacing", type=float, default=1.0)
    p.set_defaults(func=cmd_witness_dim)

    p = sub.add_parser("sweep", parents=[common], help="seeded sampling table")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--dims", type=_parse_dims, default=(2, 2))
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-terms", type=int, default=None,
                   help="fixed number of product terms for the separable family")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def _tolerances(flag: float | None) -> ToleranceSet:
    if flag is not None:
        return DEFAULT_TOL.with_eig(flag)
    env = os.environ.get(TOL_ENV)
    if env:
        return DEFAULT_TOL.with_eig(float(env))
    return DEFAULT_TOL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _tolerances(args.tol_eig)
    except ValueError:
        print(f"error: {TOL_ENV} is not a number", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, tol)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedHamiltonian as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HAMILTONIAN
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
