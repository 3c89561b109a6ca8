"""Command-line front end.

Exit codes: 0 success, 2 parameter or domain error, 3 malformed input
file, 4 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from pathlib import Path

from . import analysis, kernels
from .compose import compose
from .core import BlockBinaryMatrix, TernaryBlockMatrix
from .devore import devore_matrix
from .errors import SensingMatrixError, VerificationError
from .mmio import provenance_entry, read_matrix, write_matrix
from .omp import recovery_trials
from .planner import execute_plan, plan_row_size
from .ternary import hadamard_expand, sign_flip

EXIT_OK, EXIT_PARAM, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3, 4

COLUMN_CEILING = 10_000


class InputFileError(Exception):
    """Wraps any failure while loading an input file (exit code 3)."""


def _load(path):
    try:
        return read_matrix(path)
    except (SensingMatrixError, OSError) as exc:
        raise InputFileError(f"{path}: {exc}") from exc


def _load_block(path) -> BlockBinaryMatrix:
    matrix, _ = _load(path)
    if not isinstance(matrix, BlockBinaryMatrix):
        raise InputFileError(f"{path}: not a block binary matrix file")
    return matrix


def _check_ceiling(matrix, force: bool) -> None:
    cols = matrix.shape[1]
    if cols > COLUMN_CEILING and not force:
        raise SensingMatrixError(
            f"{cols} columns exceed the brute-force ceiling of {COLUMN_CEILING}; pass --force"
        )


def _write(out, matrix, kind, params, provenance=(), caught=()):
    meta = write_matrix(
        out, matrix, kind, params, provenance, warnings=[str(w.message) for w in caught]
    )
    rows, cols = meta["shape"]
    print(f"wrote {out}: {rows} x {cols}, r={meta['r']}, density {meta['density']}")
    return meta


def cmd_devore(args) -> int:
    m = devore_matrix(args.p, args.r)
    out = args.out or f"devore-p{args.p}-r{args.r}.mtx"
    _write(out, m, "devore", {"p": args.p, "r": args.r})
    return EXIT_OK


def cmd_compose(args) -> int:
    a = _load_block(args.file_a)
    b = _load_block(args.file_b)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        m = compose(a, b, args.k)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    prov = [provenance_entry(args.file_a), provenance_entry(args.file_b)]
    _write(args.out, m, "compose", {"k": args.k}, prov, caught)
    return EXIT_OK


def cmd_ternary(args) -> int:
    matrix, _ = _load(args.file)
    if args.mode == "signflip":
        if not isinstance(matrix, BlockBinaryMatrix):
            raise InputFileError(f"{args.file}: signflip needs a block binary matrix file")
        out_m = sign_flip(matrix)
        params = {"mode": "signflip"}
    else:
        if args.rprime is None:
            raise SensingMatrixError("hadamard mode requires --rprime")
        if isinstance(matrix, TernaryBlockMatrix):
            raise InputFileError(f"{args.file}: hadamard needs a binary matrix file")
        out_m = hadamard_expand(matrix, args.rprime)
        params = {"mode": "hadamard", "r_prime": args.rprime}
    kind = "signflip" if args.mode == "signflip" else "hadamard"
    _write(args.out, out_m, kind, params, [provenance_entry(args.file)])
    return EXIT_OK


def cmd_plan(args) -> int:
    plan = plan_row_size(args.rows, args.r)
    print(plan.describe())
    if args.execute:
        m = execute_plan(plan)
        out = args.out or f"plan-m{args.rows}.mtx"
        _write(out, m, "plan", {"m": args.rows, "r": args.r, **plan.to_dict()})
    return EXIT_OK


def cmd_analyze(args) -> int:
    matrix, _ = _load(args.file)
    _check_ceiling(matrix, args.force)
    report = analysis.analyze(matrix)
    print(json.dumps(report.to_dict(), sort_keys=False))
    return EXIT_OK


def cmd_verify(args) -> int:
    matrix, meta = _load(args.file)
    _check_ceiling(matrix, args.force)
    problems = []
    if meta is None:
        problems.append("no metadata sidecar")
    else:
        payload = Path(args.file).read_bytes()
        if hashlib.sha256(payload).hexdigest() != meta.get("payload_sha256"):
            problems.append("payload digest does not match metadata")
        if meta.get("density") != str(analysis.density(matrix)):
            problems.append(f"density {analysis.density(matrix)} != declared {meta.get('density')}")
    declared = getattr(matrix, "r", None)
    measured = analysis.max_overlap(matrix) if matrix.shape[1] >= 2 else 0
    if declared is not None and measured > declared:
        problems.append(f"measured overlap {measured} exceeds declared bound {declared}")
    print(json.dumps({"declared_r": declared, "max_overlap": measured, "ok": not problems}))
    if problems:
        raise VerificationError("; ".join(problems))
    return EXIT_OK


def cmd_omp(args) -> int:
    matrix, _ = _load(args.file)
    stats = recovery_trials(matrix, args.sparsity, args.trials, args.seed)
    print(f"success rate: {stats.successes}/{stats.trials} ({100 * stats.rate:.2f}%)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sparsecs",
        description="Deterministic sparse binary/ternary compressed-sensing matrices.",
    )
    p.add_argument("--backend", choices=sorted(kernels.BACKENDS), help="pairwise scan backend")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("devore", help="DeVore matrix over Z_p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_devore)

    s = sub.add_parser("compose", help="compose two block binary matrix files")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out", default="composed.mtx")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("ternary", help="sign-flip or Hadamard ternary matrix")
    s.add_argument("file")
    s.add_argument("--mode", choices=("signflip", "hadamard"), required=True)
    s.add_argument("--rprime", type=int)
    s.add_argument("--out", default="ternary.mtx")
    s.set_defaults(func=cmd_ternary)

    s = sub.add_parser("plan", help="plan a matrix with a given row size")
    s.add_argument("--rows", type=int, required=True)
    s.add_argument("--r", type=int, default=1, help="degree of every base DeVore matrix")
    s.add_argument("--execute", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_plan)

    for name, func, helptext in (
        ("analyze", cmd_analyze, "report coherence, density and RIP bounds as JSON"),
        ("verify", cmd_verify, "re-verify a file's declared overlap bound"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--force", action="store_true", help=f"allow more than {COLUMN_CEILING} columns")
        s.set_defaults(func=func)

    s = sub.add_parser("omp", help="seeded OMP recovery trials")
    s.add_argument("file")
    s.add_argument("--sparsity", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_omp)
    return p


def main(argv=None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    if args.backend:
        kernels.BACKEND = args.backend
    try:
        return args.func(args)
    except InputFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except SensingMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
