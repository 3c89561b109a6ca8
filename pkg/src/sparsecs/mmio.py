"""Matrix Market payloads with a JSON metadata sidecar.

``name.mtx`` holds the matrix in coordinate integer format with 1-based
indices, entries sorted by column then row.  ``name.meta.json`` (same
basename) records the block structure, declared overlap bound and
provenance, so the payload stays plain Matrix Market.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .analysis import density
from .core import BlockBinaryMatrix, TernaryBlockMatrix
from .errors import FileFormatError, MalformedMatrixError

__all__ = [
    "BANNER",
    "dump_payload",
    "meta_path",
    "parse_payload",
    "provenance_entry",
    "read_matrix",
    "write_matrix",
]

BANNER = "%%MatrixMarket matrix coordinate integer general"

FORMATS = ("block-binary", "ternary-block", "ternary-hadamard", "ternary")


def meta_path(path) -> Path:
    path = Path(path)
    stem = path.name[:-4] if path.name.endswith(".mtx") else path.name
    return path.with_name(stem + ".meta.json")


def _columns(matrix):
    if isinstance(matrix, BlockBinaryMatrix):
        rows = matrix.support_rows()
        return rows, np.ones_like(rows)
    if isinstance(matrix, TernaryBlockMatrix):
        return matrix.rows, matrix.signs.astype(np.int64)
    raise TypeError(f"cannot serialize {type(matrix).__name__}")


def dump_payload(matrix) -> str:
    rows, vals = _columns(matrix)
    n_rows, n_cols = matrix.shape
    cols = np.repeat(np.arange(1, n_cols + 1), rows.shape[1])
    body = np.column_stack([rows.ravel(), cols, vals.ravel()])
    lines = [BANNER, f"{n_rows} {n_cols} {body.shape[0]}"]
    lines.extend(f"{i} {j} {v}" for i, j, v in body.tolist())
    return "\n".join(lines) + "\n"


def parse_payload(text: str):
    """``(n_rows, n_cols, entries)`` with ``entries`` an (nnz, 3) int array."""
    lines = text.split("\n")
    if not lines or lines[0].rstrip("\r") != BANNER:
        raise FileFormatError(f"first line must be {BANNER!r}")
    body = [ln.strip() for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise FileFormatError("missing size line")
    try:
        n_rows, n_cols, nnz = (int(v) for v in body[0].split())
        entries = np.array([[int(v) for v in ln.split()] for ln in body[1:]], dtype=np.int64)
    except ValueError as exc:
        raise FileFormatError(f"non-integer token: {exc}") from exc
    entries = entries.reshape(-1, 3) if entries.size else np.zeros((0, 3), dtype=np.int64)
    if entries.shape[0] != nnz:
        raise FileFormatError(f"size line declares {nnz} entries, found {entries.shape[0]}")
    if nnz and (
        entries[:, 0].min() < 1
        or entries[:, 0].max() > n_rows
        or entries[:, 1].min() < 1
        or entries[:, 1].max() > n_cols
    ):
        raise FileFormatError("coordinate outside the declared shape")
    if nnz and not np.isin(entries[:, 2], (-1, 1)).all():
        raise FileFormatError("entries must be 1 or -1")
    return n_rows, n_cols, entries


def _sparse_columns(n_cols: int, entries: np.ndarray):
    order = np.lexsort((entries[:, 0], entries[:, 1]))
    entries = entries[order]
    counts = np.bincount(entries[:, 1] - 1, minlength=n_cols)
    if n_cols == 0 or (counts != counts[0]).any() or counts[0] == 0:
        raise MalformedMatrixError("every column must have the same nonzero count")
    w = int(counts[0])
    rows = entries[:, 0].reshape(n_cols, w)
    if w > 1 and not (np.diff(rows, axis=1) > 0).all():
        raise FileFormatError("duplicate coordinates")
    return rows, entries[:, 2].reshape(n_cols, w)


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _meta_bytes(meta: dict) -> bytes:
    return (json.dumps(meta, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def _structure(matrix) -> dict:
    if isinstance(matrix, BlockBinaryMatrix):
        return {"format": "block-binary", "n": matrix.n, "k": matrix.k, "r": matrix.r}
    if matrix.parent is not None:
        spawn = int(np.bincount(matrix.parent).max())
        fmt = "ternary-hadamard"
    else:
        spawn = None
        fmt = "ternary-block" if matrix.is_block_form else "ternary"
    out = {"format": fmt, "n": matrix.n, "k": matrix.k, "r": matrix.r}
    if spawn is not None:
        out["spawn"] = spawn
    return out


def write_matrix(path, matrix, kind: str, params: dict | None = None, provenance=(), warnings=()) -> dict:
    """Write ``path`` (Matrix Market) and its sidecar; return the metadata dict."""
    path = Path(path)
    payload = dump_payload(matrix).encode("utf-8")
    meta = {
        "kind": kind,
        "params": dict(params or {}),
        **_structure(matrix),
        "shape": list(matrix.shape),
        "density": str(density(matrix)),
        "payload_sha256": _digest(payload),
        "provenance": list(provenance),
    }
    if warnings:
        meta["warnings"] = list(warnings)
    path.write_bytes(payload)
    meta_path(path).write_bytes(_meta_bytes(meta))
    return meta


def provenance_entry(path) -> dict:
    """Digest record identifying an input file and its metadata."""
    path = Path(path)
    mp = meta_path(path)
    entry = {"file": path.name, "payload_sha256": _digest(path.read_bytes())}
    if mp.exists():
        raw = mp.read_bytes()
        entry["meta_sha256"] = _digest(raw)
        entry["kind"] = json.loads(raw).get("kind")
    return entry


def read_matrix(path):
    """Load a matrix file.

    Returns ``(matrix, meta)``.  With a sidecar, ``matrix`` is a
    :class:`BlockBinaryMatrix` or :class:`TernaryBlockMatrix`; without
    one it is a dense integer array and ``meta`` is None.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    n_rows, n_cols, entries = parse_payload(text)
    mp = meta_path(path)
    if not mp.exists():
        dense = np.zeros((n_rows, n_cols), dtype=np.int64)
        dense[entries[:, 0] - 1, entries[:, 1] - 1] = entries[:, 2]
        return dense, None
    try:
        meta = json.loads(mp.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise FileFormatError(f"cannot parse {mp}: {exc}") from exc
    if list(meta.get("shape", [])) != [n_rows, n_cols]:
        raise FileFormatError(f"metadata shape {meta.get('shape')} != payload shape {[n_rows, n_cols]}")
    fmt = meta.get("format")
    if fmt not in FORMATS:
        raise FileFormatError(f"unknown format {fmt!r}")
    rows, vals = _sparse_columns(n_cols, entries)
    n, k, r = meta.get("n"), meta.get("k"), meta.get("r")
    if fmt == "block-binary":
        if (vals != 1).any():
            raise FileFormatError("binary payload contains -1 entries")
        if n is None or k is None or rows.shape[1] != k or n * k != n_rows:
            raise MalformedMatrixError("payload does not match the declared block structure")
        tuples = rows - n * np.arange(k)
        if tuples.min() < 1 or tuples.max() > n:
            raise MalformedMatrixError("a column does not have exactly one 1 per block")
        matrix = BlockBinaryMatrix(n, k, tuples, r)
    else:
        parent = None
        if fmt == "ternary-hadamard":
            spawn = meta.get("spawn")
            if not spawn or n_cols % spawn:
                raise FileFormatError("hadamard metadata needs a spawn count dividing the column count")
            parent = np.repeat(np.arange(n_cols // spawn), spawn)
        matrix = TernaryBlockMatrix(n_rows, rows, vals, n=n, k=k, r=r, parent=parent)
    return matrix, meta
