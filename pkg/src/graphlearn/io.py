"""Reading and writing graphs, Laplacians and signal matrices.

Graph JSON::

    {"n": 3, "edges": [{"i": 0, "j": 1, "w": 0.5}, ...]}

with 0-based ``i < j`` and only positive weights listed. Laplacian and
signal files are plain comma-separated floats, one matrix row per line.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .exceptions import GraphValidationError, SignalFormatError
from .laplacian import laplacian_from_weights, num_pairs, pair_indices, validate_laplacian


def graph_to_dict(L) -> dict:
    L = validate_laplacian(L)
    n = L.shape[0]
    iu, ju = pair_indices(n)
    w = -L[iu, ju]
    edges = [{"i": int(i), "j": int(j), "w": float(x)}
             for i, j, x in zip(iu, ju, w) if x > 0]
    return {"n": n, "edges": edges}


def graph_from_dict(data: dict) -> np.ndarray:
    try:
        n = int(data["n"])
        edges = data["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphValidationError(f"malformed graph JSON: {exc}") from exc
    if n < 1:
        raise GraphValidationError("graph must have at least one vertex")
    W = np.zeros((n, n))
    for e in edges:
        i, j, w = int(e["i"]), int(e["j"]), float(e["w"])
        if not 0 <= i < j < n:
            raise GraphValidationError(f"edge ({i}, {j}) is not a valid pair with i < j < {n}")
        if not w > 0 or not np.isfinite(w):
            raise GraphValidationError(f"edge ({i}, {j}) has non-positive weight {w}")
        if W[i, j]:
            raise GraphValidationError(f"duplicate edge ({i}, {j})")
        W[i, j] = w
    w_vec = W[pair_indices(n)] if n > 1 else np.zeros(num_pairs(n))
    return validate_laplacian(laplacian_from_weights(w_vec, n))


def save_graph(L, path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(L), indent=2) + "\n")


def load_graph(path) -> np.ndarray:
    """Load a graph JSON file and return its validated Laplacian."""
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def _write_matrix(M, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in np.atleast_2d(M):
            writer.writerow([repr(float(x)) for x in row])


def save_laplacian_csv(L, path) -> None:
    _write_matrix(validate_laplacian(L), path)


def load_laplacian_csv(path) -> np.ndarray:
    return validate_laplacian(ingest_signals(path))


def save_signals_csv(X, path) -> None:
    _write_matrix(np.asarray(X, dtype=float), path)


def ingest_signals(path, header: bool = False, center: bool = False) -> np.ndarray:
    """Read an (n, p) signal matrix from CSV: one vertex per row.

    Parameters
    ----------
    header : bool
        Skip the first line.
    center : bool
        Subtract each row's mean.

    Raises
    ------
    SignalFormatError
        For an empty file, ragged rows or non-numeric cells; the message
        names the offending line.
    """
    rows = []
    width = None
    with open(path, newline="") as fh:
        for lineno, fields in enumerate(csv.reader(fh), start=1):
            if header and lineno == 1:
                continue
            if not fields or all(not f.strip() for f in fields):
                continue
            try:
                values = [float(f) for f in fields]
            except ValueError:
                bad = next(f for f in fields if not _is_float(f))
                raise SignalFormatError(f"non-numeric cell {bad!r}", line=lineno) from None
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise SignalFormatError(
                    f"row has {len(values)} columns, expected {width}", line=lineno)
            rows.append(values)
    if not rows:
        raise SignalFormatError(f"{path} contains no data rows")
    X = np.array(rows, dtype=float)
    if not np.all(np.isfinite(X)):
        raise SignalFormatError("signals contain NaN or infinite values")
    if center:
        X = X - X.mean(axis=1, keepdims=True)
    return X


def _is_float(s) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
