"""Combinatorial graph Laplacians and their edge-weight parameterization.

A Laplacian on ``n`` vertices is stored as a dense ``(n, n)`` float array.
Its reduced form is the length ``n(n-1)/2`` vector of edge weights ordered
row-major over the upper triangle: ``(0,1), (0,2), ..., (0,n-1), (1,2), ...``.
Every vectorized quantity in the package (pairwise distances, incidence
columns, edge masks) shares this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from .exceptions import EmptyGraphError, GraphValidationError

ROW_SUM_TOL = 1e-9
PSD_TOL = 1e-8
OFFDIAG_TOL = 1e-12
ZERO_EIG_TOL = 1e-8
DEFAULT_PRUNE_THRESHOLD = 1e-4


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def n_from_pairs(m: int) -> int:
    """Invert ``m = n(n-1)/2``; raises if ``m`` is not triangular."""
    n = int(round((1 + np.sqrt(1 + 8 * m)) / 2))
    if num_pairs(n) != m:
        raise ValueError(f"{m} is not a valid number of vertex pairs")
    return n


def pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-major ``(i, j)`` index arrays of all pairs with ``i < j``."""
    return np.triu_indices(n, k=1)


def laplacian_from_weights(w, n: int | None = None) -> np.ndarray:
    """Build ``L = D - W`` from an edge-weight vector.

    Parameters
    ----------
    w : array_like, shape (n(n-1)/2,)
        Non-negative edge weights in row-major pair order.
    n : int, optional
        Vertex count; inferred from ``len(w)`` when omitted.

    Returns
    -------
    L : ndarray, shape (n, n)
    """
    w = np.asarray(w, dtype=float)
    if n is None:
        n = n_from_pairs(w.size)
    elif w.size != num_pairs(n):
        raise ValueError(f"expected {num_pairs(n)} weights for n={n}, got {w.size}")
    if np.any(w < 0):
        raise GraphValidationError("edge weights must be non-negative")
    W = np.zeros((n, n))
    iu = pair_indices(n)
    W[iu] = w
    W = W + W.T
    L = -W
    L[np.diag_indices(n)] = W.sum(axis=1)
    return L


def adjacency_from_laplacian(L) -> np.ndarray:
    L = np.asarray(L, dtype=float)
    W = -L.copy()
    np.fill_diagonal(W, 0.0)
    return W


def validate_laplacian(L, row_tol: float = ROW_SUM_TOL, psd_tol: float = PSD_TOL,
                       check_psd: bool = True) -> np.ndarray:
    """Check the Laplacian invariants and return ``L`` as a float array.

    Raises
    ------
    GraphValidationError
        On a non-square or non-finite input, asymmetry, a positive
        off-diagonal, a non-zero row sum, or a negative eigenvalue beyond
        tolerance.
    """
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise GraphValidationError(f"Laplacian must be square, got shape {L.shape}")
    if not np.all(np.isfinite(L)):
        raise GraphValidationError("Laplacian has non-finite entries")
    scale = max(1.0, float(np.abs(L).max(initial=0.0)))
    if np.abs(L - L.T).max(initial=0.0) > OFFDIAG_TOL * scale:
        raise GraphValidationError("Laplacian is not symmetric")
    off = L[~np.eye(L.shape[0], dtype=bool)]
    if off.size and off.max() > OFFDIAG_TOL:
        raise GraphValidationError(f"positive off-diagonal entry {off.max():.3g}")
    rows = np.abs(L.sum(axis=1)).max(initial=0.0)
    if rows > row_tol:
        raise GraphValidationError(f"row sums deviate from zero by {rows:.3g}")
    if check_psd and L.shape[0] > 0:
        lam_min = np.linalg.eigvalsh(L)[0]
        if lam_min < -psd_tol:
            raise GraphValidationError(f"smallest eigenvalue {lam_min:.3g} is negative")
    return L


def is_valid_laplacian(L) -> bool:
    try:
        validate_laplacian(L)
    except GraphValidationError:
        return False
    return True


def weights_from_laplacian(L) -> np.ndarray:
    """Edge weights ``w_ij = -L_ij`` (row-major, ``i < j``) of a valid Laplacian."""
    L = validate_laplacian(L)
    w = -L[pair_indices(L.shape[0])]
    # off-diagonals up to +1e-12 are accepted as zero
    return np.maximum(w, 0.0)


def smoothness(L, f) -> float:
    """Laplacian quadratic form ``f^T L f``."""
    L = np.asarray(L, dtype=float)
    f = np.asarray(f, dtype=float)
    if f.ndim != 1 or f.shape[0] != L.shape[0]:
        raise ValueError(f"signal of shape {f.shape} does not match {L.shape[0]} vertices")
    return float(f @ L @ f)


def total_smoothness(L, Y) -> float:
    """``tr(Y^T L Y)``, the summed smoothness of every column of ``Y``."""
    L = np.asarray(L, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    if Y.ndim != 2 or Y.shape[0] != L.shape[0]:
        raise ValueError(f"signals of shape {Y.shape} do not match {L.shape[0]} vertices")
    return float(np.sum(Y * (L @ Y)))


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def pinv_eigenvalues(self, tol: float = ZERO_EIG_TOL) -> np.ndarray:
        """Diagonal of the pseudoinverse of the eigenvalue matrix."""
        lam = self.eigenvalues
        out = np.zeros_like(lam)
        nz = lam > tol
        out[nz] = 1.0 / lam[nz]
        return out

    def pinv(self, tol: float = ZERO_EIG_TOL) -> np.ndarray:
        """Moore-Penrose pseudoinverse of the decomposed matrix."""
        U = self.eigenvectors
        return (U * self.pinv_eigenvalues(tol)) @ U.T

    def num_zero(self, tol: float = ZERO_EIG_TOL) -> int:
        return int(np.sum(self.eigenvalues <= tol))


def eigendecompose(L) -> EigenDecomposition:
    """Symmetric eigendecomposition of a Laplacian.

    Raises ``numpy.linalg.LinAlgError`` if LAPACK fails or the
    reconstruction error exceeds ``1e-8 * max(1, ||L||_F)``.
    """
    L = validate_laplacian(L, check_psd=False)
    lam, U = np.linalg.eigh(L)
    err = np.linalg.norm((U * lam) @ U.T - L)
    if not np.isfinite(err) or err > 1e-8 * max(1.0, np.linalg.norm(L)):
        raise np.linalg.LinAlgError(f"eigendecomposition reconstruction error {err:.3g}")
    return EigenDecomposition(lam, U)


def num_components(L) -> int:
    """Connected components of the graph, by traversal of the non-zero pattern."""
    W = adjacency_from_laplacian(L)
    return int(connected_components(W > 0, directed=False)[0])


def trace_normalize(L) -> np.ndarray:
    """Rescale ``L`` so that ``tr(L) = n``."""
    L = np.asarray(L, dtype=float)
    tr = np.trace(L)
    if not tr > 0:
        raise EmptyGraphError("cannot trace-normalize a graph without edges")
    return L * (L.shape[0] / tr)


def prune_edges(L, threshold: float = DEFAULT_PRUNE_THRESHOLD) -> np.ndarray:
    """Zero every edge weight below ``threshold`` and rebuild the diagonal."""
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    w = -L[pair_indices(n)]
    w = np.where(w < threshold, 0.0, w)
    return laplacian_from_weights(np.maximum(w, 0.0), n)


def edge_count(L, tol: float = 0.0) -> int:
    L = np.asarray(L, dtype=float)
    return int(np.sum(-L[pair_indices(L.shape[0])] > tol))
