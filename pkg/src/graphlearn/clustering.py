"""Spectral clustering of learned graphs and a k-means baseline on raw signals."""

from __future__ import annotations

import numpy as np

from .laplacian import eigendecompose

N_RESTARTS = 20
MAX_ITER = 300
REL_TOL = 1e-6


def _kmeans_pp(points, k, rng):
    n = points.shape[0]
    centers = [rng.integers(n)]
    d2 = np.sum((points - points[centers[0]]) ** 2, axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            c = rng.choice(n, p=d2 / total)
        else:
            # every point coincides with a chosen center
            c = rng.choice(np.setdiff1d(np.arange(n), centers))
        centers.append(c)
        d2 = np.minimum(d2, np.sum((points - points[c]) ** 2, axis=1))
    return points[centers].copy()


def _lloyd(points, centers, max_iter, rel_tol):
    prev = np.inf
    for _ in range(max_iter):
        d2 = np.sum((points[:, None, :] - centers[None, :, :]) ** 2, axis=2)
        labels = d2.argmin(axis=1)
        inertia = float(d2[np.arange(points.shape[0]), labels].sum())
        for c in range(centers.shape[0]):
            members = labels == c
            if members.any():
                centers[c] = points[members].mean(axis=0)
        if prev - inertia <= rel_tol * max(inertia, 1e-300):
            break
        prev = inertia
    d2 = np.sum((points[:, None, :] - centers[None, :, :]) ** 2, axis=2)
    labels = d2.argmin(axis=1)
    return labels, float(d2[np.arange(points.shape[0]), labels].sum())


def kmeans(points, k: int, seed=None, n_restarts: int = N_RESTARTS, max_iter: int = MAX_ITER,
           rel_tol: float = REL_TOL) -> np.ndarray:
    """Lloyd's algorithm with k-means++ seeding, best of ``n_restarts`` runs.

    Ties in inertia go to the earliest restart. Returns labels in ``[0, k)``.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    rng = np.random.default_rng(seed)
    best_labels, best_inertia = None, np.inf
    for _ in range(n_restarts):
        centers = _kmeans_pp(points, k, rng)
        labels, inertia = _lloyd(points, centers, max_iter, rel_tol)
        if inertia < best_inertia:
            best_labels, best_inertia = labels, inertia
    return best_labels


def spectral_embedding(L, k: int, normalized: bool = False) -> np.ndarray:
    """Rows of the ``k`` eigenvectors with the smallest eigenvalues.

    With ``normalized=True`` each row is scaled to unit length.
    """
    U = eigendecompose(L).eigenvectors[:, :k]
    if normalized:
        norms = np.linalg.norm(U, axis=1, keepdims=True)
        U = U / np.where(norms > 0, norms, 1.0)
    return U


def spectral_cluster(L, k: int, seed=None, normalized: bool = False) -> np.ndarray:
    n = np.asarray(L).shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    return kmeans(spectral_embedding(L, k, normalized), k, seed)


def kmeans_signals(X, k: int, seed=None) -> np.ndarray:
    """Cluster the rows (vertices) of a signal matrix directly."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError("X must be an (n, p) matrix")
    return kmeans(X, k, seed)
