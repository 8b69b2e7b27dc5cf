"""Thresholded sample-correlation baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyGraphError
from .laplacian import laplacian_from_weights, pair_indices, trace_normalize


def sample_correlation(X) -> np.ndarray:
    """Pearson correlation between the rows of ``X`` across its columns.

    Rows with zero variance get 0 off-diagonal correlations; the diagonal
    is always 1.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise ValueError("need an (n, p) signal matrix with p >= 2")
    Xc = X - X.mean(axis=1, keepdims=True)
    norms = np.sqrt(np.sum(Xc * Xc, axis=1))
    # relative cutoff so rows that are constant up to rounding count as constant
    scale = np.abs(X).max(axis=1) * np.sqrt(X.shape[1])
    ok = norms > 1e-12 * np.maximum(scale, 1e-300)
    Z = np.zeros_like(Xc)
    Z[ok] = Xc[ok] / norms[ok, None]
    S = np.clip(Z @ Z.T, -1.0, 1.0)
    S = 0.5 * (S + S.T)
    np.fill_diagonal(S, 1.0)
    return S


@dataclass
class ThresholdedGraph:
    """Correlation graph: raw-weight Laplacian plus its trace-normalized copy."""

    L: np.ndarray
    L_normalized: np.ndarray

    @property
    def edges(self) -> set:
        from .metrics import edge_set

        return edge_set(self.L)


def threshold_correlation(S, threshold: float) -> ThresholdedGraph:
    """Keep pairs with (signed) correlation above ``threshold`` as edges.

    Edge weights are the correlations themselves.
    """
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    S = np.asarray(S, dtype=float)
    w = S[pair_indices(S.shape[0])]
    w = np.where(w > threshold, w, 0.0)
    if not np.any(w > 0):
        raise EmptyGraphError(f"no correlation exceeds threshold {threshold}")
    L = laplacian_from_weights(w, S.shape[0])
    return ThresholdedGraph(L=L, L_normalized=trace_normalize(L))
