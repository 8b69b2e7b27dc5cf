"""Edge-recovery and clustering quality metrics."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .laplacian import num_pairs, pair_indices


@dataclass
class EvalReport:
    precision: float
    recall: float
    f_measure: float
    nmi: float
    mse: float
    sq_error: float
    learned_edge_count: int
    groundtruth_edge_count: int

    def to_dict(self) -> dict:
        return asdict(self)


def edge_set(L) -> set:
    """Pairs ``(i, j)``, ``i < j``, carrying positive weight."""
    L = np.asarray(L, dtype=float)
    iu, ju = pair_indices(L.shape[0])
    mask = -L[iu, ju] > 0
    return set(zip(iu[mask].tolist(), ju[mask].tolist()))


def precision_recall_f(learned, groundtruth) -> tuple[float, float, float]:
    """Edge-set precision, recall and F-measure.

    An empty learned set scores precision 0, and F is 0 whenever there is
    no overlap.
    """
    learned, groundtruth = set(learned), set(groundtruth)
    hits = len(learned & groundtruth)
    precision = hits / len(learned) if learned else 0.0
    recall = hits / len(groundtruth) if groundtruth else 0.0
    if hits == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


def _entropy(counts):
    p = counts[counts > 0] / counts.sum()
    return float(-np.sum(p * np.log(p)))


def _labels(pred, truth):
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()
    if pred.size == 0 or truth.size == 0:
        raise ValueError("partitions must be non-empty")
    if pred.size != truth.size:
        raise ValueError(f"partitions of different length: {pred.size} vs {truth.size}")
    _, a = np.unique(pred, return_inverse=True)
    _, b = np.unique(truth, return_inverse=True)
    return a, b


def contingency(pred, truth) -> np.ndarray:
    a, b = _labels(pred, truth)
    table = np.zeros((a.max() + 1, b.max() + 1))
    np.add.at(table, (a, b), 1)
    return table


def partition_nmi(pred, truth) -> float:
    """Mutual information normalized by the arithmetic mean of the entropies.

    Returns 0 when either labeling is constant.
    """
    table = contingency(pred, truth)
    h_pred = _entropy(table.sum(axis=1))
    h_truth = _entropy(table.sum(axis=0))
    if h_pred == 0 or h_truth == 0:
        return 0.0
    pij = table / table.sum()
    outer = np.outer(pij.sum(axis=1), pij.sum(axis=0))
    nz = pij > 0
    mi = float(np.sum(pij[nz] * np.log(pij[nz] / outer[nz])))
    return float(np.clip(mi / (0.5 * (h_pred + h_truth)), 0.0, 1.0))


def purity(pred, truth) -> float:
    table = contingency(pred, truth)
    return float(table.max(axis=1).sum() / table.sum())


def rand_index(pred, truth) -> float:
    """Fraction of element pairs on which the two partitions agree."""
    table = contingency(pred, truth)
    n = table.sum()
    total = n * (n - 1) / 2
    if total == 0:
        return 1.0
    same_both = np.sum(table * (table - 1)) / 2
    same_pred = np.sum(table.sum(axis=1) * (table.sum(axis=1) - 1)) / 2
    same_truth = np.sum(table.sum(axis=0) * (table.sum(axis=0) - 1)) / 2
    agree = total + 2 * same_both - same_pred - same_truth
    return float(agree / total)


def edge_labels(edges, n: int) -> np.ndarray:
    """0/1 edge indicator over all row-major pairs."""
    iu, ju = pair_indices(n)
    index = {pair: k for k, pair in enumerate(zip(iu.tolist(), ju.tolist()))}
    out = np.zeros(num_pairs(n), dtype=int)
    for i, j in edges:
        out[index[(min(i, j), max(i, j))]] = 1
    return out


def pairwise_nmi(learned, groundtruth, n: int) -> float:
    """NMI between the edge / non-edge labelings of all vertex pairs."""
    return partition_nmi(edge_labels(learned, n), edge_labels(groundtruth, n))


def laplacian_mse(L_learned, L_groundtruth) -> float:
    """Mean squared entrywise difference over all ``n^2`` entries."""
    A = np.asarray(L_learned, dtype=float)
    B = np.asarray(L_groundtruth, dtype=float)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")
    return float(np.mean((A - B) ** 2))


def laplacian_sq_error(L_learned, L_groundtruth) -> float:
    """Squared Frobenius distance, i.e. ``n^2`` times :func:`laplacian_mse`."""
    A = np.asarray(L_learned, dtype=float)
    B = np.asarray(L_groundtruth, dtype=float)
    return float(np.sum((A - B) ** 2))


def evaluate(L_learned, L_groundtruth, L_for_mse=None) -> EvalReport:
    """Compare a learned graph to the groundtruth.

    Edge sets come from ``L_learned``. Matrix errors use ``L_for_mse`` when
    given (e.g. a trace-normalized copy), otherwise ``L_learned``.
    """
    L_learned = np.asarray(L_learned, dtype=float)
    n = L_learned.shape[0]
    learned = edge_set(L_learned)
    truth = edge_set(L_groundtruth)
    p, r, f = precision_recall_f(learned, truth)
    M = L_learned if L_for_mse is None else L_for_mse
    return EvalReport(
        precision=p,
        recall=r,
        f_measure=f,
        nmi=pairwise_nmi(learned, truth, n),
        mse=laplacian_mse(M, L_groundtruth),
        sq_error=laplacian_sq_error(M, L_groundtruth),
        learned_edge_count=len(learned),
        groundtruth_edge_count=len(truth),
    )
