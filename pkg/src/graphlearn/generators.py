"""Random groundtruth graphs and smooth signals drawn on them.

All generators take a ``seed`` accepted by :func:`numpy.random.default_rng`
(an int, a ``SeedSequence``, a ``Generator`` or ``None``) and use the PCG64
bit generator, so a fixed integer seed reproduces the output bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .exceptions import EmptyGraphError
from .laplacian import (
    ZERO_EIG_TOL,
    eigendecompose,
    laplacian_from_weights,
    num_pairs,
    pair_indices,
    trace_normalize,
)

RNG_NAME = "numpy.random.PCG64"


@dataclass(frozen=True)
class RbfGraphConfig:
    n: int
    kernel_width: float = 0.5
    edge_threshold: float = 0.75
    seed: object = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not self.kernel_width > 0:
            raise ValueError("kernel_width must be positive")
        if not 0 <= self.edge_threshold <= 1:
            raise ValueError("edge_threshold must lie in [0, 1]")


@dataclass(frozen=True)
class ErGraphConfig:
    n: int
    edge_probability: float = 0.2
    seed: object = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not 0 <= self.edge_probability <= 1:
            raise ValueError("edge_probability must lie in [0, 1]")


@dataclass(frozen=True)
class BaGraphConfig:
    n: int
    edges_per_new_vertex: int = 1
    seed: object = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.edges_per_new_vertex < 1:
            raise ValueError("edges_per_new_vertex must be at least 1")


@dataclass(frozen=True)
class GmrfSamplerConfig:
    p: int = 100
    noise_sigma: float = 0.5
    seed: object = None

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be at least 1")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")


def rbf_weights(coords, kernel_width: float = 0.5, edge_threshold: float = 0.75) -> np.ndarray:
    """Thresholded Gaussian-kernel weights for points ``coords`` of shape (n, d)."""
    d2 = pdist(np.asarray(coords, dtype=float), "sqeuclidean")
    w = np.exp(-d2 / (2.0 * kernel_width**2))
    w[w < edge_threshold] = 0.0
    return w


def _finish(w, n, kind):
    if not np.any(w > 0):
        raise EmptyGraphError(f"{kind} generator produced a graph with no edges")
    return trace_normalize(laplacian_from_weights(w, n))


def generate_rbf_graph(cfg: RbfGraphConfig, return_coords: bool = False):
    """Geometric graph on uniform points in the unit square.

    Surviving edges keep their kernel weight. Returns the trace-normalized
    Laplacian, and the vertex coordinates when ``return_coords`` is set.
    """
    rng = np.random.default_rng(cfg.seed)
    coords = rng.uniform(0.0, 1.0, size=(cfg.n, 2))
    w = rbf_weights(coords, cfg.kernel_width, cfg.edge_threshold)
    L = _finish(w, cfg.n, "RBF")
    return (L, coords) if return_coords else L


def generate_er_graph(cfg: ErGraphConfig) -> np.ndarray:
    """Erdos-Renyi graph with unit weights, trace-normalized."""
    rng = np.random.default_rng(cfg.seed)
    w = (rng.random(num_pairs(cfg.n)) < cfg.edge_probability).astype(float)
    return _finish(w, cfg.n, "ER")


def generate_ba_graph(cfg: BaGraphConfig) -> np.ndarray:
    """Barabasi-Albert preferential-attachment graph with unit weights.

    Growth starts from a single vertex. Vertex 1 attaches to vertex 0; each
    later vertex ``t`` attaches to ``min(edges_per_new_vertex, t)`` distinct
    existing vertices drawn without replacement with probability
    proportional to their current degree.
    """
    n, k = cfg.n, cfg.edges_per_new_vertex
    rng = np.random.default_rng(cfg.seed)
    W = np.zeros((n, n))
    degree = np.zeros(n)
    for t in range(1, n):
        if t == 1:
            targets = np.array([0])
        else:
            prob = degree[:t] / degree[:t].sum()
            targets = rng.choice(t, size=min(k, t), replace=False, p=prob)
        W[t, targets] = W[targets, t] = 1.0
        degree[targets] += 1
        degree[t] += len(targets)
    return _finish(W[pair_indices(n)], n, "BA")


def sample_gmrf_signals(L, cfg: GmrfSamplerConfig) -> np.ndarray:
    """Draw ``p`` signals ``x = U h + e`` as columns of an (n, p) matrix.

    ``U`` holds the Laplacian eigenvectors, ``h_k ~ N(0, 1/lambda_k)`` for
    eigenvalues above 1e-8 and ``h_k = 0`` otherwise, and
    ``e ~ N(0, noise_sigma^2 I)``. The covariance is therefore
    ``pinv(L) + noise_sigma^2 I``.

    Stream layout: a single PCG64 stream is read as a (p, 2n) block of
    standard normals; row ``k`` supplies column ``k`` (first ``n`` values for
    ``h``, the next ``n`` for the noise). Column ``k`` therefore depends only
    on the seed and ``k``, and a smaller ``p`` yields a prefix of the columns.
    """
    eig = eigendecompose(L)
    n = eig.eigenvalues.shape[0]
    rng = np.random.default_rng(cfg.seed)
    draws = rng.standard_normal((cfg.p, 2 * n))
    scale = np.sqrt(eig.pinv_eigenvalues(ZERO_EIG_TOL))
    h = draws[:, :n].T * scale[:, None]
    noise = draws[:, n:].T * cfg.noise_sigma
    return eig.eigenvectors @ h + noise


def noise_sigma_for_snr(L, snr_db: float) -> float:
    """Noise level giving ``10 log10(E||U h||^2 / E||e||^2) = snr_db``.

    ``E||U h||^2 = tr(pinv(L))`` and ``E||e||^2 = n sigma^2``.
    """
    eig = eigendecompose(L)
    signal_power = eig.pinv_eigenvalues().sum()
    n = eig.eigenvalues.shape[0]
    return float(np.sqrt(signal_power / (n * 10.0 ** (snr_db / 10.0))))


def generate_graph(model: str, n: int, seed=None, **params) -> np.ndarray:
    """Dispatch to the ``rbf``, ``er`` or ``ba`` generator by name."""
    if model == "rbf":
        return generate_rbf_graph(RbfGraphConfig(n=n, seed=seed, **params))
    if model == "er":
        return generate_er_graph(ErGraphConfig(n=n, seed=seed, **params))
    if model == "ba":
        return generate_ba_graph(BaGraphConfig(n=n, seed=seed, **params))
    raise ValueError(f"unknown graph model {model!r}")
