"""The graph-update subproblem as a quadratic program over edge weights.

For fixed smoothed signals ``Y`` the Laplacian update solves::

    min_L  alpha * tr(Y^T L Y) + beta * ||L||_F^2
    s.t.   tr(L) = n,  L_ij = L_ji <= 0 (i != j),  L 1 = 0

Writing ``L = L(w)`` for non-negative edge weights ``w`` removes the
symmetry, sign and row-sum constraints. With ``z_e = ||Y_i - Y_j||^2`` for
pair ``e = (i, j)`` and ``S`` the vertex-edge incidence selector::

    tr(Y^T L Y)  = z^T w
    ||L||_F^2    = ||S w||^2 + 2 ||w||^2      (diag(L) = S w)
    tr(L) = n   <=>  1^T w = n / 2

so the problem becomes ``min alpha z^T w + beta (||S w||^2 + 2||w||^2)``
over the scaled simplex ``{w >= 0, 1^T w = n/2}``. The Hessian
``2 beta (S^T S + 2 I)`` has spectrum in ``[4 beta, 4 beta n]``, which gives
the exact step size and momentum for accelerated projected gradient.

The half-vectorized form with the duplication matrix is also assembled by
:func:`build_vech_formulation` for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.spatial.distance import pdist

from .exceptions import LStepNotConverged
from .laplacian import laplacian_from_weights, num_pairs, pair_indices

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 50_000
FEASIBILITY_TOL = 1e-8


def pairwise_sq_distances(Y) -> np.ndarray:
    """``z_e = ||Y[i] - Y[j]||^2`` over row-major pairs ``i < j``."""
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    return pdist(Y, "sqeuclidean")


def incidence_selector(n: int) -> sp.csr_matrix:
    """Sparse ``(n, m)`` matrix with ``S[i, e] = 1`` iff ``i`` is an endpoint of ``e``."""
    m = num_pairs(n)
    iu, ju = pair_indices(n)
    rows = np.concatenate([iu, ju])
    cols = np.concatenate([np.arange(m), np.arange(m)])
    return sp.csr_matrix((np.ones(2 * m), (rows, cols)), shape=(n, m))


@dataclass(frozen=True)
class QpFormulation:
    """Reduced L-step data: ``f(w) = alpha z^T w + beta (||S w||^2 + 2||w||^2)``."""

    n: int
    z: np.ndarray
    alpha: float
    beta: float

    @property
    def m(self) -> int:
        return num_pairs(self.n)

    @property
    def budget(self) -> float:
        """Required total edge weight, ``n / 2``."""
        return self.n / 2.0

    @cached_property
    def incidence(self) -> sp.csr_matrix:
        return incidence_selector(self.n)

    @cached_property
    def _pairs(self):
        return pair_indices(self.n)

    def degrees(self, w) -> np.ndarray:
        """``S w``, the weighted vertex degrees."""
        i, j = self._pairs
        return np.bincount(i, w, self.n) + np.bincount(j, w, self.n)

    def gradient(self, w) -> np.ndarray:
        i, j = self._pairs
        d = self.degrees(w)
        return self.alpha * self.z + 2.0 * self.beta * (d[i] + d[j] + 2.0 * w)

    @property
    def lipschitz(self) -> float:
        # lambda_max(S^T S) = 2n - 2 for the complete incidence structure
        return 4.0 * self.beta * self.n

    @property
    def strong_convexity(self) -> float:
        return 4.0 * self.beta


def build_lstep(Y, alpha: float, beta: float) -> QpFormulation:
    """Assemble the reduced L-step for signals ``Y`` of shape (n, p)."""
    if not alpha > 0 or not beta > 0:
        raise ValueError("alpha and beta must both be positive")
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    return QpFormulation(n=Y.shape[0], z=pairwise_sq_distances(Y), alpha=float(alpha),
                         beta=float(beta))


def lstep_objective(q: QpFormulation, w) -> float:
    w = np.asarray(w, dtype=float)
    if w.shape != (q.m,):
        raise ValueError(f"expected {q.m} edge weights, got shape {w.shape}")
    d = q.degrees(w)
    return float(q.alpha * q.z @ w + q.beta * (d @ d + 2.0 * w @ w))


def project_scaled_simplex(v, total: float) -> np.ndarray:
    """Euclidean projection of ``v`` onto ``{x >= 0, sum(x) = total}``.

    Sort-and-threshold method: find the largest ``rho`` such that the
    ``rho`` biggest entries stay positive after a common shift.
    """
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - total
    ks = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / ks > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    return np.maximum(v - theta, 0.0)


@dataclass
class QpSolution:
    w: np.ndarray
    objective: float
    kkt_residual: float
    iterations: int

    @property
    def laplacian(self) -> np.ndarray:
        return laplacian_from_weights(self.w)


def kkt_residual(q: QpFormulation, w) -> float:
    """Norm of the gradient mapping ``Lip * (w - P(w - grad / Lip))``.

    Zero exactly at the optimum; bounds ``||w - w*||`` by
    ``residual * 2 / strong_convexity``.
    """
    lip = q.lipschitz
    g = q.gradient(w)
    return float(lip * np.linalg.norm(w - project_scaled_simplex(w - g / lip, q.budget)))


def solve_lstep(q: QpFormulation, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                w0=None) -> QpSolution:
    """Minimize the reduced L-step by accelerated projected gradient.

    Uses the constant momentum of the strongly convex case with a function
    value restart. ``w0`` warm-starts the iteration (projected first).

    Raises
    ------
    LStepNotConverged
        If ``max_iter`` iterations do not bring the KKT residual below
        ``tol``; the exception carries the best iterate.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not q.beta > 0:
        raise ValueError("beta must be positive")
    if q.n < 2:
        raise ValueError("need at least two vertices")
    total = q.budget
    lip, mu = q.lipschitz, q.strong_convexity
    momentum = (np.sqrt(lip) - np.sqrt(mu)) / (np.sqrt(lip) + np.sqrt(mu))

    if w0 is None:
        w = np.full(q.m, total / q.m)
    else:
        w = project_scaled_simplex(w0, total)
    f = lstep_objective(q, w)
    res = kkt_residual(q, w)
    v = w
    it = 0
    while res > tol:
        if it >= max_iter:
            best = QpSolution(w, f, res, it)
            raise LStepNotConverged(
                f"L-step stopped after {it} iterations with KKT residual {res:.3g} > {tol:.3g}",
                best)
        it += 1
        w_new = project_scaled_simplex(v - q.gradient(v) / lip, total)
        f_new = lstep_objective(q, w_new)
        if f_new > f:
            # restart: drop momentum, take a plain projected step from w
            w_new = project_scaled_simplex(w - q.gradient(w) / lip, total)
            f_new = lstep_objective(q, w_new)
            v = w_new
        else:
            v = w_new + momentum * (w_new - w)
        w, f = w_new, f_new
        res = kkt_residual(q, w)
    return QpSolution(w, f, res, it)


@dataclass(frozen=True)
class VechFormulation:
    """L-step written over ``v = vech(L)``.

    Minimize ``cost @ v + v @ quad @ v`` subject to ``A v = b`` (trace and
    row sums) and ``B v <= 0`` (off-diagonal entries).
    """

    n: int
    M_dup: np.ndarray
    cost: np.ndarray
    quad: np.ndarray
    A: np.ndarray
    b: np.ndarray
    B: np.ndarray
    vech_index: tuple = field(repr=False)

    def objective(self, v) -> float:
        v = np.asarray(v, dtype=float)
        return float(self.cost @ v + v @ self.quad @ v)

    def vech(self, L) -> np.ndarray:
        L = np.asarray(L, dtype=float)
        return L[self.vech_index]

    def unvech(self, v) -> np.ndarray:
        n = self.n
        L = (self.M_dup @ np.asarray(v, dtype=float)).reshape(n, n, order="F")
        return L


def vech_indices(n: int):
    """Row/column indices of the lower triangle stacked column by column."""
    cols, rows = np.triu_indices(n)
    return rows, cols


def duplication_matrix(n: int) -> np.ndarray:
    """``M_dup`` with ``M_dup @ vech(L) == vec(L)`` (column-major ``vec``)."""
    rows, cols = vech_indices(n)
    M = np.zeros((n * n, rows.size))
    for k, (r, c) in enumerate(zip(rows, cols)):
        M[r + c * n, k] = 1.0
        M[c + r * n, k] = 1.0
    return M


def build_vech_formulation(Y, alpha: float, beta: float) -> VechFormulation:
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    n = Y.shape[0]
    rows, cols = vech_indices(n)
    M = duplication_matrix(n)
    cost = alpha * (Y @ Y.T).ravel(order="F") @ M
    quad = beta * M.T @ M
    k = rows.size
    A = np.zeros((n + 1, k))
    diag = rows == cols
    A[0, diag] = 1.0
    # row sums of L: each vech entry (r, c) contributes to rows r and c
    for idx in range(k):
        r, c = rows[idx], cols[idx]
        A[1 + r, idx] += 1.0
        if r != c:
            A[1 + c, idx] += 1.0
    b = np.zeros(n + 1)
    b[0] = n
    off = np.nonzero(~diag)[0]
    B = np.zeros((off.size, k))
    B[np.arange(off.size), off] = 1.0
    return VechFormulation(n, M, cost, quad, A, b, B, (rows, cols))
