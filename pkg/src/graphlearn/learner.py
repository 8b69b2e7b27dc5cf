"""Alternating minimization for learning a Laplacian from smooth signals.

The joint problem::

    min_{L, Y}  ||X - Y||_F^2 + alpha tr(Y^T L Y) + beta ||L||_F^2
    s.t.        tr(L) = n,  L_ij = L_ji <= 0 (i != j),  L 1 = 0

is solved by starting at ``Y = X`` and alternating the quadratic-program
update of ``L`` (:mod:`graphlearn.lstep`) with the closed-form update
``Y = (I + alpha L)^{-1} X``.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .laplacian import (
    DEFAULT_PRUNE_THRESHOLD,
    prune_edges,
    total_smoothness,
    validate_laplacian,
    weights_from_laplacian,
)
from .lstep import DEFAULT_MAX_ITER, DEFAULT_TOL, build_lstep, solve_lstep

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LearnConfig:
    alpha: float
    beta: float
    max_iter: int = 50
    obj_tol: float = 1e-4
    prune_threshold: float = DEFAULT_PRUNE_THRESHOLD
    lstep_tol: float = DEFAULT_TOL
    lstep_max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        for name in ("alpha", "beta", "obj_tol", "lstep_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_iter < 1 or self.lstep_max_iter < 1:
            raise ValueError("iteration caps must be at least 1")
        if self.prune_threshold < 0:
            raise ValueError("prune_threshold must be non-negative")


@dataclass
class LearnResult:
    L: np.ndarray
    L_raw: np.ndarray
    Y: np.ndarray
    objective_trace: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    config: LearnConfig | None = None

    def to_dict(self) -> dict:
        from .io import graph_to_dict

        return {
            "graph": graph_to_dict(self.L),
            "objective_trace": [float(v) for v in self.objective_trace],
            "iterations": self.iterations,
            "converged": self.converged,
            "config": asdict(self.config) if self.config is not None else None,
        }


def ystep(L, X, alpha: float) -> np.ndarray:
    """Return ``(I + alpha L)^{-1} X`` via a Cholesky factorization."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    L = np.asarray(L, dtype=float)
    X = np.asarray(X, dtype=float)
    if X.shape[0] != L.shape[0]:
        raise ValueError(f"signals with {X.shape[0]} rows do not match {L.shape[0]} vertices")
    A = np.eye(L.shape[0]) + alpha * L
    try:
        factor = cho_factor(A, lower=True, check_finite=True)
    except LinAlgError as exc:
        raise LinAlgError(f"I + alpha L is not positive definite: {exc}") from exc
    return cho_solve(factor, X)


def objective(X, Y, L, alpha: float, beta: float) -> float:
    """``||X - Y||_F^2 + alpha tr(Y^T L Y) + beta ||L||_F^2``."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    L = np.asarray(L, dtype=float)
    if X.shape != Y.shape:
        raise ValueError(f"X {X.shape} and Y {Y.shape} differ in shape")
    fit = np.sum((X - Y) ** 2)
    return float(fit + alpha * total_smoothness(L, Y) + beta * np.sum(L * L))


def learn(X, cfg: LearnConfig, Y0=None) -> LearnResult:
    """Learn a Laplacian from the columns of ``X`` (shape (n, p)).

    Iterates until the absolute change of the joint objective, measured
    after each ``Y`` update, drops below ``cfg.obj_tol`` or ``cfg.max_iter``
    rounds are done. In the first round the reference value is the
    objective right after the first ``L`` update. ``Y0`` overrides the
    initial ``Y = X``. The returned ``L`` is ``L_raw`` with edges below
    ``cfg.prune_threshold`` removed.

    Raises ``LStepNotConverged`` from the graph update unchanged.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("X must be an (n, p) matrix with n >= 2")
    if not np.all(np.isfinite(X)):
        raise ValueError("X contains non-finite values")
    Y = X.copy() if Y0 is None else np.array(Y0, dtype=float)

    trace = []
    w = None
    converged = False
    it = 0
    for it in range(1, cfg.max_iter + 1):
        q = build_lstep(Y, cfg.alpha, cfg.beta)
        sol = solve_lstep(q, tol=cfg.lstep_tol, max_iter=cfg.lstep_max_iter, w0=w)
        w = sol.w
        L = sol.laplacian
        # first round: compare against the state right after the first L update
        prev = trace[-1] if trace else objective(X, Y, L, cfg.alpha, cfg.beta)
        Y = ystep(L, X, cfg.alpha)
        trace.append(objective(X, Y, L, cfg.alpha, cfg.beta))
        logger.debug("iteration %d: objective %.10g (L-step %d its)", it, trace[-1],
                     sol.iterations)
        if abs(prev - trace[-1]) < cfg.obj_tol:
            converged = True
            break
    L_raw = validate_laplacian(L)
    return LearnResult(
        L=prune_edges(L_raw, cfg.prune_threshold),
        L_raw=L_raw,
        Y=Y,
        objective_trace=trace,
        iterations=it,
        converged=converged,
        config=cfg,
    )


def learned_weights(result: LearnResult) -> np.ndarray:
    return weights_from_laplacian(result.L)
