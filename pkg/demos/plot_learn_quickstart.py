"""
Learning a graph from smooth signals
====================================

Draw a random geometric graph, sample smooth signals on it, and recover
the edges from the signals alone.
"""

import numpy as np

from graphlearn import (
    GmrfSamplerConfig,
    LearnConfig,
    RbfGraphConfig,
    evaluate,
    generate_rbf_graph,
    learn,
    sample_gmrf_signals,
)

# A 20-vertex graph: points in the unit square, Gaussian-kernel weights,
# weak links dropped. The Laplacian is scaled to trace 20.
L_true = generate_rbf_graph(RbfGraphConfig(n=20, seed=2))
print("groundtruth edges:", int(np.sum(np.triu(-L_true, 1) > 0)))

# 100 signals whose inverse covariance is L_true, plus white noise.
X = sample_gmrf_signals(L_true, GmrfSamplerConfig(p=100, noise_sigma=0.5, seed=3))
print("signal matrix:", X.shape)

# Alternate between denoising the signals and refitting the Laplacian.
result = learn(X, LearnConfig(alpha=0.012, beta=0.79))
print("iterations:", result.iterations, "converged:", result.converged)
print("objective trace:", np.round(result.objective_trace, 4))

report = evaluate(result.L, L_true)
print(f"precision {report.precision:.3f}  recall {report.recall:.3f}  "
      f"F {report.f_measure:.3f}  NMI {report.nmi:.3f}")

# The learned graph is a valid Laplacian with the same trace as the truth.
print("trace:", round(float(np.trace(result.L_raw)), 6))
