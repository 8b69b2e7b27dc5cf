"""
Clustering vertices of a learned graph
======================================

Signals on two loosely linked communities are fed to the learner; spectral
clustering of the learned graph recovers the communities. Clustering the
raw signals with k-means serves as a reference.
"""

import itertools

import numpy as np

from graphlearn import GmrfSamplerConfig, LearnConfig, learn, sample_gmrf_signals
from graphlearn.clustering import kmeans_signals, spectral_cluster
from graphlearn.laplacian import laplacian_from_weights, trace_normalize
from graphlearn.metrics import partition_nmi, purity, rand_index

# Two 8-vertex communities, dense inside, one weak bridge between them.
n, truth = 16, np.repeat([0, 1], 8)
rng = np.random.default_rng(0)
W = np.zeros((n, n))
for i, j in itertools.combinations(range(n), 2):
    if truth[i] == truth[j] and rng.random() < 0.6:
        W[i, j] = rng.uniform(0.5, 1.0)
W[7, 8] = 0.05
L_true = trace_normalize(laplacian_from_weights(W[np.triu_indices(n, 1)], n))

X = sample_gmrf_signals(L_true, GmrfSamplerConfig(p=60, noise_sigma=0.3, seed=1))
learned = learn(X, LearnConfig(alpha=0.01, beta=0.2)).L

for name, labels in [("spectral on learned graph", spectral_cluster(learned, 2, seed=0)),
                     ("k-means on raw signals", kmeans_signals(X, 2, seed=0))]:
    print(f"{name:28} purity {purity(labels, truth):.3f}  "
          f"RI {rand_index(labels, truth):.3f}  NMI {partition_nmi(labels, truth):.3f}")
