"""Learning graph Laplacians from smooth signals."""

from .baselines import sample_correlation, threshold_correlation
from .clustering import kmeans_signals, spectral_cluster
from .exceptions import (
    EmptyGraphError,
    GraphValidationError,
    LStepNotConverged,
    SignalFormatError,
)
from .generators import (
    BaGraphConfig,
    ErGraphConfig,
    GmrfSamplerConfig,
    RbfGraphConfig,
    generate_ba_graph,
    generate_er_graph,
    generate_rbf_graph,
    sample_gmrf_signals,
)
from .laplacian import (
    eigendecompose,
    laplacian_from_weights,
    prune_edges,
    smoothness,
    total_smoothness,
    trace_normalize,
    validate_laplacian,
    weights_from_laplacian,
)
from .learner import LearnConfig, LearnResult, learn, objective, ystep
from .lstep import build_lstep, build_vech_formulation, lstep_objective, solve_lstep
from .metrics import evaluate, precision_recall_f

__version__ = "0.1.0"
