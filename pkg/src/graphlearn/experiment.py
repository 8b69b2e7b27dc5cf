"""Synthetic benchmark runs: generate graphs and signals, learn, compare.

Seeding: ``SeedSequence(spec.seed).spawn(spec.instances)`` gives one child
per instance; each child is split again into a graph stream and a signal
stream. Learning itself is deterministic, so a report depends only on the
spec.
"""

from __future__ import annotations

import csv
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .baselines import sample_correlation, threshold_correlation
from .generators import (
    RNG_NAME,
    GmrfSamplerConfig,
    generate_graph,
    noise_sigma_for_snr,
    sample_gmrf_signals,
)
from .io import load_graph, write_json
from .laplacian import trace_normalize
from .learner import LearnConfig, learn
from .metrics import evaluate

logger = logging.getLogger(__name__)

DEFAULT_GRID = tuple(float(x) for x in np.logspace(-4, 1, 21))
METRICS = ("f_measure", "precision", "recall", "nmi", "mse", "sq_error", "learned_edge_count")
SNR_DEFINITION = "10*log10(E||U h||^2 / E||e||^2) = 10*log10(tr(pinv(L)) / (n*sigma^2))"


@dataclass
class ExperimentSpec:
    graph_model: str = "rbf"
    n: int = 20
    graph_params: dict = field(default_factory=dict)
    graph_path: str | None = None
    p: int = 100
    noise_sigma: float = 0.5
    alphas: list = field(default_factory=lambda: [0.012])
    betas: list = field(default_factory=lambda: [0.79])
    thresholds: list = field(default_factory=list)
    instances: int = 10
    seed: int = 0
    max_iter: int = 50
    obj_tol: float = 1e-4
    prune_threshold: float = 1e-4
    lstep_tol: float = 1e-6

    def __post_init__(self):
        if self.graph_model not in ("rbf", "er", "ba", "file"):
            raise ValueError(f"unknown graph model {self.graph_model!r}")
        if self.graph_model == "file" and not self.graph_path:
            raise ValueError("graph_model 'file' needs graph_path")
        self.alphas = [float(a) for a in self.alphas]
        self.betas = [float(b) for b in self.betas]
        self.thresholds = [float(t) for t in self.thresholds]
        if not self.alphas or not self.betas:
            raise ValueError("alpha and beta grids must be non-empty")
        if self.instances < 1:
            raise ValueError("instances must be at least 1")

    def learn_config(self, alpha, beta) -> LearnConfig:
        return LearnConfig(alpha=alpha, beta=beta, max_iter=self.max_iter, obj_tol=self.obj_tol,
                           prune_threshold=self.prune_threshold, lstep_tol=self.lstep_tol)

    def to_dict(self) -> dict:
        return asdict(self)


def instance_seeds(spec: ExperimentSpec):
    """``(graph_seed, signal_seed)`` pairs, one per instance."""
    children = np.random.SeedSequence(spec.seed).spawn(spec.instances)
    return [tuple(c.spawn(2)) for c in children]


def instance_graph(spec: ExperimentSpec, graph_seed) -> np.ndarray:
    if spec.graph_model == "file":
        return trace_normalize(load_graph(spec.graph_path))
    return generate_graph(spec.graph_model, spec.n, seed=graph_seed, **spec.graph_params)


def instance_data(spec: ExperimentSpec, k: int, p=None, noise_sigma=None):
    graph_seed, signal_seed = instance_seeds(spec)[k]
    L = instance_graph(spec, graph_seed)
    cfg = GmrfSamplerConfig(p=spec.p if p is None else p,
                            noise_sigma=spec.noise_sigma if noise_sigma is None else noise_sigma,
                            seed=signal_seed)
    return L, sample_gmrf_signals(L, cfg)


def _mean(records):
    ok = [r for r in records if "error" not in r]
    if not ok:
        return None
    return {k: float(np.mean([r[k] for r in ok])) for k in METRICS}


def _learn_record(X, L_true, cfg):
    res = learn(X, cfg)
    rec = evaluate(res.L, L_true).to_dict()
    rec["iterations"] = res.iterations
    rec["converged"] = res.converged
    rec["objective_trace"] = [float(v) for v in res.objective_trace]
    return rec


def _baseline_record(X, L_true, threshold):
    g = threshold_correlation(sample_correlation(X), threshold)
    return evaluate(g.L, L_true, L_for_mse=g.L_normalized).to_dict()


def _guard(fn, *args):
    try:
        return fn(*args)
    except Exception as exc:  # per-cell failures must not abort the run
        logger.warning("cell failed: %s", exc)
        return {"error": f"{type(exc).__name__}: {exc}"}


@dataclass
class ExperimentReport:
    spec: dict
    cells: list
    baselines: list
    edge_surface: list
    f_surface: list
    best: dict | None
    metadata: dict
    runtimes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready report; runtimes are excluded so reruns are byte-identical."""
        d = asdict(self)
        d.pop("runtimes")
        return d

    def cell(self, alpha, beta) -> dict:
        for c in self.cells:
            if np.isclose(c["alpha"], alpha) and np.isclose(c["beta"], beta):
                return c
        raise KeyError((alpha, beta))

    def write(self, out_dir) -> None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_json(self.to_dict(), out / "report.json")
        write_json(self.runtimes, out / "timings.json")
        write_surface(self.edge_surface, self.spec["alphas"], self.spec["betas"],
                      out / "edges.csv")
        write_surface(self.f_surface, self.spec["alphas"], self.spec["betas"],
                      out / "fmeasure.csv")


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Learn every (alpha, beta) cell and every baseline threshold on each instance."""
    data = [instance_data(spec, k) for k in range(spec.instances)]
    cells, runtimes = [], {}
    na, nb = len(spec.alphas), len(spec.betas)
    edge_surface = [[None] * nb for _ in range(na)]
    f_surface = [[None] * nb for _ in range(na)]
    for ia, alpha in enumerate(spec.alphas):
        for ib, beta in enumerate(spec.betas):
            t0 = time.perf_counter()
            try:
                cfg = spec.learn_config(alpha, beta)
            except ValueError as exc:
                records = [{"error": f"ValueError: {exc}"}] * spec.instances
            else:
                records = [_guard(_learn_record, X, L, cfg) for L, X in data]
            runtimes[f"{alpha!r},{beta!r}"] = time.perf_counter() - t0
            mean = _mean(records)
            cells.append({"alpha": alpha, "beta": beta, "instances": records, "mean": mean,
                          "failed": sum("error" in r for r in records)})
            if mean is not None:
                edge_surface[ia][ib] = mean["learned_edge_count"]
                f_surface[ia][ib] = mean["f_measure"]
    baselines = []
    for t in spec.thresholds:
        records = [_guard(_baseline_record, X, L, t) for L, X in data]
        baselines.append({"threshold": t, "instances": records, "mean": _mean(records),
                          "failed": sum("error" in r for r in records)})
    scored = [c for c in cells if c["mean"] is not None]
    best = None
    if scored:
        top = max(scored, key=lambda c: c["mean"]["f_measure"])
        best = {"alpha": top["alpha"], "beta": top["beta"], **top["mean"]}
    metadata = {
        "rng": RNG_NAME,
        "seeding": "SeedSequence(seed).spawn(instances); each child spawn(2) -> (graph, signals)",
        "groundtruth_edge_counts": [int(np.sum(np.triu(-L, 1) > 0)) for L, _ in data],
    }
    return ExperimentReport(spec.to_dict(), cells, baselines, edge_surface, f_surface, best,
                            metadata, runtimes)


def log_grid(lo: float = 1e-4, hi: float = 10.0, num: int = 21) -> list:
    return [float(x) for x in np.logspace(np.log10(lo), np.log10(hi), num)]


def grid_edge_surface(spec: ExperimentSpec):
    """Mean learned-edge-count and F-measure surfaces over the (alpha, beta) grid.

    Rows follow ``spec.alphas`` and columns ``spec.betas``.
    """
    report = run_experiment(spec)
    return np.array(report.edge_surface, dtype=float), np.array(report.f_surface, dtype=float), report


def write_surface(surface, alphas, betas, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["alpha\\beta"] + [repr(b) for b in betas])
        for a, row in zip(alphas, surface):
            writer.writerow([repr(a)] + ["" if v is None else repr(float(v)) for v in row])


def _sweep(spec, settings, make_data):
    cfg = spec.learn_config(spec.alphas[0], spec.betas[0])
    rows = []
    for value in settings:
        records = []
        for k in range(spec.instances):
            L, X = make_data(k, value)
            records.append(_guard(_learn_record, X, L, cfg))
        mean = _mean(records)
        row = {"value": value, "failed": sum("error" in r for r in records)}
        row.update(mean or {m: float("nan") for m in METRICS})
        rows.append(row)
    return rows


def sweep_signal_count(spec: ExperimentSpec, p_values) -> list:
    """Mean metrics versus the number of signals, at ``spec.alphas[0], spec.betas[0]``.

    Smaller ``p`` reuses a prefix of the same signal columns.
    """
    return _sweep(spec, [int(p) for p in p_values],
                  lambda k, p: instance_data(spec, k, p=p))


def sweep_snr(spec: ExperimentSpec, snr_db_values) -> list:
    """Mean metrics versus signal-to-noise ratio in dB (see ``SNR_DEFINITION``)."""
    def make(k, snr):
        graph_seed, _ = instance_seeds(spec)[k]
        sigma = noise_sigma_for_snr(instance_graph(spec, graph_seed), snr)
        return instance_data(spec, k, noise_sigma=sigma)

    return _sweep(spec, [float(s) for s in snr_db_values], make)


def write_sweep(rows, path, label: str) -> None:
    cols = ["value", "failed", *METRICS]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([label if c == "value" else c for c in cols])
        for r in rows:
            writer.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in cols])
