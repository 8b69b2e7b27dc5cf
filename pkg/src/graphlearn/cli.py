"""Command-line entry point: ``graphlearn <subcommand> ...``.

On failure a JSON object ``{"error": ..., "message": ...}`` is printed to
stderr and the exit code is 1.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import sample_correlation, threshold_correlation
from .clustering import kmeans_signals, spectral_cluster
from .experiment import (
    DEFAULT_GRID,
    SNR_DEFINITION,
    ExperimentSpec,
    run_experiment,
    sweep_signal_count,
    sweep_snr,
    write_sweep,
)
from .generators import RNG_NAME, GmrfSamplerConfig, generate_graph, sample_gmrf_signals
from .io import (
    ingest_signals,
    load_graph,
    save_graph,
    save_laplacian_csv,
    save_signals_csv,
    write_json,
)
from .laplacian import trace_normalize
from .learner import LearnConfig, learn
from .metrics import evaluate


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _graph_choice(text):
    if text in ("rbf", "er", "ba") or text.startswith("file:"):
        return text
    raise argparse.ArgumentTypeError("expected rbf, er, ba or file:PATH")


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _graph_params(args):
    params = {}
    if args.graph == "rbf":
        params = {"kernel_width": args.kernel_width, "edge_threshold": args.edge_threshold}
    elif args.graph == "er":
        params = {"edge_probability": args.edge_probability}
    elif args.graph == "ba":
        params = {"edges_per_new_vertex": args.edges_per_vertex}
    return params


def _spec(args, alphas, betas, thresholds=()):
    model, path = args.graph, None
    if model.startswith("file:"):
        model, path = "file", model[5:]
    return ExperimentSpec(
        graph_model=model, n=args.n, graph_params=_graph_params(args), graph_path=path,
        p=args.p, noise_sigma=args.noise_sigma, alphas=alphas, betas=betas,
        thresholds=list(thresholds), instances=args.instances, seed=args.seed,
        max_iter=args.max_iter, obj_tol=args.tol, prune_threshold=args.prune_threshold,
        lstep_tol=args.lstep_tol)


def cmd_generate(args):
    out = _out_dir(args)
    seeds = np.random.SeedSequence(args.seed).spawn(2)
    if args.graph.startswith("file:"):
        L = trace_normalize(load_graph(args.graph[5:]))
    else:
        L = generate_graph(args.graph, args.n, seed=seeds[0], **_graph_params(args))
    X = sample_gmrf_signals(L, GmrfSamplerConfig(p=args.p, noise_sigma=args.noise_sigma,
                                                 seed=seeds[1]))
    save_graph(L, out / "graph.json")
    save_signals_csv(X, out / "signals.csv")
    write_json({"graph": args.graph, "n": int(L.shape[0]), "graph_params": _graph_params(args),
                "p": args.p, "noise_sigma": args.noise_sigma, "seed": args.seed,
                "rng": RNG_NAME, "seeding": "SeedSequence(seed).spawn(2) -> (graph, signals)"},
               out / "metadata.json")


def cmd_learn(args):
    out = _out_dir(args)
    X = ingest_signals(args.signals, header=args.header, center=args.center)
    cfg = LearnConfig(alpha=args.alpha, beta=args.beta, max_iter=args.max_iter, obj_tol=args.tol,
                      prune_threshold=args.prune_threshold, lstep_tol=args.lstep_tol)
    res = learn(X, cfg)
    save_graph(res.L, out / "graph.json")
    save_laplacian_csv(res.L, out / "laplacian.csv")
    write_json(res.to_dict(), out / "result.json")


def cmd_baseline(args):
    out = _out_dir(args)
    X = ingest_signals(args.signals, header=args.header, center=args.center)
    g = threshold_correlation(sample_correlation(X), args.threshold)
    save_graph(g.L, out / "graph.json")
    save_laplacian_csv(g.L_normalized, out / "laplacian_normalized.csv")


def cmd_evaluate(args):
    learned = load_graph(args.learned)
    truth = load_graph(args.truth)
    mse_ref = trace_normalize(learned) if args.normalize else None
    report = evaluate(learned, truth, L_for_mse=mse_ref).to_dict()
    if args.out:
        write_json(report, _out_dir(args) / "eval.json")
    print(json.dumps(report, sort_keys=True))


def cmd_grid(args):
    alphas = args.alphas or list(DEFAULT_GRID)
    betas = args.betas or list(DEFAULT_GRID)
    report = run_experiment(_spec(args, alphas, betas, args.thresholds or ()))
    report.write(args.out)
    if report.best is not None:
        print(json.dumps(report.best, sort_keys=True))


def cmd_sweep(args):
    spec = _spec(args, [args.alpha], [args.beta])
    if args.kind == "p":
        rows, label = sweep_signal_count(spec, [int(v) for v in args.values]), "p"
    else:
        rows, label = sweep_snr(spec, args.values), "snr_db"
    out = _out_dir(args)
    write_sweep(rows, out / f"sweep_{args.kind}.csv", label)
    write_json({"spec": spec.to_dict(), "kind": args.kind, "rng": RNG_NAME,
                "snr_definition": SNR_DEFINITION}, out / "sweep_metadata.json")


def cmd_cluster(args):
    if bool(args.graph) == bool(args.signals):
        raise ValueError("give exactly one of --graph or --signals")
    if args.graph:
        labels = spectral_cluster(load_graph(args.graph), args.k, seed=args.seed,
                                  normalized=args.normalized)
    else:
        X = ingest_signals(args.signals, header=args.header, center=args.center)
        labels = kmeans_signals(X, args.k, seed=args.seed)
    labels = [int(v) for v in labels]
    if args.out:
        write_json(labels, _out_dir(args) / "partition.json")
    print(json.dumps(labels))


def _add_learn_flags(p):
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-4, help="objective-change stopping tolerance")
    p.add_argument("--lstep-tol", type=float, default=1e-6)
    p.add_argument("--prune-threshold", type=float, default=1e-4)


def _add_signal_flags(p, required=True):
    p.add_argument("--signals", required=required, help="CSV, one vertex per row")
    p.add_argument("--header", action="store_true", help="skip the first line")
    p.add_argument("--center", action="store_true", help="subtract each row's mean")


def _add_dataset_flags(p):
    p.add_argument("--graph", type=_graph_choice, default="rbf", help="rbf, er, ba or file:PATH")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--p", type=int, default=100, help="signals per instance")
    p.add_argument("--noise-sigma", type=float, default=0.5)
    p.add_argument("--kernel-width", type=float, default=0.5)
    p.add_argument("--edge-threshold", type=float, default=0.75)
    p.add_argument("--edge-probability", type=float, default=0.2)
    p.add_argument("--edges-per-vertex", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphlearn",
                                     description="Learn graph Laplacians from smooth signals.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a groundtruth graph and signals")
    _add_dataset_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("learn", help="learn a graph from a signal CSV")
    _add_signal_flags(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    _add_learn_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("baseline", help="thresholded sample-correlation graph")
    _add_signal_flags(p)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("evaluate", help="compare a learned graph JSON to a groundtruth graph JSON")
    p.add_argument("--learned", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--normalize", action="store_true",
                   help="trace-normalize the learned graph before the matrix errors")
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("grid", help="evaluate an (alpha, beta) grid on synthetic instances")
    _add_dataset_flags(p)
    p.add_argument("--alphas", type=_floats, help="comma-separated; default 21 log values 1e-4..10")
    p.add_argument("--betas", type=_floats)
    p.add_argument("--thresholds", type=_floats, help="correlation baseline thresholds")
    p.add_argument("--instances", type=int, default=10)
    _add_learn_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("sweep", help="performance versus signal count or SNR")
    _add_dataset_flags(p)
    p.add_argument("--kind", choices=["p", "snr"], required=True)
    p.add_argument("--values", type=_floats, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--instances", type=int, default=10)
    _add_learn_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cluster", help="spectral clustering of a graph, or k-means of signals")
    p.add_argument("--graph")
    _add_signal_flags(p, required=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--normalized", action="store_true", help="row-normalize the embedding")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cluster)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        args.func(args)
    except Exception as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
