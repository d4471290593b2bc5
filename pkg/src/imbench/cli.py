"""Command-line benchmark interface.

Subcommands:
  run          execute an experiment grid from a config file and/or flags
  score        dump propagator scores for every vertex
  communities  dump the detected partition with its modularity
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bench import ExperimentConfig, emit_results, run_experiment
from .community import (
    SimilaritySpec,
    hierarchical_clustering,
    modularity,
    partition_to_text,
)
from .graph import load_edge_list
from .scoring import ScoreConfig, propagator_score


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imbench",
        description="Influence-maximization benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment grid")
    run.add_argument("--config", help="JSON config file")
    run.add_argument("--graph", action="append", help="edge-list dataset path")
    run.add_argument(
        "--method",
        action="append",
        choices=["hcim", "alpha-hcim", "greedy", "celf"],
    )
    run.add_argument("--k", type=int)
    run.add_argument("--p", type=float)
    run.add_argument("--r", type=int)
    run.add_argument("--theta", type=int)
    run.add_argument("--alpha", type=float)
    run.add_argument("--seed", type=int)
    run.add_argument("--timeout", type=float, help="per-cell timeout seconds")
    run.add_argument("--out", help="output directory")
    run.add_argument("--jobs", type=int, help="parallel worker slots")

    score = sub.add_parser("score", help="dump propagator scores")
    score.add_argument("--graph", required=True)
    score.add_argument("--theta", type=int, default=2)

    comm = sub.add_parser("communities", help="dump a detected partition")
    comm.add_argument("--graph", required=True)
    comm.add_argument(
        "--similarity", choices=["2s", "alpha2s"], default="2s"
    )
    comm.add_argument("--alpha", type=float, default=1.0)
    comm.add_argument(
        "--stop",
        default="modularity",
        help='"modularity" or a target community count',
    )
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    if args.config:
        cfg = ExperimentConfig.from_file(args.config)
    else:
        cfg = ExperimentConfig()
    cfg = cfg.override(
        datasets=tuple(args.graph) if args.graph else None,
        methods=tuple(args.method) if args.method else None,
        k_values=(args.k,) if args.k is not None else None,
        p_values=(args.p,) if args.p is not None else None,
        r=args.r,
        theta=args.theta,
        alpha=args.alpha,
        master_seed=args.seed,
        timeout_s=args.timeout,
        out_dir=args.out,
        n_jobs=args.jobs,
    )
    rows = run_experiment(cfg)
    if not rows:
        print("no results (all datasets failed to load?)", file=sys.stderr)
        return 1
    paths = emit_results(rows, cfg.out_dir)
    for row in rows:
        sigma = "-" if row.sigma_mean is None else f"{row.sigma_mean:.2f}"
        runtime = "-" if row.runtime_s is None else f"{row.runtime_s:.2f}s"
        print(
            f"{row.dataset} {row.method} k={row.k} p={row.p} "
            f"sigma={sigma} time={runtime}"
            + (" TIMED-OUT" if row.timed_out else "")
        )
    print(f"wrote {len(paths)} file(s) to {cfg.out_dir}")
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    g = load_edge_list(args.graph)
    cfg = ScoreConfig(theta=args.theta)
    for u in range(g.n):
        print(f"{g.labels[u]} {propagator_score(g, u, cfg)}")
    return 0


def _cmd_communities(args: argparse.Namespace) -> int:
    g = load_edge_list(args.graph)
    spec = SimilaritySpec(kind=args.similarity, alpha=args.alpha)
    stop = args.stop if args.stop == "modularity" else int(args.stop)
    partition = hierarchical_clustering(g, spec, stop=stop)
    q = modularity(g, partition) if g.edge_count else float("nan")
    print(f"# communities={partition.n_communities} modularity={q:.6f}")
    sys.stdout.write(partition_to_text(g, partition))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "score":
        return _cmd_score(args)
    return _cmd_communities(args)


if __name__ == "__main__":
    sys.exit(main())
