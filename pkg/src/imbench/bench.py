"""Benchmark harness: experiment grids, timing, and result emission.

A run is the Cartesian product of (dataset, method, k, p).  Community
detection happens once per (dataset, similarity) and is reused across the
whole sweep; each grid cell runs the selector, times it (selection only;
detection time is reported separately), and re-estimates the spread of
the chosen seeds with a derived evaluation seed.  Rows are emitted in
sorted order so reruns and different worker counts produce identical
tables.
"""

from __future__ import annotations

import csv
import json
import multiprocessing as mp
import os
import time
import warnings
from collections import deque
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional, Sequence, Union

from .community import Partition, SimilaritySpec, hierarchical_clustering, modularity
from .diffusion import DiffusionParams, estimate_spread
from .graph import Graph, load_edge_list
from .rng import derive_seed
from .seedsel import celf, greedy, select_community_based

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "run_experiment",
    "emit_results",
    "RESULT_HEADER",
]

METHODS = ("hcim", "alpha-hcim", "greedy", "celf")

RESULT_HEADER = (
    "dataset,method,k,p,r,theta,alpha,"
    "sigma_mean,sigma_se,runtime_s,timed_out,seeds"
)


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple[str, ...] = ()
    methods: tuple[str, ...] = ()
    k_values: tuple[int, ...] = (10,)
    p_values: tuple[float, ...] = (0.1,)
    r: int = 100
    theta: int = 2
    alpha: float = 1.0
    master_seed: int = 0
    timeout_s: Optional[float] = None
    out_dir: str = "results"
    n_jobs: int = 1
    stop: Union[str, int] = "modularity"

    def validate(self) -> "ExperimentConfig":
        if not self.datasets:
            raise ValueError("config needs at least one dataset")
        if not self.methods:
            raise ValueError("config needs at least one method")
        unknown = sorted(set(self.methods) - set(METHODS))
        if unknown:
            raise ValueError(
                f"unknown methods {unknown}; valid: {sorted(METHODS)}"
            )
        if not self.k_values or any(k < 1 for k in self.k_values):
            raise ValueError("k grid must be nonempty positive integers")
        if not self.p_values or any(not 0 <= p <= 1 for p in self.p_values):
            raise ValueError("p grid must be nonempty probabilities")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.theta < 0:
            raise ValueError("theta must be >= 0")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.timeout_s is not None and self.timeout_s <= 0:
            raise ValueError("timeout must be positive when set")
        if self.n_jobs < 1:
            raise ValueError("n_jobs must be >= 1")
        return self

    @classmethod
    def from_file(cls, path: Union[str, os.PathLike]) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls.from_mapping(raw)

    @classmethod
    def from_mapping(cls, raw: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {unknown}")
        kwargs = dict(raw)
        for key in ("datasets", "methods"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        if "k_values" in kwargs:
            kwargs["k_values"] = tuple(int(k) for k in kwargs["k_values"])
        if "p_values" in kwargs:
            kwargs["p_values"] = tuple(float(p) for p in kwargs["p_values"])
        return cls(**kwargs)

    def override(self, **updates) -> "ExperimentConfig":
        updates = {k: v for k, v in updates.items() if v is not None}
        return replace(self, **updates)


@dataclass(frozen=True)
class ExperimentResult:
    dataset: str
    method: str
    k: int
    p: float
    r: int
    theta: int
    alpha: Optional[float]
    sigma_mean: Optional[float]
    sigma_se: Optional[float]
    runtime_s: Optional[float]
    timed_out: bool
    seeds: tuple[str, ...] = ()
    n_communities: Optional[int] = None
    modularity_value: Optional[float] = None
    detection_time_s: Optional[float] = None

    @property
    def sort_key(self):
        return (self.dataset, self.method, self.k, self.p)


@dataclass(frozen=True)
class _Cell:
    dataset: str
    method: str
    k: int
    p: float
    cfg: ExperimentConfig
    graph: Graph
    partition: Optional[Partition]
    detection: Optional[tuple[int, float, float]]  # (count, Q, seconds)


def _run_cell(cell: _Cell) -> ExperimentResult:
    cfg = cell.cfg
    # method kept out of the derivation so greedy and celf share their
    # evaluation pool (they must return identical seed sequences)
    select_seed = derive_seed(
        cfg.master_seed, "select", cell.dataset, cell.k, cell.p
    )
    params = DiffusionParams(cell.p, cfg.r, select_seed)
    started = time.perf_counter()
    if cell.method == "greedy":
        seed_set = greedy(cell.graph, cell.k, params)
    elif cell.method == "celf":
        seed_set = celf(cell.graph, cell.k, params)
    else:
        alpha = cfg.alpha if cell.method == "alpha-hcim" else None
        seed_set, _trace = select_community_based(
            cell.graph,
            cell.partition,
            cell.k,
            params,
            theta=cfg.theta,
            method=cell.method,
            alpha=alpha,
        )
    runtime = time.perf_counter() - started

    eval_seed = derive_seed(
        cfg.master_seed, "eval", cell.dataset, cell.k, cell.p
    )
    estimate = estimate_spread(
        cell.graph, seed_set.members, DiffusionParams(cell.p, cfg.r, eval_seed)
    )
    count, q, det_time = cell.detection or (None, None, None)
    return ExperimentResult(
        dataset=cell.dataset,
        method=cell.method,
        k=cell.k,
        p=cell.p,
        r=cfg.r,
        theta=cfg.theta,
        alpha=cfg.alpha if cell.method == "alpha-hcim" else None,
        sigma_mean=estimate.mean,
        sigma_se=estimate.std_error,
        runtime_s=runtime,
        timed_out=False,
        seeds=seed_set.labels(cell.graph),
        n_communities=count,
        modularity_value=q,
        detection_time_s=det_time,
    )


def _timeout_row(cell: _Cell) -> ExperimentResult:
    cfg = cell.cfg
    count, q, det_time = cell.detection or (None, None, None)
    return ExperimentResult(
        dataset=cell.dataset,
        method=cell.method,
        k=cell.k,
        p=cell.p,
        r=cfg.r,
        theta=cfg.theta,
        alpha=cfg.alpha if cell.method == "alpha-hcim" else None,
        sigma_mean=None,
        sigma_se=None,
        runtime_s=None,
        timed_out=True,
        seeds=(),
        n_communities=count,
        modularity_value=q,
        detection_time_s=det_time,
    )


def _cell_entry(conn, cell: _Cell) -> None:
    try:
        conn.send(_run_cell(cell))
    except Exception as exc:  # surface worker failures to the parent
        conn.send(exc)
    finally:
        conn.close()


def _run_cells_with_slots(
    cells: Sequence[_Cell], n_jobs: int, timeout_s: Optional[float]
) -> list[ExperimentResult]:
    """Run cells in worker processes with per-cell timeouts."""
    ctx = mp.get_context()
    pending = deque(cells)
    running: list[tuple[mp.Process, object, _Cell, float]] = []
    results: list[ExperimentResult] = []
    try:
        while pending or running:
            while pending and len(running) < n_jobs:
                cell = pending.popleft()
                parent_conn, child_conn = ctx.Pipe(duplex=False)
                proc = ctx.Process(target=_cell_entry, args=(child_conn, cell))
                proc.start()
                child_conn.close()
                running.append((proc, parent_conn, cell, time.monotonic()))
            still_running = []
            for proc, conn, cell, started in running:
                if conn.poll(0.02):
                    payload = conn.recv()
                    proc.join()
                    if isinstance(payload, Exception):
                        raise payload
                    results.append(payload)
                elif (
                    timeout_s is not None
                    and time.monotonic() - started > timeout_s
                ):
                    proc.terminate()
                    proc.join()
                    results.append(_timeout_row(cell))
                else:
                    still_running.append((proc, conn, cell, started))
            running = still_running
    finally:
        for proc, _conn, _cell, _started in running:
            if proc.is_alive():
                proc.terminate()
                proc.join()
    return results


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentResult]:
    """Run the full grid; rows come back sorted by (dataset, method, k, p)."""
    cfg.validate()

    graphs: dict[str, Graph] = {}
    for path in cfg.datasets:
        name = Path(path).stem
        try:
            graphs[name] = load_edge_list(path)
        except (OSError, ValueError) as exc:
            warnings.warn(f"skipping dataset {path!r}: {exc}", stacklevel=2)

    # Community detection once per (dataset, similarity kind).
    detections: dict[tuple[str, str], tuple[Partition, tuple[int, float, float]]] = {}
    for name, g in sorted(graphs.items()):
        for method in cfg.methods:
            if method not in ("hcim", "alpha-hcim"):
                continue
            kind = "alpha-2s" if method == "alpha-hcim" else "2s"
            if (name, kind) in detections:
                continue
            spec = SimilaritySpec(kind=kind, alpha=cfg.alpha)
            started = time.perf_counter()
            partition = hierarchical_clustering(g, spec, stop=cfg.stop)
            det_time = time.perf_counter() - started
            q = modularity(g, partition) if g.edge_count else float("nan")
            detections[(name, kind)] = (
                partition,
                (partition.n_communities, q, det_time),
            )

    cells: list[_Cell] = []
    for name in sorted(graphs):
        for method in cfg.methods:
            kind = (
                "alpha-2s" if method == "alpha-hcim"
                else "2s" if method == "hcim" else None
            )
            partition, detection = (None, None)
            if kind is not None:
                partition, detection = detections[(name, kind)]
            for k in cfg.k_values:
                for p in cfg.p_values:
                    cells.append(
                        _Cell(
                            dataset=name,
                            method=method,
                            k=k,
                            p=p,
                            cfg=cfg,
                            graph=graphs[name],
                            partition=partition,
                            detection=detection,
                        )
                    )

    if cfg.n_jobs == 1 and cfg.timeout_s is None:
        results = [_run_cell(cell) for cell in cells]
    else:
        results = _run_cells_with_slots(cells, cfg.n_jobs, cfg.timeout_s)
    return sorted(results, key=lambda row: row.sort_key)


def _fmt(value, pattern: str = "{:.6f}") -> str:
    return "" if value is None else pattern.format(value)


def emit_results(
    rows: Sequence[ExperimentResult], out: Union[str, os.PathLike]
) -> list[Path]:
    """Write the result table, per-figure sweep series and detection stats.

    Returns the written paths.  Output bytes are a pure function of the
    rows except for the measured runtime columns.
    """
    if not rows:
        raise ValueError("no result rows to emit")
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = sorted(rows, key=lambda row: row.sort_key)
    written: list[Path] = []

    table = out_dir / "results.csv"
    with open(table, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULT_HEADER.split(","))
        for row in rows:
            writer.writerow(
                [
                    row.dataset,
                    row.method,
                    row.k,
                    row.p,
                    row.r,
                    row.theta,
                    "" if row.alpha is None else row.alpha,
                    _fmt(row.sigma_mean),
                    _fmt(row.sigma_se),
                    _fmt(row.runtime_s, "{:.4f}"),
                    "true" if row.timed_out else "false",
                    " ".join(row.seeds),
                ]
            )
    written.append(table)

    # Plot-data series: one "p sigma" file per (dataset, k, method).
    series: dict[tuple[str, int, str], list[ExperimentResult]] = {}
    for row in rows:
        if not row.timed_out:
            series.setdefault((row.dataset, row.k, row.method), []).append(row)
    for (dataset, k, method), points in sorted(series.items()):
        path = out_dir / f"plot_{dataset}_k{k}_{method}.dat"
        with open(path, "w", encoding="utf-8") as fh:
            for row in sorted(points, key=lambda r: r.p):
                fh.write(f"{row.p} {row.sigma_mean:.6f}\n")
        written.append(path)

    detection_rows = sorted(
        {
            (
                row.dataset,
                "alpha-2s" if row.method == "alpha-hcim" else "2s",
                "" if row.alpha is None else row.alpha,
                row.n_communities,
                row.modularity_value,
                row.detection_time_s,
            )
            for row in rows
            if row.method in ("hcim", "alpha-hcim")
            and row.n_communities is not None
        }
    )
    if detection_rows:
        path = out_dir / "communities.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                [
                    "dataset",
                    "similarity",
                    "alpha",
                    "n_communities",
                    "modularity",
                    "detection_time_s",
                ]
            )
            for dataset, kind, alpha, count, q, det_time in detection_rows:
                writer.writerow(
                    [dataset, kind, alpha, count, _fmt(q), _fmt(det_time, "{:.4f}")]
                )
        written.append(path)
    return written
