"""Independent-cascade simulation and spread estimation.

Three evaluation routes are provided:

* ``simulate_once`` / ``estimate_spread`` — the instrumented Monte Carlo
  estimator; replication ``i`` is driven by its own counter-based stream,
  so estimates are bit-identical under any worker count.
* ``exact_spread`` / ``brute_force_optimum`` — exact enumeration over all
  live-edge realizations, feasible only for tiny graphs; the independent
  oracle the estimators are tested against.
* ``LiveEdgeSamples`` — a fixed pool of sampled live-edge realizations
  giving a deterministic, monotone submodular spread surrogate (integer
  coverage sums) used by the greedy-family selectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .graph import Graph
from .rng import replication_stream, stream
from .validation import (
    check_graph,
    check_positive_int,
    check_probability,
    check_seed_count,
    check_seed_set,
)

__all__ = [
    "DiffusionParams",
    "SpreadEstimate",
    "simulate_once",
    "estimate_spread",
    "exact_spread",
    "exact_singleton_spreads",
    "brute_force_optimum",
    "LiveEdgeSamples",
    "format_trace",
]

EXACT_EDGE_LIMIT = 24
BRUTE_FORCE_LIMIT = 100_000


@dataclass(frozen=True)
class DiffusionParams:
    """Uniform activation probability, replication count and master seed."""

    p: float
    r: int = 100
    master_seed: int = 0

    def __post_init__(self) -> None:
        check_probability(self.p)
        check_positive_int(self.r, "r")

    def with_seed(self, master_seed: int) -> "DiffusionParams":
        return DiffusionParams(self.p, self.r, master_seed)


@dataclass(frozen=True)
class SpreadEstimate:
    """Monte Carlo spread estimate with its standard error."""

    mean: float
    std_error: float
    r: int


def simulate_once(
    g: Graph,
    S: Iterable[int],
    p: float,
    rng: np.random.Generator,
    trace: Optional[list[tuple[int, int, int]]] = None,
) -> set[int]:
    """One cascade realization; returns the final active set.

    Rounds are discrete: every node activated in the previous round
    attempts each of its still-inactive neighbors exactly once, in
    ascending (activator, target) order, succeeding with probability p.
    """
    check_graph(g)
    check_probability(p)
    seeds = check_seed_set(g, S)

    active = set(seeds)
    frontier = sorted(seeds)
    round_no = 0
    while frontier:
        round_no += 1
        newly: list[int] = []
        for u in frontier:
            targets = [v for v in g.adjacency[u] if v not in active]
            if not targets:
                continue
            draws = rng.random(len(targets))
            for v, x in zip(targets, draws):
                if x < p and v not in active:
                    active.add(v)
                    newly.append(v)
                    if trace is not None:
                        trace.append((round_no, u, v))
        frontier = sorted(newly)
    return active


def format_trace(g: Graph, trace: Iterable[tuple[int, int, int]]) -> str:
    """Render activation events as "round activator target" lines."""
    return "".join(
        f"{rnd} {g.labels[u]} {g.labels[v]}\n" for rnd, u, v in trace
    )


def _replication_sums(
    g: Graph, seeds: frozenset[int], p: float, master_seed: int,
    indices: range,
) -> tuple[int, int]:
    total = 0
    total_sq = 0
    for i in indices:
        size = len(simulate_once(g, seeds, p, replication_stream(master_seed, i)))
        total += size
        total_sq += size * size
    return total, total_sq


def estimate_spread(
    g: Graph,
    S: Iterable[int],
    params: DiffusionParams,
    n_jobs: int = 1,
) -> SpreadEstimate:
    """Mean cascade size over ``params.r`` independent replications.

    Replication i uses the stream derived from (master_seed, i); sizes are
    integers and are combined exactly, so the estimate does not depend on
    ``n_jobs`` or scheduling.
    """
    check_graph(g)
    seeds = check_seed_set(g, S)
    r = params.r
    if n_jobs > 1 and r > 1:
        from concurrent.futures import ThreadPoolExecutor

        n_chunks = min(n_jobs * 4, r)
        bounds = [r * j // n_chunks for j in range(n_chunks + 1)]
        chunks = [range(bounds[j], bounds[j + 1]) for j in range(n_chunks)]
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            parts = list(
                pool.map(
                    lambda c: _replication_sums(
                        g, seeds, params.p, params.master_seed, c
                    ),
                    chunks,
                )
            )
        total = sum(part[0] for part in parts)
        total_sq = sum(part[1] for part in parts)
    else:
        total, total_sq = _replication_sums(
            g, seeds, params.p, params.master_seed, range(r)
        )

    mean = total / r
    if r > 1:
        var_numerator = total_sq * r - total * total  # exact in integers
        variance = max(var_numerator, 0) / (r * (r - 1))
    else:
        variance = 0.0
    return SpreadEstimate(mean=mean, std_error=math.sqrt(variance / r), r=r)


def _component_masks(edges: tuple[tuple[int, int], ...], n: int,
                     mask: int) -> list[int]:
    """Vertex bitmasks of the connected components of one edge subset."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, (u, v) in enumerate(edges):
        if mask >> j & 1:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    groups: dict[int, int] = {}
    for u in range(n):
        root = find(u)
        groups[root] = groups.get(root, 0) | (1 << u)
    return list(groups.values())


def _live_edge_values(
    g: Graph, candidates: list[int], p: float
) -> list[float]:
    """Exact expected reachability for each candidate vertex bitmask,
    enumerating every subset of the edge set."""
    m = g.edge_count
    edges = g.edges
    n = g.n
    keep_pow = [p ** i for i in range(m + 1)]
    drop_pow = [(1.0 - p) ** i for i in range(m + 1)]
    values = [0.0] * len(candidates)
    for mask in range(1 << m):
        weight = keep_pow[mask.bit_count()] * drop_pow[m - mask.bit_count()]
        comps = _component_masks(edges, n, mask)
        for idx, cand in enumerate(candidates):
            reached = 0
            for comp in comps:
                if comp & cand:
                    reached |= comp
            values[idx] += weight * reached.bit_count()
    return values


def exact_singleton_spreads(
    g: Graph, vertices: Iterable[int], p: float
) -> dict[int, float]:
    """Exact spread of each singleton seed, via one shared enumeration.

    Same guard as :func:`exact_spread`; far cheaper than calling it per
    vertex because the edge-subset walk is done once.
    """
    check_graph(g)
    check_probability(p)
    targets = sorted(g.check_vertices(vertices))
    if g.edge_count > EXACT_EDGE_LIMIT:
        raise ValueError(
            f"exact enumeration requires |E| <= {EXACT_EDGE_LIMIT}, "
            f"got {g.edge_count}"
        )
    values = _live_edge_values(g, [1 << v for v in targets], p)
    return dict(zip(targets, values))


def exact_spread(g: Graph, S: Iterable[int], p: float) -> float:
    """Exact influence spread by summing over all 2^|E| edge subsets.

    Refuses graphs with more than EXACT_EDGE_LIMIT edges.
    """
    check_graph(g)
    check_probability(p)
    seeds = check_seed_set(g, S)
    if g.edge_count > EXACT_EDGE_LIMIT:
        raise ValueError(
            f"exact_spread enumerates 2^|E| subsets; |E|={g.edge_count} "
            f"exceeds the limit of {EXACT_EDGE_LIMIT}"
        )
    cand = 0
    for u in seeds:
        cand |= 1 << u
    return _live_edge_values(g, [cand], p)[0]


def brute_force_optimum(
    g: Graph, k: int, p: float
) -> tuple[tuple[int, ...], float]:
    """Exhaustive optimal seed set of size k under the exact spread.

    Returns (seed ids, exact spread); ties resolve to the lexicographically
    smallest witness.  Guarded to C(n, k) <= BRUTE_FORCE_LIMIT candidate
    sets and the exact_spread edge limit.
    """
    check_graph(g)
    check_probability(p)
    check_seed_count(k, g.n)
    if g.edge_count > EXACT_EDGE_LIMIT:
        raise ValueError(
            f"brute_force_optimum requires |E| <= {EXACT_EDGE_LIMIT}, "
            f"got {g.edge_count}"
        )
    if math.comb(g.n, k) > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute_force_optimum refuses C({g.n}, {k}) "
            f"> {BRUTE_FORCE_LIMIT} candidate sets"
        )
    subsets = list(combinations(range(g.n), k))
    masks = [sum(1 << u for u in sub) for sub in subsets]
    values = _live_edge_values(g, masks, p)
    best_idx = 0
    for idx in range(1, len(subsets)):
        if values[idx] > values[best_idx]:
            best_idx = idx
    return subsets[best_idx], values[best_idx]


class LiveEdgeSamples:
    """A fixed pool of ``r`` sampled live-edge realizations.

    Each realization keeps every edge independently with probability p and
    is stored as a vertex -> component table.  ``evaluate_sum`` returns the
    total reachability over the pool as an exact integer, which makes the
    induced set function monotone and submodular — the property the lazy
    greedy selector relies on.
    """

    def __init__(
        self,
        g: Graph,
        p: float,
        r: int,
        master_seed: int,
        tag: str = "live-edge-pool",
    ) -> None:
        check_graph(g)
        check_probability(p)
        check_positive_int(r, "r")
        self.graph = g
        self.p = p
        self.r = r
        edges = g.edges
        m = len(edges)
        self._tables: list[tuple[list[int], list[int]]] = []
        for i in range(r):
            rng = stream(master_seed, tag, i)
            keep = rng.random(m) < p if m else np.zeros(0, dtype=bool)
            parent = list(range(g.n))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for j in range(m):
                if keep[j]:
                    u, v = edges[j]
                    ru, rv = find(u), find(v)
                    if ru != rv:
                        parent[ru] = rv
            comp_index: dict[int, int] = {}
            ids = [0] * g.n
            sizes: list[int] = []
            for u in range(g.n):
                root = find(u)
                idx = comp_index.get(root)
                if idx is None:
                    idx = len(sizes)
                    comp_index[root] = idx
                    sizes.append(0)
                ids[u] = idx
                sizes[idx] += 1
            self._tables.append((ids, sizes))

    def evaluate_sum(self, S: Iterable[int]) -> int:
        """Total reachability of S over the pool (integer)."""
        seeds = list(S)
        total = 0
        for ids, sizes in self._tables:
            seen: set[int] = set()
            for u in seeds:
                c = ids[u]
                if c not in seen:
                    seen.add(c)
                    total += sizes[c]
        return total

    def mean(self, S: Iterable[int]) -> float:
        return self.evaluate_sum(S) / self.r

    def covered_state(self, S: Iterable[int] = ()) -> list[set[int]]:
        """Per-realization sets of component ids already reached by S."""
        seeds = list(S)
        return [
            {ids[u] for u in seeds} for ids, _sizes in self._tables
        ]

    def gain_sum(self, u: int, covered: list[set[int]]) -> int:
        """Marginal reachability of adding ``u`` given covered components."""
        total = 0
        for (ids, sizes), seen in zip(self._tables, covered):
            c = ids[u]
            if c not in seen:
                total += sizes[c]
        return total

    def add_seed(self, u: int, covered: list[set[int]]) -> None:
        for (ids, _sizes), seen in zip(self._tables, covered):
            seen.add(ids[u])
