"""Seed-selection algorithms.

``select_community_based`` implements the three-phase community-driven
selector: per-community spread maximizers from the large communities,
minimum-propagator-score picks from the singleton pool, then a single
improving swap attempt against the remaining singletons.

``greedy`` and ``celf`` maximize the same deterministic spread surrogate,
a fixed pool of live-edge realizations evaluated as exact integer
coverage sums.  Because that surrogate is monotone submodular and both
selectors break ties identically, celf provably returns the same seed
sequence as greedy while evaluating far fewer candidates.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import IO, NamedTuple, Optional

from .community import Partition, partition_split, size_com
from .diffusion import (
    DiffusionParams,
    LiveEdgeSamples,
    estimate_spread,
    exact_singleton_spreads,
)
from .graph import Graph, induced_subgraph
from .rng import derive_seed
from .scoring import ScoreCache, ScoreConfig
from .validation import check_graph, check_seed_count, check_theta

__all__ = [
    "SeedSet",
    "SelectionTrace",
    "Phase1Pick",
    "Phase2Pick",
    "SwapAttempt",
    "select_community_based",
    "greedy",
    "celf",
]


@dataclass(frozen=True)
class SeedSet:
    """An ordered seed selection plus the provenance needed to replay it."""

    members: tuple[int, ...]
    method: str
    k: int
    params: DiffusionParams
    theta: Optional[int] = None
    alpha: Optional[float] = None
    n_spread_evals: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.members) != self.k:
            raise ValueError(
                f"seed set has {len(self.members)} members, expected k={self.k}"
            )
        if len(set(self.members)) != len(self.members):
            raise ValueError("seed set members must be distinct")

    def labels(self, g: Graph) -> tuple[str, ...]:
        return tuple(g.labels[u] for u in self.members)

    def to_text(self, g: Graph, sink: Optional[IO] = None) -> str:
        header = (
            f"# method={self.method} k={self.k} p={self.params.p} "
            f"r={self.params.r} seed={self.params.master_seed}"
        )
        if self.theta is not None:
            header += f" theta={self.theta}"
        if self.alpha is not None:
            header += f" alpha={self.alpha}"
        text = header + "\n" + "".join(
            f"{g.labels[u]}\n" for u in self.members
        )
        if sink is not None:
            sink.write(text)
        return text


class Phase1Pick(NamedTuple):
    community: int
    node: int
    within_spread: float


class Phase2Pick(NamedTuple):
    node: int
    score: int


class SwapAttempt(NamedTuple):
    candidate_in: int
    removed: int
    spread_before: float
    spread_after: float
    accepted: bool


@dataclass
class SelectionTrace:
    """Per-phase log of the community-based selector; replay rebuilds S."""

    phase1: list[Phase1Pick] = field(default_factory=list)
    phase2: list[Phase2Pick] = field(default_factory=list)
    phase3: list[SwapAttempt] = field(default_factory=list)

    def replay(self) -> tuple[int, ...]:
        seeds = [pick.node for pick in self.phase1]
        seeds += [pick.node for pick in self.phase2]
        for attempt in self.phase3:
            if attempt.accepted:
                seeds.remove(attempt.removed)
                seeds.append(attempt.candidate_in)
        return tuple(seeds)

    def to_text(self, g: Graph, sink: Optional[IO] = None) -> str:
        lines = []
        for pick in self.phase1:
            lines.append(
                f"phase1 community={pick.community} node={g.labels[pick.node]} "
                f"spread={pick.within_spread:.6f}"
            )
        for pick in self.phase2:
            lines.append(
                f"phase2 node={g.labels[pick.node]} score={pick.score}"
            )
        for a in self.phase3:
            lines.append(
                f"phase3 in={g.labels[a.candidate_in]} out={g.labels[a.removed]} "
                f"before={a.spread_before:.6f} after={a.spread_after:.6f} "
                f"accepted={str(a.accepted).lower()}"
            )
        text = "".join(line + "\n" for line in lines)
        if sink is not None:
            sink.write(text)
        return text


# communities with at most this many internal edges are scored exactly
# (one shared enumeration pass); symmetric members then tie exactly and
# the id tie-break is meaningful
PHASE1_EXACT_EDGE_LIMIT = 12


def _within_community_values(
    g: Graph,
    community: frozenset[int],
    community_index: int,
    params: DiffusionParams,
) -> list[tuple[int, float]]:
    """Members ranked by spread inside the community-induced subgraph."""
    sub = induced_subgraph(g, community)
    members = sorted(community)
    sub_ids = [sub.id_of(g.labels[u]) for u in members]
    if sub.edge_count <= PHASE1_EXACT_EDGE_LIMIT:
        by_sub_id = exact_singleton_spreads(sub, sub_ids, params.p)
        values = {u: by_sub_id[i] for u, i in zip(members, sub_ids)}
    else:
        pool = LiveEdgeSamples(
            sub,
            params.p,
            params.r,
            derive_seed(params.master_seed, "phase1", community_index),
        )
        values = {
            u: pool.evaluate_sum([i]) / params.r
            for u, i in zip(members, sub_ids)
        }
    return sorted(values.items(), key=lambda item: (-item[1], item[0]))


def select_community_based(
    g: Graph,
    P: Partition,
    k: int,
    params: DiffusionParams,
    theta: int = 2,
    method: str = "hcim",
    alpha: Optional[float] = None,
) -> tuple[SeedSet, SelectionTrace]:
    """Three-phase community-guided seed selection.

    Phase 1 walks the multi-member communities in descending-size order,
    repeatedly taking each community's best remaining within-community
    spreader until k seeds are chosen or the communities are exhausted.
    Phase 2 fills up from singleton communities by minimum propagator
    score.  Phase 3 tries swapping the weakest seed (smallest home
    community, most recent on ties) for singletons in score order,
    keeping the first swap that strictly improves the estimated spread.
    """
    check_graph(g)
    check_seed_count(k, g.n)
    check_theta(theta)
    if P.n_vertices != g.n:
        raise ValueError("partition does not match the graph")

    trace = SelectionTrace()
    singles_pool, big = partition_split(P)
    singles = sorted(u for c in singles_pool for u in c)
    seeds: list[int] = []

    # Phase 1: rotate over big communities (largest first), one pick per
    # community per pass; rankings are computed lazily on first visit.
    ranked: dict[int, list[tuple[int, float]]] = {}
    cursors: dict[int, int] = {}
    live = list(range(len(big)))
    while len(seeds) < k and live:
        still_live = []
        for idx in live:
            if idx not in ranked:
                ranked[idx] = _within_community_values(g, big[idx], idx, params)
                cursors[idx] = 0
            order = ranked[idx]
            node, value = order[cursors[idx]]
            cursors[idx] += 1
            seeds.append(node)
            trace.phase1.append(Phase1Pick(idx, node, value))
            if cursors[idx] < len(order):
                still_live.append(idx)
            if len(seeds) == k:
                break
        live = [idx for idx in still_live if cursors[idx] < len(ranked[idx])]

    # Phase 2: singleton-community nodes by minimum propagator score.
    score_cache = ScoreCache(g, ScoreConfig(theta))
    while len(seeds) < k:
        best = min(singles, key=lambda u: (score_cache.score(u), u))
        singles.remove(best)
        seeds.append(best)
        trace.phase2.append(Phase2Pick(best, score_cache.score(best)))

    # Phase 3: one improving swap against the remaining singleton pool.
    if singles:
        eval_params = params.with_seed(
            derive_seed(params.master_seed, "phase3")
        )
        spread_before = estimate_spread(g, seeds, eval_params).mean
        # weakest seed: smallest home community, most recently added on ties
        out_idx = min(
            range(len(seeds)),
            key=lambda i: (size_com(P, seeds[i]), -i),
        )
        removed = seeds[out_idx]
        base = seeds[:out_idx] + seeds[out_idx + 1:]
        while singles:
            candidate = min(
                singles, key=lambda u: (score_cache.score(u), u)
            )
            trial = base + [candidate]
            spread_after = estimate_spread(g, trial, eval_params).mean
            accepted = spread_after > spread_before
            trace.phase3.append(
                SwapAttempt(
                    candidate, removed, spread_before, spread_after, accepted
                )
            )
            if accepted:
                seeds = trial
                break
            singles.remove(candidate)

    seed_set = SeedSet(
        members=tuple(seeds),
        method=method,
        k=k,
        params=params,
        theta=theta,
        alpha=alpha,
    )
    return seed_set, trace


def greedy(
    g: Graph,
    k: int,
    params: DiffusionParams,
    pool: Optional[LiveEdgeSamples] = None,
) -> SeedSet:
    """Forward greedy: each round adds the candidate with the largest
    marginal gain on the shared live-edge pool (ties: smallest id).

    ``pool`` lets callers reuse one sample pool across selector calls;
    by default it is built from ``params`` (celf builds the identical
    pool, which is what makes the two selectors comparable).
    """
    check_graph(g)
    check_seed_count(k, g.n)
    if pool is None:
        pool = LiveEdgeSamples(g, params.p, params.r, params.master_seed)
    covered = pool.covered_state()
    seeds: list[int] = []
    chosen: set[int] = set()
    n_evals = 0
    for _ in range(k):
        best_u = -1
        best_gain = -1
        for u in range(g.n):
            if u in chosen:
                continue
            gain = pool.gain_sum(u, covered)
            n_evals += 1
            if gain > best_gain:
                best_u, best_gain = u, gain
        seeds.append(best_u)
        chosen.add(best_u)
        pool.add_seed(best_u, covered)
    return SeedSet(
        members=tuple(seeds),
        method="greedy",
        k=k,
        params=params,
        n_spread_evals=n_evals,
    )


def celf(
    g: Graph,
    k: int,
    params: DiffusionParams,
    pool: Optional[LiveEdgeSamples] = None,
) -> SeedSet:
    """Lazy-forward greedy over the same pool as :func:`greedy`.

    Cached marginal gains are kept in a max-priority queue with round
    stamps; a stale top entry is re-evaluated and re-inserted, a fresh top
    entry is selected.  Returns the identical seed sequence to greedy.
    """
    check_graph(g)
    check_seed_count(k, g.n)
    if pool is None:
        pool = LiveEdgeSamples(g, params.p, params.r, params.master_seed)
    covered = pool.covered_state()
    n_evals = 0
    heap: list[tuple[int, int, int]] = []  # (-gain, node, round stamp)
    for u in range(g.n):
        gain = pool.gain_sum(u, covered)
        n_evals += 1
        heap.append((-gain, u, 0))
    heapq.heapify(heap)

    seeds: list[int] = []
    while len(seeds) < k:
        neg_gain, u, stamp = heapq.heappop(heap)
        if stamp == len(seeds):
            seeds.append(u)
            pool.add_seed(u, covered)
            continue
        gain = pool.gain_sum(u, covered)
        n_evals += 1
        # if the refreshed entry still tops the queue it would pop next
        # anyway, so select it without the push/pop round trip
        if not heap or (-gain, u) <= heap[0][:2]:
            seeds.append(u)
            pool.add_seed(u, covered)
        else:
            heapq.heappush(heap, (-gain, u, len(seeds)))
    return SeedSet(
        members=tuple(seeds),
        method="celf",
        k=k,
        params=params,
        n_spread_evals=n_evals,
    )
