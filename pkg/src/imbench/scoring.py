"""Propagator scores: redundancy of propagation paths around a vertex.

The score of v sums, over every edge (u, w) of the subgraph induced by
the theta-hop coverage of v, the number of full-graph common neighbors of
u and w.  Low scores mean few redundant two-hop routes ("conflicts"), so
candidate selection takes the minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Graph, coverage
from .validation import check_graph, check_theta

__all__ = ["ScoreConfig", "propagator_score", "score_table",
           "min_score_node", "ScoreCache"]


@dataclass(frozen=True)
class ScoreConfig:
    """Coverage radius for score evaluation."""

    theta: int = 2

    def __post_init__(self) -> None:
        check_theta(self.theta)


def propagator_score(g: Graph, v: int, cfg: ScoreConfig) -> int:
    check_graph(g)
    g.check_vertex(v)
    region = coverage(g, v, cfg.theta)
    score = 0
    for u in region:
        nu = g.neighbor_sets[u]
        for w in g.adjacency[u]:
            # each induced edge once, via its ordered endpoint pair
            if w > u and w in region:
                score += len(nu & g.neighbor_sets[w])
    return score


def score_table(
    g: Graph, vertices: Iterable[int], cfg: ScoreConfig
) -> dict[int, int]:
    return {v: propagator_score(g, v, cfg) for v in sorted(set(vertices))}


class ScoreCache:
    """Memoized propagator scores for one (graph, theta) pair.

    Seed selection re-queries scores across its refinement loop, so each
    vertex is evaluated at most once.
    """

    def __init__(self, g: Graph, cfg: ScoreConfig) -> None:
        self.graph = check_graph(g)
        self.cfg = cfg
        self._scores: dict[int, int] = {}

    def score(self, v: int) -> int:
        cached = self._scores.get(v)
        if cached is None:
            cached = propagator_score(self.graph, v, self.cfg)
            self._scores[v] = cached
        return cached


def min_score_node(
    g: Graph,
    candidates: Iterable[int],
    cfg: ScoreConfig,
    cache: Optional[ScoreCache] = None,
) -> int:
    """Candidate with the smallest score; ties go to the smallest id."""
    check_graph(g)
    pool = sorted(g.check_vertices(candidates))
    if not pool:
        raise ValueError("min_score_node requires a nonempty candidate set")
    if cache is None:
        cache = ScoreCache(g, cfg)
    best = pool[0]
    best_score = cache.score(best)
    for v in pool[1:]:
        s = cache.score(v)
        if s < best_score:
            best, best_score = v, s
    return best
