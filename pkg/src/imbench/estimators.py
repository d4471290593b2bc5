"""scikit-learn style estimators wrapping the functional core.

All classes follow the fit/attributes protocol and inherit ``get_params``
/ ``set_params`` from :class:`sklearn.base.BaseEstimator`, so they clone
and grid-search like any other estimator.  ``fit`` takes a
:class:`~imbench.graph.Graph` in place of a feature matrix.
"""

from __future__ import annotations

from typing import Optional, Union

import numpy as np
from sklearn.base import BaseEstimator

from .community import Partition, SimilaritySpec, hierarchical_clustering, modularity
from .diffusion import DiffusionParams, estimate_spread
from .graph import Graph
from .rng import derive_seed
from .seedsel import celf, greedy, select_community_based
from .validation import check_graph

__all__ = [
    "HierarchicalCommunities",
    "CommunitySeedSelection",
    "GreedySeedSelection",
    "CelfSeedSelection",
]


class HierarchicalCommunities(BaseEstimator):
    """Agglomerative structural-similarity community detection.

    Parameters
    ----------
    similarity : "2s" or "alpha2s"
        Edge similarity driving the merges.
    alpha : float
        Interconnection weight, used only by "alpha2s".
    stop : "modularity" or int
        Dendrogram cut rule: modularity peak, or first cut with at most
        ``stop`` communities.
    """

    def __init__(
        self,
        similarity: str = "2s",
        alpha: float = 1.0,
        stop: Union[str, int] = "modularity",
    ) -> None:
        self.similarity = similarity
        self.alpha = alpha
        self.stop = stop

    def fit(self, graph: Graph, y=None) -> "HierarchicalCommunities":
        g = check_graph(graph)
        spec = SimilaritySpec(kind=self.similarity, alpha=self.alpha)
        self.partition_ = hierarchical_clustering(g, spec, stop=self.stop)
        self.labels_ = np.asarray(self.partition_.assignment, dtype=int)
        self.n_communities_ = self.partition_.n_communities
        self.modularity_ = (
            modularity(g, self.partition_) if g.edge_count else float("nan")
        )
        return self

    def fit_predict(self, graph: Graph, y=None) -> np.ndarray:
        return self.fit(graph).labels_


class _SeedSelectorMixin:
    """Shared post-fit bookkeeping for the seed selectors."""

    def _finalize(self, g: Graph, seed_set) -> None:
        self.seed_set_ = seed_set
        self.seed_ids_ = seed_set.members
        self.seeds_ = seed_set.labels(g)
        eval_params = seed_set.params.with_seed(
            derive_seed(seed_set.params.master_seed, "final-eval")
        )
        estimate = estimate_spread(g, seed_set.members, eval_params)
        self.spread_ = estimate.mean
        self.spread_std_error_ = estimate.std_error


class GreedySeedSelection(_SeedSelectorMixin, BaseEstimator):
    """Forward greedy seed selection under the independent cascade model."""

    def __init__(
        self, k: int = 10, p: float = 0.1, r: int = 100, random_state: int = 0
    ) -> None:
        self.k = k
        self.p = p
        self.r = r
        self.random_state = random_state

    def fit(self, graph: Graph, y=None) -> "GreedySeedSelection":
        g = check_graph(graph)
        params = DiffusionParams(self.p, self.r, self.random_state)
        seed_set = greedy(g, self.k, params)
        self.n_evaluations_ = seed_set.n_spread_evals
        self._finalize(g, seed_set)
        return self


class CelfSeedSelection(_SeedSelectorMixin, BaseEstimator):
    """Lazy-forward greedy; same output as greedy, far fewer evaluations."""

    def __init__(
        self, k: int = 10, p: float = 0.1, r: int = 100, random_state: int = 0
    ) -> None:
        self.k = k
        self.p = p
        self.r = r
        self.random_state = random_state

    def fit(self, graph: Graph, y=None) -> "CelfSeedSelection":
        g = check_graph(graph)
        params = DiffusionParams(self.p, self.r, self.random_state)
        seed_set = celf(g, self.k, params)
        self.n_evaluations_ = seed_set.n_spread_evals
        self._finalize(g, seed_set)
        return self


class CommunitySeedSelection(_SeedSelectorMixin, BaseEstimator):
    """Community-quality-guided seed selection (three-phase selector).

    With ``similarity="2s"`` this is the plain hierarchical-clustering
    variant; with ``similarity="alpha2s"`` the clustering uses the
    interconnection-aware similarity.
    """

    def __init__(
        self,
        k: int = 10,
        p: float = 0.1,
        r: int = 100,
        theta: int = 2,
        similarity: str = "alpha2s",
        alpha: float = 1.0,
        stop: Union[str, int] = "modularity",
        random_state: int = 0,
    ) -> None:
        self.k = k
        self.p = p
        self.r = r
        self.theta = theta
        self.similarity = similarity
        self.alpha = alpha
        self.stop = stop
        self.random_state = random_state

    def fit(
        self, graph: Graph, y=None, partition: Optional[Partition] = None
    ) -> "CommunitySeedSelection":
        g = check_graph(graph)
        spec = SimilaritySpec(kind=self.similarity, alpha=self.alpha)
        if partition is None:
            partition = hierarchical_clustering(g, spec, stop=self.stop)
        self.partition_ = partition
        self.n_communities_ = partition.n_communities
        method = "alpha-hcim" if spec.kind == "alpha-2s" else "hcim"
        params = DiffusionParams(self.p, self.r, self.random_state)
        seed_set, trace = select_community_based(
            g,
            partition,
            self.k,
            params,
            theta=self.theta,
            method=method,
            alpha=self.alpha if spec.kind == "alpha-2s" else None,
        )
        self.trace_ = trace
        self._finalize(g, seed_set)
        return self
