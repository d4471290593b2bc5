"""Community-aware influence maximization under the independent cascade
model, with exact oracles and a reproducible benchmark harness."""

from .community import (
    Partition,
    SimilaritySpec,
    hierarchical_clustering,
    modularity,
    overlapping_nodes,
    partition_split,
    similarity_2s,
    similarity_alpha2s,
    size_com,
)
from .diffusion import (
    DiffusionParams,
    LiveEdgeSamples,
    SpreadEstimate,
    brute_force_optimum,
    estimate_spread,
    exact_singleton_spreads,
    exact_spread,
    simulate_once,
)
from .estimators import (
    CelfSeedSelection,
    CommunitySeedSelection,
    GreedySeedSelection,
    HierarchicalCommunities,
)
from .graph import (
    Graph,
    coverage,
    degree_stats,
    distance,
    induced_subgraph,
    load_edge_list,
    neighbors,
    write_edge_list,
)
from .scoring import ScoreConfig, min_score_node, propagator_score, score_table
from .seedsel import SeedSet, SelectionTrace, celf, greedy, select_community_based

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "load_edge_list",
    "write_edge_list",
    "neighbors",
    "degree_stats",
    "induced_subgraph",
    "distance",
    "coverage",
    "SimilaritySpec",
    "Partition",
    "similarity_2s",
    "similarity_alpha2s",
    "hierarchical_clustering",
    "modularity",
    "partition_split",
    "overlapping_nodes",
    "size_com",
    "DiffusionParams",
    "SpreadEstimate",
    "simulate_once",
    "estimate_spread",
    "exact_spread",
    "exact_singleton_spreads",
    "brute_force_optimum",
    "LiveEdgeSamples",
    "ScoreConfig",
    "propagator_score",
    "score_table",
    "min_score_node",
    "SeedSet",
    "SelectionTrace",
    "select_community_based",
    "greedy",
    "celf",
    "HierarchicalCommunities",
    "CommunitySeedSelection",
    "GreedySeedSelection",
    "CelfSeedSelection",
    "__version__",
]
