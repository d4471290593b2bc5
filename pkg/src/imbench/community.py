"""Structural-similarity community detection and partition utilities.

Two edge similarities are provided: the cosine structural similarity over
closed neighborhoods ("2s") and its augmented variant ("alpha-2s") that
additionally rewards edges running between the shared neighbors.  An
agglomerative single-link engine merges communities across descending
similarity levels and cuts the dendrogram at the modularity peak (or at a
requested community count).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence, Union

from .graph import Graph
from .validation import check_graph, check_nonnegative

__all__ = [
    "SimilaritySpec",
    "Partition",
    "similarity_2s",
    "similarity_alpha2s",
    "hierarchical_clustering",
    "modularity",
    "partition_split",
    "overlapping_nodes",
    "size_com",
    "partition_to_text",
    "partition_from_text",
]

_SIMILARITY_KINDS = {"2s": "2s", "alpha2s": "alpha-2s", "alpha-2s": "alpha-2s"}


@dataclass(frozen=True)
class SimilaritySpec:
    """Which edge similarity drives clustering; alpha only affects alpha-2s."""

    kind: str = "2s"
    alpha: float = 1.0

    def __post_init__(self) -> None:
        kind = _SIMILARITY_KINDS.get(str(self.kind))
        if kind is None:
            raise ValueError(
                f"unknown similarity kind {self.kind!r}; "
                f"expected one of {sorted(set(_SIMILARITY_KINDS.values()))}"
            )
        object.__setattr__(self, "kind", kind)
        check_nonnegative(self.alpha, "alpha")

    def edge_similarity(self, g: Graph, u: int, v: int) -> float:
        if self.kind == "2s":
            return similarity_2s(g, u, v)
        return similarity_alpha2s(g, u, v, self.alpha)


@dataclass(frozen=True)
class Partition:
    """Disjoint communities covering every vertex of the host graph."""

    communities: tuple[frozenset[int], ...]
    assignment: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.assignment)

    @property
    def n_communities(self) -> int:
        return len(self.communities)

    @classmethod
    def from_communities(
        cls, n: int, communities: Iterable[Iterable[int]]
    ) -> "Partition":
        comms = [frozenset(c) for c in communities]
        if any(not c for c in comms):
            raise ValueError("empty community")
        comms.sort(key=min)
        assignment = [-1] * n
        total = 0
        for idx, c in enumerate(comms):
            for u in c:
                if not 0 <= u < n:
                    raise ValueError(f"vertex id {u} out of range [0, {n})")
                if assignment[u] != -1:
                    raise ValueError(f"vertex {u} assigned to two communities")
                assignment[u] = idx
            total += len(c)
        if total != n:
            raise ValueError("communities do not cover all vertices")
        return cls(communities=tuple(comms), assignment=tuple(assignment))

    @classmethod
    def from_assignment(cls, assignment: Sequence[int]) -> "Partition":
        groups: dict[int, set[int]] = {}
        for u, c in enumerate(assignment):
            groups.setdefault(c, set()).add(u)
        return cls.from_communities(len(assignment), groups.values())

    def community_of(self, u: int) -> frozenset[int]:
        return self.communities[self.assignment[u]]


def similarity_2s(g: Graph, u: int, v: int) -> float:
    """Cosine similarity of the closed neighborhoods of u and v."""
    check_graph(g)
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise ValueError("self-similarity is undefined")
    cu = g.closed_neighbor_sets[u]
    cv = g.closed_neighbor_sets[v]
    return len(cu & cv) / math.sqrt(len(cu) * len(cv))


def similarity_alpha2s(g: Graph, u: int, v: int, alpha: float) -> float:
    """2s augmented by alpha times the edge count inside the shared
    closed neighborhood, so tightly interconnected overlaps score higher."""
    check_graph(g)
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise ValueError("self-similarity is undefined")
    check_nonnegative(alpha, "alpha")
    cu = g.closed_neighbor_sets[u]
    cv = g.closed_neighbor_sets[v]
    common = cu & cv
    triangles = sum(len(g.neighbor_sets[x] & common) for x in common) // 2
    return (len(common) + alpha * triangles) / math.sqrt(len(cu) * len(cv))


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        self.parent[self.find(a)] = self.find(b)


def _similarity_levels(
    g: Graph, spec: SimilaritySpec
) -> list[tuple[float, list[tuple[int, int]]]]:
    """Edges grouped by similarity value, highest first.

    Merging whole levels (rather than one tied pair at a time) keeps the
    dendrogram independent of vertex labeling when similarities tie.
    """
    by_value: dict[float, list[tuple[int, int]]] = {}
    for u, v in g.edges:
        by_value.setdefault(spec.edge_similarity(g, u, v), []).append((u, v))
    return [
        (value, sorted(by_value[value]))
        for value in sorted(by_value, reverse=True)
    ]


def hierarchical_clustering(
    g: Graph,
    spec: SimilaritySpec,
    stop: Union[str, int] = "modularity",
) -> Partition:
    """Agglomerative single-link clustering on edge similarity.

    Starting from singletons, communities joined by the highest-similarity
    inter-community edges are merged; the partition after each similarity
    level is a dendrogram cut.  ``stop="modularity"`` returns the recorded
    cut maximizing modularity (earliest on ties); an integer ``stop``
    returns the first cut with at most that many communities.
    """
    check_graph(g)
    m = g.edge_count
    if m == 0:
        return Partition.from_communities(g.n, [{u} for u in range(g.n)])
    if stop != "modularity":
        stop = int(stop)
        if stop < 1:
            raise ValueError("community-count stopping rule must be >= 1")

    levels = _similarity_levels(g, spec)

    # Pass 1: walk the dendrogram tracking modularity incrementally.
    # Q = intra/m - sumsq/(4 m^2) with sumsq = sum of squared community
    # degree totals; merging A and B adds 2*dA*dB to sumsq and the A-B
    # cross-edge count to intra.
    uf = _UnionFind(g.n)
    deg_sum = [len(adj) for adj in g.adjacency]
    cross: dict[int, dict[int, int]] = {u: {} for u in range(g.n)}
    for u, v in g.edges:
        cross[u][v] = cross[u].get(v, 0) + 1
        cross[v][u] = cross[v].get(u, 0) + 1

    intra = 0
    sumsq = float(sum(d * d for d in deg_sum))
    n_comms = g.n
    four_m2 = 4.0 * m * m

    def current_q() -> float:
        return intra / m - sumsq / four_m2

    # Recorded cuts: (index into `levels` after which the cut is taken,
    # modularity, community count).  Index -1 is the all-singleton start.
    cuts: list[tuple[int, float, int]] = [(-1, current_q(), n_comms)]

    for level_idx, (_value, level_edges) in enumerate(levels):
        merged = False
        for u, v in level_edges:
            ra, rb = uf.find(u), uf.find(v)
            if ra == rb:
                continue
            merged = True
            # Merge the smaller bookkeeping map into the larger one.
            if len(cross[ra]) > len(cross[rb]):
                ra, rb = rb, ra
            uf.parent[ra] = rb
            intra += cross[rb].pop(ra, 0)
            cross[ra].pop(rb, None)
            for other, count in cross[ra].items():
                cross[rb][other] = cross[rb].get(other, 0) + count
                peer = cross[other]
                peer[rb] = peer.get(rb, 0) + peer.pop(ra)
            cross[ra] = {}
            sumsq += 2.0 * deg_sum[ra] * deg_sum[rb]
            deg_sum[rb] += deg_sum[ra]
            n_comms -= 1
        if merged:
            cuts.append((level_idx, current_q(), n_comms))

    if stop == "modularity":
        best = max(cuts, key=lambda c: (c[1], -c[0]))
        chosen_level = best[0]
    else:
        chosen_level = cuts[-1][0]
        for level_idx, _q, count in cuts:
            if count <= stop:
                chosen_level = level_idx
                break

    # Pass 2: replay merges up to the chosen level and read the partition.
    uf = _UnionFind(g.n)
    for level_idx, (_value, level_edges) in enumerate(levels):
        if level_idx > chosen_level:
            break
        for u, v in level_edges:
            uf.union(u, v)
    groups: dict[int, set[int]] = {}
    for u in range(g.n):
        groups.setdefault(uf.find(u), set()).add(u)
    return Partition.from_communities(g.n, groups.values())


def _check_partition(g: Graph, P: Partition) -> None:
    if P.n_vertices != g.n:
        raise ValueError(
            f"partition covers {P.n_vertices} vertices, graph has {g.n}"
        )


def modularity(g: Graph, P: Partition) -> float:
    """Newman modularity of ``P``: intra-edge mass minus the degree-null
    expectation, summed over communities."""
    check_graph(g)
    _check_partition(g, P)
    m = g.edge_count
    if m == 0:
        raise ValueError("modularity is undefined for an edgeless graph")
    intra = [0] * P.n_communities
    for u, v in g.edges:
        cu, cv = P.assignment[u], P.assignment[v]
        if cu == cv:
            intra[cu] += 1
    q = 0.0
    for idx, community in enumerate(P.communities):
        d_c = sum(len(g.adjacency[u]) for u in community)
        q += intra[idx] / m - (d_c / (2.0 * m)) ** 2
    return q


def partition_split(
    P: Partition,
) -> tuple[list[frozenset[int]], list[frozenset[int]]]:
    """Split into (singleton communities, larger communities).

    Larger communities are ordered by descending size, ties by smallest
    contained vertex id.
    """
    singles = [c for c in P.communities if len(c) == 1]
    big = [c for c in P.communities if len(c) > 1]
    singles.sort(key=min)
    big.sort(key=lambda c: (-len(c), min(c)))
    return singles, big


def overlapping_nodes(g: Graph, P: Partition) -> set[int]:
    """Vertices whose neighbors fall in at least two distinct communities."""
    check_graph(g)
    _check_partition(g, P)
    result = set()
    for u in range(g.n):
        seen: set[int] = set()
        for v in g.adjacency[u]:
            seen.add(P.assignment[v])
            if len(seen) >= 2:
                result.add(u)
                break
    return result


def size_com(P: Partition, u: int) -> int:
    """Size of the community containing ``u``."""
    if not 0 <= u < P.n_vertices:
        raise ValueError(f"vertex id {u} not assigned in partition")
    return len(P.communities[P.assignment[u]])


def partition_to_text(g: Graph, P: Partition, sink: Union[IO, None] = None) -> str:
    """One "label community_index" line per vertex, in id order."""
    _check_partition(g, P)
    text = "".join(
        f"{g.labels[u]} {P.assignment[u]}\n" for u in range(g.n)
    )
    if sink is not None:
        sink.write(text)
    return text


def partition_from_text(g: Graph, text: str) -> Partition:
    assignment = [-1] * g.n
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        label, idx = stripped.split()
        assignment[g.id_of(label)] = int(idx)
    if any(c < 0 for c in assignment):
        raise ValueError("partition text does not cover every vertex")
    return Partition.from_assignment(assignment)
