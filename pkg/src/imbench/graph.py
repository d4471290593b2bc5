"""Immutable undirected simple graph with dense internal vertex ids.

Vertices carry arbitrary string labels; internally they are integers in
``[0, n)`` assigned in first-seen order, so adjacency lookups are plain
list indexing and runs are reproducible.  Neighbor sequences are kept
sorted, which keeps set intersections and traversal orders deterministic.
"""

from __future__ import annotations

import io
import os
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Optional, Union

__all__ = [
    "Graph",
    "EdgeListParseError",
    "load_edge_list",
    "write_edge_list",
    "neighbors",
    "degree_stats",
    "induced_subgraph",
    "distance",
    "coverage",
]


class EdgeListParseError(ValueError):
    """Raised for malformed edge-list input, naming the offending line."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph: no self-loops, no parallel edges."""

    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    _index: dict[str, int] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, sorted."""
        return tuple(
            (u, v) for u in range(self.n) for v in self.adjacency[u] if u < v
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nei) for nei in self.adjacency)

    @cached_property
    def closed_neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(nei) | {u} for u, nei in enumerate(self.adjacency)
        )

    def degree(self, u: int) -> int:
        self.check_vertex(u)
        return len(self.adjacency[u])

    def label_of(self, u: int) -> str:
        self.check_vertex(u)
        return self.labels[u]

    def id_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown vertex label {label!r}") from None

    def check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise ValueError(f"vertex id {u} out of range [0, {self.n})")

    def check_vertices(self, X: Iterable[int]) -> frozenset[int]:
        members = frozenset(X)
        for u in members:
            self.check_vertex(u)
        return members

    @classmethod
    def build(
        cls,
        labels: Iterable[str],
        edges: Iterable[tuple[str, str]],
        warn_dropped: bool = False,
    ) -> "Graph":
        """Construct from labels (in id order) and labeled edge pairs.

        Self-loops and duplicate edges are dropped; with ``warn_dropped``
        a single summary warning reports how many of each were seen.
        """
        label_list: list[str] = []
        index: dict[str, int] = {}
        for lab in labels:
            if lab in index:
                raise ValueError(f"duplicate vertex label {lab!r}")
            index[lab] = len(label_list)
            label_list.append(lab)

        edge_set: set[tuple[int, int]] = set()
        self_loops = 0
        duplicates = 0
        for a, b in edges:
            u, v = index[a], index[b]
            if u == v:
                self_loops += 1
                continue
            key = (u, v) if u < v else (v, u)
            if key in edge_set:
                duplicates += 1
            else:
                edge_set.add(key)
        if warn_dropped and (self_loops or duplicates):
            warnings.warn(
                f"dropped {self_loops} self-loop(s) and "
                f"{duplicates} duplicate edge(s) while loading",
                stacklevel=3,
            )

        adj: list[list[int]] = [[] for _ in label_list]
        for u, v in edge_set:
            adj[u].append(v)
            adj[v].append(u)
        adjacency = tuple(tuple(sorted(nei)) for nei in adj)
        return cls(labels=tuple(label_list), adjacency=adjacency, _index=index)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str]],
        isolated: Iterable[str] = (),
    ) -> "Graph":
        """Convenience builder: labels appear in first-seen order."""
        edges = list(edges)
        labels: list[str] = []
        seen: set[str] = set()
        for a, b in edges:
            for lab in (a, b):
                if lab not in seen:
                    seen.add(lab)
                    labels.append(lab)
        for lab in isolated:
            if lab not in seen:
                seen.add(lab)
                labels.append(lab)
        return cls.build(labels, edges)


def load_edge_list(source: Union[str, os.PathLike, IO]) -> Graph:
    """Parse a whitespace- or comma-separated edge list into a Graph.

    Lines starting with '#' or '%' are comments; blank lines are skipped.
    Edge direction is ignored, duplicate edges collapse, self-loops drop
    (both with a counted warning).  Vertex ids are assigned in first-seen
    order over the surviving token stream.
    """
    if hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        lines = io.StringIO(text)
    else:
        lines = open(source, "r", encoding="utf-8")

    labels: list[str] = []
    seen: set[str] = set()
    pairs: list[tuple[str, str]] = []
    with lines:
        for lineno, line in enumerate(lines, start=1):
            stripped = line.strip()
            if not stripped or stripped[0] in "#%":
                continue
            tokens = stripped.replace(",", " ").split()
            if len(tokens) != 2:
                raise EdgeListParseError(
                    f"line {lineno}: expected two vertex labels, "
                    f"got {len(tokens)}: {stripped!r}"
                )
            a, b = tokens
            for lab in (a, b):
                if lab not in seen:
                    seen.add(lab)
                    labels.append(lab)
            pairs.append((a, b))
    if not pairs:
        raise ValueError("no edges in input")
    return Graph.build(labels, pairs, warn_dropped=True)


def write_edge_list(g: Graph, sink: Union[str, os.PathLike, IO]) -> None:
    """Emit one "label1 label2" line per edge, sorted by internal id pair."""
    own = not hasattr(sink, "write")
    out = open(sink, "w", encoding="utf-8") if own else sink
    try:
        for u, v in g.edges:
            out.write(f"{g.labels[u]} {g.labels[v]}\n")
    finally:
        if own:
            out.close()


def neighbors(g: Graph, u: int) -> set[int]:
    """Open neighborhood of ``u``."""
    g.check_vertex(u)
    return set(g.adjacency[u])


def degree_stats(g: Graph, X: Iterable[int]) -> tuple[int, float]:
    """(max degree, average degree) over X, degrees taken in the full graph."""
    members = g.check_vertices(X)
    if not members:
        raise ValueError("degree_stats requires a nonempty vertex set")
    degrees = [len(g.adjacency[u]) for u in members]
    return max(degrees), sum(degrees) / len(degrees)


def induced_subgraph(g: Graph, X: Iterable[int]) -> Graph:
    """Subgraph on X keeping exactly the edges with both endpoints in X.

    Labels are preserved; new internal ids follow ascending old ids.
    """
    members = sorted(g.check_vertices(X))
    keep = frozenset(members)
    labels = [g.labels[u] for u in members]
    edges = [
        (g.labels[u], g.labels[v])
        for u, v in g.edges
        if u in keep and v in keep
    ]
    return Graph.build(labels, edges)


def distance(g: Graph, u: int, v: int) -> Optional[int]:
    """BFS hop count from u to v; None when unreachable."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0
    dist = {u: 0}
    frontier = [u]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for x in frontier:
            for y in g.adjacency[x]:
                if y not in dist:
                    if y == v:
                        return d
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
    return None


def coverage(g: Graph, u: int, theta: int) -> set[int]:
    """All vertices within ``theta`` hops of u, including u itself."""
    g.check_vertex(u)
    if theta < 0:
        raise ValueError("coverage radius must be nonnegative")
    reached = {u}
    frontier = [u]
    for _ in range(theta):
        nxt = []
        for x in frontier:
            for y in g.adjacency[x]:
                if y not in reached:
                    reached.add(y)
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    return reached
