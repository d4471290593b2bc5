"""Input validation helpers shared by the functional API and estimators."""

from __future__ import annotations

from typing import Iterable

from .graph import Graph


def check_graph(g: object) -> Graph:
    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph, got {type(g).__name__}")
    if g.n == 0:
        raise ValueError("graph has no vertices")
    return g


def check_probability(p: float, name: str = "p") -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


def check_positive_int(value: int, name: str) -> int:
    value = int(value)
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


def check_nonnegative(value: float, name: str) -> float:
    value = float(value)
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")
    return value


def check_theta(theta: int) -> int:
    theta = int(theta)
    if theta < 0:
        raise ValueError(f"coverage radius theta must be >= 0, got {theta}")
    return theta


def check_seed_count(k: int, n: int) -> int:
    k = int(k)
    if k < 1:
        raise ValueError(f"seed count k must be >= 1, got {k}")
    if k > n:
        raise ValueError(f"seed count k={k} exceeds vertex count n={n}")
    return k


def check_seed_set(g: Graph, S: Iterable[int]) -> frozenset[int]:
    members = g.check_vertices(S)
    if not members:
        raise ValueError("seed set must be nonempty")
    return members
