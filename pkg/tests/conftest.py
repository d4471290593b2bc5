from __future__ import annotations

from pathlib import Path

import pytest

from imbench import Graph, load_edge_list

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Reference graph for propagator scoring: two marked hubs (v, c) whose
# two-hop neighborhoods overlap; expected scores are hand-enumerated.
SCORING_EDGES = [
    ("a", "c"), ("a", "v"), ("b", "v"), ("e", "v"), ("e", "m"),
    ("i", "v"), ("h", "m"), ("h", "l"), ("h", "q"), ("i", "j"),
    ("b", "d"), ("c", "d"), ("f", "c"), ("f", "d"), ("f", "g"),
    ("g", "d"), ("j", "q"), ("l", "q"),
]


def dataset_path(name: str) -> Path:
    return DATA_DIR / f"{name}.edges"


def load_dataset(name: str) -> Graph:
    path = dataset_path(name)
    if not path.exists():
        pytest.skip(
            f"dataset {name!r} not bundled; run scripts/fetch_datasets.py"
        )
    return load_edge_list(path)


@pytest.fixture(scope="session")
def scoring_graph() -> Graph:
    return Graph.from_edges(SCORING_EDGES)


@pytest.fixture(scope="session")
def single_edge() -> Graph:
    return Graph.from_edges([("a", "b")])


@pytest.fixture(scope="session")
def path3() -> Graph:
    return Graph.from_edges([("a", "b"), ("b", "c")])


@pytest.fixture(scope="session")
def triangle() -> Graph:
    return Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture(scope="session")
def star4() -> Graph:
    # center plus three leaves
    return Graph.from_edges([("c", "l1"), ("c", "l2"), ("c", "l3")])


@pytest.fixture(scope="session")
def two_triangles() -> Graph:
    # two triangles joined by the bridge c-x
    return Graph.from_edges(
        [("a", "b"), ("b", "c"), ("a", "c"),
         ("x", "y"), ("y", "z"), ("x", "z"), ("c", "x")]
    )


@pytest.fixture(scope="session")
def karate() -> Graph:
    return load_dataset("karate")


@pytest.fixture(scope="session")
def dolphins() -> Graph:
    return load_dataset("dolphins")
