"""Shared test fixtures: a loader for small hand-built graphs."""

from __future__ import annotations

import numpy as np
import pytest

from noncyclic import NonCyclicGraph

_SYNTHETIC = {
    "path4": (4, ((0, 1), (1, 2), (2, 3))),
    "star3": (4, ((0, 1), (0, 2), (0, 3))),
    "triangle": (3, ((0, 1), (0, 2), (1, 2))),
    "square": (4, ((0, 1), (1, 2), (2, 3), (3, 0))),
    "hexagon": (6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0))),
}


def _make_graph(name: str) -> NonCyclicGraph:
    n, edges = _SYNTHETIC[name]
    adjacency = np.zeros((n, n), dtype=bool)
    for a, b in edges:
        adjacency[a, b] = adjacency[b, a] = True
    return NonCyclicGraph.from_adjacency(adjacency)


@pytest.fixture
def synthetic_graph():
    """Loader returning one of the named synthetic graphs by fresh copy."""
    return _make_graph
