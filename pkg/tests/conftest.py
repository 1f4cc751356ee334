import numpy as np
import pytest

from curvature_transfer.graph import Graph

from oracles import H_EDGES


@pytest.fixture
def graph_h():
    return Graph.from_edges(5, H_EDGES)


def small_random_graph(seed: int, n: int, p: float) -> Graph:
    rng = np.random.default_rng(seed)
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)
