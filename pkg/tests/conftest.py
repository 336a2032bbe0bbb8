from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from walkcent.graph import Graph, parse_edge_list

NINE = "9\n1 2\n1 3\n1 4\n2 4\n3 4\n1 5\n5 6\n6 7\n5 7\n7 8\n1 8\n8 9\n"
TEN = ("10\n1 7\n7 2\n2 8\n8 1\n1 9\n9 2\n2 10\n10 1\n9 4\n4 8\n8 3\n3 7\n7 10\n10 5\n5 9\n"
        "9 6\n6 10\n")
EIGHT = "8\n4 7\n7 8\n8 1\n1 6\n6 2\n2 8\n3 7\n1 5\n5 2\n"

# rotation generator with eigenvalues 0, i, -i
ROTATION = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


@pytest.fixture(scope="session")
def nine() -> Graph:
    return parse_edge_list(NINE)


@pytest.fixture(scope="session")
def ten() -> Graph:
    return parse_edge_list(TEN)


@pytest.fixture(scope="session")
def eight() -> Graph:
    return parse_edge_list(EIGHT)


@pytest.fixture(scope="session")
def rotation() -> Graph:
    return Graph.from_adjacency(ROTATION, kind="general-matrix")


def nx_graph(G) -> Graph:
    return Graph.from_networkx(nx.convert_node_labels_to_integers(G))


def random_corpus(count=100, nmax=20, seed=2024) -> list[Graph]:
    """Connected G(n, p) graphs with n in 4..nmax and p in [0.3, 0.7]."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(4, nmax + 1))
        p = float(rng.uniform(0.3, 0.7))
        G = nx.gnp_random_graph(n, p, seed=int(rng.integers(1 << 31)))
        if nx.is_connected(G):
            out.append(nx_graph(G))
    return out


@pytest.fixture(scope="session")
def corpus() -> list[Graph]:
    return random_corpus()
