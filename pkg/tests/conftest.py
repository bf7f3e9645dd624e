import functools

import networkx as nx
import pytest

from tanglekit.graphs import Graph


def nx_to_graph(h) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph(
        range(h.number_of_nodes()),
        [(mapping[u], mapping[v]) for u, v in h.edges()],
    )


@functools.lru_cache(maxsize=None)
def atlas_graphs(max_n: int, connected_only: bool = False, min_n: int = 1):
    """All graphs with min_n..max_n vertices, from the networkx atlas."""
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n < min_n or n > max_n:
            continue
        if connected_only and (n == 0 or not nx.is_connected(h)):
            continue
        out.append(nx_to_graph(h))
    return out


@pytest.fixture(scope="session")
def small_graphs():
    return atlas_graphs(5)


@pytest.fixture(scope="session")
def medium_graphs():
    return atlas_graphs(6)


@pytest.fixture(scope="session")
def connected_graphs_6():
    return atlas_graphs(6, connected_only=True)


@pytest.fixture(scope="session")
def connected_graphs_7():
    return atlas_graphs(7, connected_only=True)
