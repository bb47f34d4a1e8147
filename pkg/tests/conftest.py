import itertools

import networkx as nx
import pytest

from defcol import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def exhaustive_colorable(g: Graph, chi: int, delta: int) -> bool:
    """Plain enumeration of all chi**n colorings; independent of the library search."""
    for col in itertools.product(range(chi), repeat=g.n):
        if all(sum(col[w] == col[u] for w in g.adj[u]) <= delta for u in range(g.n)):
            return True
    return False


def max_clique(g: Graph) -> int:
    if g.n == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(to_nx(g)))


@pytest.fixture
def c4():
    return Graph.cycle(4)


@pytest.fixture
def k3():
    return Graph.complete(3)
