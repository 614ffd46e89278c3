import networkx as nx
import pytest

from taquin.poset import Poset


def hasse_graph(P: Poset) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_nodes_from(range(P.n))
    G.add_edges_from(P.covers)
    return G


def isomorphic(P: Poset, Q: Poset) -> bool:
    return nx.is_isomorphic(hasse_graph(P), hasse_graph(Q))


@pytest.fixture
def iso():
    return isomorphic
