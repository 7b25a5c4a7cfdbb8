import itertools

import networkx as nx
import numpy as np
import pytest

from kemeny_bridges.fixtures import cycle_clique_star
from kemeny_bridges.generators import random_connected_graph
from kemeny_bridges.graph import Bridge, Graph, decompose


def from_nx(h) -> Graph:
    nodes = list(h.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), tuple((index[u], index[v]) for u, v in h.edges))


def to_nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


def small_connected_graphs():
    """Every connected graph on 2..6 vertices, one per isomorphism class."""
    return [from_nx(h) for h in nx.graph_atlas_g()[1:] if 2 <= h.number_of_nodes() <= 6 and nx.is_connected(h)]


def random_corpus(count=50, seed=2024):
    rng = np.random.default_rng(seed)
    return [random_connected_graph(rng, int(rng.integers(7, 10)), 0.25) for _ in range(count)]


def corpus():
    return small_connected_graphs() + random_corpus()


def chain_split(g: Graph, *pairs):
    """Decompose along bridges given by label pairs."""
    return decompose(g, [Bridge(g.index(a), g.index(b)) for a, b in pairs])


@pytest.fixture
def linked_chain():
    """4-cycle, K4 and 4-star joined by w1~v2 and w2~v3."""
    g = cycle_clique_star()
    return chain_split(g, ("w1", "v2"), ("w2", "v3"))


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def all_pairs(n):
    return itertools.combinations(range(n), 2)
