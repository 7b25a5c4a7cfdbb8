from fractions import Fraction

import networkx as nx
import pytest

from conftest import small_connected_graphs, to_nx
from kemeny_bridges.errors import GraphValidationError, OracleLimitError
from kemeny_bridges.fixtures import cycle_clique_star, two_squares
from kemeny_bridges.forests import (
    enumerate_spanning_trees,
    forest_count_matrix,
    kemeny_via_forests,
    spanning_forests,
    two_tree_forest_count,
)
from kemeny_bridges.generators import complete_graph, cycle_graph, path_graph
from kemeny_bridges.graph import Graph
from kemeny_bridges.walk import kemeny_direct, spanning_tree_count, summarize


@pytest.mark.parametrize("n", range(2, 7))
def test_cayley(n):
    assert enumerate_spanning_trees(complete_graph(n)) == n ** (n - 2)


def test_tree_counts_match_networkx():
    for g in small_connected_graphs()[::5]:
        ref = round(nx.number_of_spanning_trees(to_nx(g)))
        assert enumerate_spanning_trees(g) == ref == spanning_tree_count(g, exact=True)


def test_two_tree_forests_of_a_cycle():
    # cutting two edges of C_n separates i and j unless both cuts are on one arc
    g = cycle_graph(6)
    for j in range(1, 6):
        assert two_tree_forest_count(g, 0, j) == j * (6 - j)


def test_two_tree_forests_of_a_path():
    g = path_graph(5)
    assert two_tree_forest_count(g, 0, 4) == 4
    assert two_tree_forest_count(g, 1, 2) == 1


def test_forests_have_right_size():
    g = two_squares()
    for uf in spanning_forests(g, 2):
        roots = {uf.find(v) for v in range(g.vertex_count)}
        assert len(roots) == 2


def test_forest_matrix_is_tau_times_resistance():
    g = cycle_clique_star()
    counts = forest_count_matrix(g)
    s = summarize(g, exact=True)
    assert counts.tree_count == 64
    assert (counts.forests == s.forest_matrix).all()
    assert counts.forests[g.index("v1"), g.index("w3")] == 288


def test_kemeny_from_counting():
    assert kemeny_via_forests(cycle_clique_star()) == Fraction(143, 6)
    for g in small_connected_graphs()[::3]:
        assert kemeny_via_forests(g) == kemeny_direct(g, exact=True)


def test_limit_and_errors():
    with pytest.raises(OracleLimitError):
        kemeny_via_forests(complete_graph(8))
    assert kemeny_via_forests(complete_graph(5), limit=10) == Fraction(16, 5)
    with pytest.raises(GraphValidationError):
        two_tree_forest_count(path_graph(3), 1, 1)
    with pytest.raises(GraphValidationError):
        kemeny_via_forests(Graph(1))
