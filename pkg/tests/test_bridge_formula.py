from fractions import Fraction

import numpy as np
import pytest

from conftest import chain_split
from kemeny_bridges.bridge_formula import (
    bridged_forest_matrix,
    bridged_resistance_form,
    chain_breakdown,
    chain_forest_count,
    chain_moment,
    chain_moment_terms,
    kemeny_chain,
    kemeny_chain_mfpt,
    kemeny_single_bridge,
    partial_moment,
    summarize_components,
)
from kemeny_bridges.errors import GraphValidationError
from kemeny_bridges.fixtures import cycle_clique_star, pentagon_with_chord, two_squares
from kemeny_bridges.forests import forest_count_matrix
from kemeny_bridges.generators import (
    complete_graph,
    cycle_graph,
    join_graphs,
    path_graph,
    random_chain,
    random_connected_graph,
    star_graph,
)
from kemeny_bridges.graph import Bridge, Graph, decompose
from kemeny_bridges.walk import kemeny_direct, resistance_matrix, summarize

F = Fraction


def _bridged(g1, g2, v1, v2):
    return join_graphs([g1, g2], [((0, v1), (1, v2))])


# -- one bridge ---------------------------------------------------------------


@pytest.mark.parametrize("exact", [True, False])
def test_single_bridge_matches_direct(exact):
    g1, g2 = two_squares(), pentagon_with_chord()
    s1, s2 = summarize(g1, exact), summarize(g2, exact)
    for v1 in range(g1.vertex_count):
        for v2 in range(g2.vertex_count):
            got = kemeny_single_bridge(s1, s2, v1, v2)
            ref = kemeny_direct(_bridged(g1, g2, v1, v2), exact)
            if exact:
                assert got == ref
            else:
                assert got == pytest.approx(ref, rel=1e-12)


def test_single_bridge_optimum_values():
    g1, g2 = two_squares(), pentagon_with_chord()
    s1, s2 = summarize(g1, True), summarize(g2, True)
    assert kemeny_single_bridge(s1, s2, g1.index("c"), g2.index("p1")) == F(7005, 330)
    assert kemeny_single_bridge(s1, s2, g1.index("f1"), g2.index("p4")) == F(8741, 330)


def test_bridged_resistance_form():
    g1, g2 = cycle_graph(4), star_graph(4)
    s1, s2 = summarize(g1, True), summarize(g2, True)
    g = _bridged(g1, g2, 2, 1)
    d = np.array([int(x) for x in g.degrees], dtype=object)
    assert bridged_resistance_form(s1, s2, 2, 1) == d @ resistance_matrix(g, True) @ d


def test_bridged_forest_matrix_matches_enumeration():
    g1, g2 = cycle_graph(4), complete_graph(3)
    s1, s2 = summarize(g1, True), summarize(g2, True)
    built = bridged_forest_matrix(s1, s2, 1, 2)
    counted = forest_count_matrix(_bridged(g1, g2, 1, 2)).forests
    assert (built == counted).all()


def test_mixed_modes_rejected():
    with pytest.raises(GraphValidationError):
        kemeny_single_bridge(summarize(path_graph(2), True), summarize(path_graph(2), False), 0, 0)


def test_singleton_sides():
    s1, one = summarize(cycle_graph(5), True), summarize(Graph(1), True)
    assert kemeny_single_bridge(s1, one, 0, 0) == kemeny_direct(_bridged(cycle_graph(5), Graph(1), 0, 0), True)
    assert kemeny_single_bridge(one, one, 0, 0) == F(1, 2)


# -- the three-piece fixture ----------------------------------------------------


def test_forest_counts_along_the_chain(linked_chain):
    d = linked_chain
    g = d.parent
    s = summarize_components(d, exact=True)
    assert [x.tree_count for x in s] == [4, 16, 1]
    f, r = chain_forest_count(d, s, g.index("v1"), g.index("w3"))
    assert (f, r) == (288, F(9, 2))
    fl, rl = chain_forest_count(d, summarize_components(d), g.index("v1"), g.index("w3"))
    assert fl == pytest.approx(288, abs=1e-12) and rl == pytest.approx(4.5, abs=1e-12)


def test_partial_moment(linked_chain):
    d = linked_chain
    g = d.parent
    w3 = g.index("w3")
    s = summarize_components(d, exact=True)
    assert partial_moment(d, s, 0, w3) == 33
    # against the whole-graph resistances restricted to the first piece
    R = resistance_matrix(g, True)
    verts = d.components[0].vertices
    dhat = s[0].degrees
    assert sum(dhat[i] * R[v, w3] for i, v in enumerate(verts)) == 33


def test_chain_moment_terms(linked_chain):
    d = linked_chain
    g = d.parent
    w3 = g.index("w3")
    t = chain_moment_terms(d, summarize_components(d, exact=True), w=w3)
    assert t.total == F(155, 2)
    assert [t.moments[i] for i in range(3)] == [5, F(9, 2), 7]
    nonzero = sorted(x for *_, x in t.resistance_terms if x)
    assert nonzero == [5, 24]
    assert sorted(t.bridge_terms.values()) == [9, 23]
    R = resistance_matrix(g, True)
    degrees = np.array([int(x) for x in g.degrees], dtype=object)
    assert (degrees @ R)[w3] == F(155, 2)


@pytest.mark.parametrize("exact", [True, False])
def test_linked_chain_kemeny(linked_chain, exact):
    a = kemeny_chain(linked_chain, exact=exact)
    b = kemeny_chain_mfpt(linked_chain, exact=exact)
    if exact:
        assert a.total == b.total == F(143, 6) == F(3575, 150)
    else:
        assert a.total == pytest.approx(143 / 6, abs=1e-9)
        assert b.total == pytest.approx(143 / 6, abs=1e-9)
    assert a.form == "resistance" and b.form == "mfpt"


def test_linked_chain_breakdown_parts(linked_chain):
    bd = kemeny_chain(linked_chain, exact=True)
    assert bd.component_term == F(31, 15)
    assert bd.bridge_term == F(35, 3)
    assert bd.as_dict()["total"] == F(143, 6)


def test_refined_split_gives_same_constant():
    g = cycle_clique_star()
    full = kemeny_chain(decompose(g), exact=True).total
    partial = kemeny_chain(chain_split(g, ("w1", "v2")), exact=True).total
    assert full == partial == F(143, 6)


# -- random chains ------------------------------------------------------------


def test_random_chains_float(rng):
    for _ in range(60):
        g = random_chain(rng, int(rng.integers(1, 9)), (1, 7), 0.5)
        if g.vertex_count < 2:
            continue
        ref = kemeny_direct(g)
        d = decompose(g)
        for method in (kemeny_chain, kemeny_chain_mfpt):
            assert method(d).total == pytest.approx(ref, rel=1e-9)


def test_random_chains_exact(rng):
    for _ in range(25):
        g = random_chain(rng, int(rng.integers(2, 5)), (1, 4), 0.6)
        d = decompose(g)
        ref = kemeny_direct(g, True)
        assert kemeny_chain(d, exact=True).total == ref
        assert kemeny_chain_mfpt(d, exact=True).total == ref


def test_chain_moment_matches_whole_graph(rng):
    for _ in range(20):
        g = random_chain(rng, int(rng.integers(1, 5)), (1, 4), 0.5)
        d = decompose(g)
        s = summarize_components(d, exact=True)
        R = resistance_matrix(g, True)
        degrees = np.array([int(x) for x in g.degrees], dtype=object)
        w = int(rng.integers(g.vertex_count))
        assert chain_moment(d, s, w=w) == (degrees @ R)[w]
        v = int(rng.integers(g.vertex_count))
        f, r = chain_forest_count(d, s, v, w)
        assert r == R[v, w]


def test_workers_do_not_change_results(rng):
    g = random_chain(rng, 6, (2, 6), 0.5)
    d = decompose(g)
    a = kemeny_chain(d, summarize_components(d, True, workers=4)).total
    assert a == kemeny_chain(d, exact=True).total


def test_summary_mismatch_rejected(linked_chain):
    s = summarize_components(linked_chain)
    with pytest.raises(GraphValidationError):
        kemeny_chain(linked_chain, s[:2])
    with pytest.raises(GraphValidationError):
        kemeny_chain(linked_chain, [s[1], s[0], s[2]])


def test_breakdown_form_validation():
    s = [summarize(path_graph(2))] * 2
    with pytest.raises(ValueError):
        chain_breakdown(s, [(0, 1)], [(0, 0)], form="other")


# -- star of identical copies -------------------------------------------------


def _star_chain_kemeny(h, v, k):
    """Closed form for k copies of h, all bridges at v, joined along a star."""
    s = summarize(h, True)
    mh = h.edge_count
    m = k * mh + k - 1
    return (
        F(k * mh * s.kemeny + (k - 1) * (m + 1) * s.moment(v), m)
        + F((k - 1) * (2 * m - 2 * mh - 1) * (2 * mh + 1), 2 * m)
    )


@pytest.mark.parametrize("h", [complete_graph(4), cycle_graph(5), two_squares(), path_graph(3)])
@pytest.mark.parametrize("k", [2, 3, 5])
def test_star_chain_closed_form(h, k):
    v = 1 if h.vertex_count > 1 else 0
    g = join_graphs([h] * k, [((0, v), (j, v)) for j in range(1, k)])
    ref = kemeny_direct(g, True)
    assert _star_chain_kemeny(h, v, k) == ref
    n = h.vertex_count
    links = [Bridge(v, j * n + v) for j in range(1, k)]
    assert kemeny_chain(decompose(g, links), exact=True).total == ref


def test_random_component_shapes(rng):
    for _ in range(10):
        parts = [random_connected_graph(rng, int(rng.integers(1, 6)), 0.4) for _ in range(3)]
        g = join_graphs(parts, [((0, 0), (1, 0)), ((1, 0), (2, 0))])
        assert kemeny_chain(decompose(g), exact=True).total == kemeny_direct(g, True)
