"""Reference graphs with hand-checkable values, labelled for readable reports."""
from __future__ import annotations

from .graph import Graph

__all__ = ["cycle_clique_star", "two_squares", "pentagon_with_chord", "CYCLE_CLIQUE_STAR_TEXT"]

# 4-cycle -- K4 -- 4-star joined by two bridges (w1~v2, w2~v3).
# v1/w1 are opposite corners of the cycle, v3 is the star centre, w3 a leaf.
CYCLE_CLIQUE_STAR_TEXT = """\
# 4-cycle
v1 a1
v1 b1
a1 w1
b1 w1
# bridge
w1 v2
# K4
v2 a2
v2 b2
v2 w2
a2 b2
a2 w2
b2 w2
# bridge
w2 v3
# star centred at v3
v3 w3
v3 a3
v3 b3
"""


def cycle_clique_star() -> Graph:
    from .graph import parse_graph

    return parse_graph(CYCLE_CLIQUE_STAR_TEXT)


def two_squares() -> Graph:
    """Two 4-cycles sharing the vertex ``c``; ``f1``/``f2`` are the far corners."""
    return Graph.from_labelled_edges(
        [
            ("c", "a1"), ("c", "b1"), ("a1", "f1"), ("b1", "f1"),
            ("c", "a2"), ("c", "b2"), ("a2", "f2"), ("b2", "f2"),
        ]
    )


def pentagon_with_chord() -> Graph:
    """5-cycle p1..p5 with chord p1~p3; ``p2`` is the apex between the chord ends."""
    return Graph.from_labelled_edges(
        [("p1", "p2"), ("p2", "p3"), ("p3", "p4"), ("p4", "p5"), ("p5", "p1"), ("p1", "p3")]
    )
