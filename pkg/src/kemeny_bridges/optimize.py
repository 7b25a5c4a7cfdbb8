"""Where to put the bridges: placement problems for Kemeny's constant.

Once the tree and the components are fixed, the bridge-side edge counts are
fixed too, so only the contact and cross summands of the chain breakdown
depend on which vertices carry the bridges.  The shortcut placements below
use that; the exhaustive searches check it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence


from .bridge_formula import KemenyBreakdown, chain_breakdown, kemeny_single_bridge
from .errors import GraphValidationError, SearchCapError
from .generators import join_graphs, star_graph
from .graph import Graph, split_edge_counts
from .walk import WalkSummary

__all__ = [
    "PlacementResult",
    "TreeCost",
    "DEFAULT_CAP",
    "min_accessibility_vertices",
    "max_accessibility_vertices",
    "tree_centroids",
    "optimal_single_bridge",
    "optimal_chain_placement",
    "tree_cost",
    "optimal_identical_chain",
]

DEFAULT_CAP = 10**6
TIE_TOL = 1e-9


@dataclass(frozen=True)
class PlacementResult:
    """An optimal bridge placement.

    ``tree_edges[b] = (i, j)`` and ``ends[b] = (u, v)``: bridge ``b`` joins
    local vertex ``u`` of component ``i`` to local vertex ``v`` of component
    ``j``.  ``ties`` lists every optimal ``ends`` assignment found by an
    exhaustive search (empty for shortcut methods).
    """

    tree_edges: tuple
    ends: tuple
    kemeny: object
    sense: str
    method: str
    breakdown: KemenyBreakdown | None = None
    ties: tuple = field(default=(), repr=False)

    def build(self, graphs: Sequence[Graph]) -> Graph:
        """The chain graph realising this placement."""
        links = [((i, u), (j, v)) for (i, j), (u, v) in zip(self.tree_edges, self.ends)]
        return join_graphs(list(graphs), links)


def _check_sense(sense):
    if sense not in ("min", "max"):
        raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")


def _extreme_set(values, sense, exact):
    best = min(values) if sense == "min" else max(values)
    if exact:
        return sorted(i for i, a in enumerate(values) if a == best)
    tol = TIE_TOL * max(1.0, abs(float(best)))
    return sorted(i for i, a in enumerate(values) if abs(float(a) - float(best)) <= tol)


def min_accessibility_vertices(s: WalkSummary) -> list:
    """Vertices of smallest accessibility index, ties kept (sorted)."""
    return _extreme_set(list(s.accessibility), "min", s.exact)


def max_accessibility_vertices(s: WalkSummary) -> list:
    return _extreme_set(list(s.accessibility), "max", s.exact)


def _subtree_sizes(t: Graph, root: int = 0):
    parent = [-1] * t.vertex_count
    order = [root]
    seen = {root}
    for u in order:
        for w in t.adjacency[u]:
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
    if len(order) != t.vertex_count:
        raise GraphValidationError(f"{t!r} is not connected")
    size = [1] * t.vertex_count
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    return parent, size


def _require_tree(t: Graph):
    if not t.is_tree():
        raise GraphValidationError(f"{t!r} is not a tree")


def tree_centroids(t: Graph) -> list:
    """Vertices whose removal leaves no branch with more than ``n // 2`` vertices."""
    _require_tree(t)
    n = t.vertex_count
    parent, size = _subtree_sizes(t)
    out = []
    for v in range(n):
        branches = [size[w] for w in t.adjacency[v] if parent[w] == v]
        branches.append(n - size[v])
        if max(branches) <= n // 2:
            out.append(v)
    return out


def optimal_single_bridge(
    s1: WalkSummary, s2: WalkSummary, sense: str = "min", mode: str = "shortcut"
) -> PlacementResult:
    """Best single bridge between two graphs.

    ``shortcut`` joins vertices of extreme accessibility index (the constant
    depends on the endpoints only through those two indices); ``exhaustive``
    evaluates all ``n1 * n2`` bridges.
    """
    _check_sense(sense)
    if mode == "shortcut":
        pick = min_accessibility_vertices if sense == "min" else max_accessibility_vertices
        v1, v2 = pick(s1)[0], pick(s2)[0]
        kappa = kemeny_single_bridge(s1, s2, v1, v2)
        return PlacementResult(((0, 1),), ((v1, v2),), kappa, sense, "accessibility-shortcut",
                               chain_breakdown([s1, s2], [(0, 1)], [(v1, v2)]))
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    pairs = list(itertools.product(range(s1.vertex_count), range(s2.vertex_count)))
    values = [kemeny_single_bridge(s1, s2, a, b, cross_check=False) for a, b in pairs]
    ties = [pairs[i] for i in _extreme_set(values, sense, s1.exact)]
    v1, v2 = ties[0]
    return PlacementResult(((0, 1),), ((v1, v2),), values[pairs.index((v1, v2))], sense,
                           "exhaustive", chain_breakdown([s1, s2], [(0, 1)], [(v1, v2)]),
                           tuple((p,) for p in ties))


def _placement_space(summaries, tree_edges):
    size = 1
    for i, j in tree_edges:
        size *= summaries[i].vertex_count * summaries[j].vertex_count
    return size


def _exhaustive(summaries, tree_edges, sense, cap):
    space = _placement_space(summaries, tree_edges)
    if space > cap:
        raise SearchCapError(
            f"{space} placements exceed the exhaustive search cap of {cap}", cap=cap
        )
    exact = summaries[0].exact
    inner = split_edge_counts(tree_edges, [s.edge_count for s in summaries])
    m = sum(s.edge_count for s in summaries) + len(tree_edges)
    outer = [(m - a, m - b) for a, b in inner]
    moments = [list(s.moments) for s in summaries]
    res = [s.resistance.tolist() for s in summaries]
    per_edge = [
        list(itertools.product(range(summaries[i].vertex_count), range(summaries[j].vertex_count)))
        for i, j in tree_edges
    ]
    # only the placement-dependent part: m * (contact + cross)
    scores, candidates = [], []
    for ends in itertools.product(*per_edge):
        contacts = {}
        score = 0
        for (i, j), (u, v), (wu, wv) in zip(tree_edges, ends, outer):
            score += wu * moments[i][u] + wv * moments[j][v]
            contacts.setdefault(i, []).append((u, wu))
            contacts.setdefault(j, []).append((v, wv))
        for i, zs in contacts.items():
            if len(zs) > 1:
                R = res[i]
                for a, wa in zs:
                    for b, wb in zs:
                        if a != b:
                            score += wa * wb * R[a][b]
        scores.append(score)
        candidates.append(ends)
    best = _extreme_set(scores, sense, exact)
    return [candidates[i] for i in best], outer


def optimal_chain_placement(
    summaries: Sequence[WalkSummary],
    tree: Graph,
    sense: str = "min",
    mode: str = "shortcut",
    cap: int = DEFAULT_CAP,
) -> PlacementResult:
    """Optimal bridge endpoints for components joined along ``tree``.

    Modes: ``shortcut`` (minimum only) puts all bridges of a component on one
    vertex of least accessibility index, which zeroes the cross summand and
    minimises the contact summand; ``centroid`` does the same for tree
    components using their centroids; ``exhaustive`` tries every endpoint
    assignment, refusing with :class:`SearchCapError` beyond ``cap``.
    """
    _check_sense(sense)
    _require_tree(tree)
    if tree.vertex_count != len(summaries):
        raise GraphValidationError(
            f"tree has {tree.vertex_count} nodes but {len(summaries)} components were given"
        )
    tree_edges = list(tree.edges)
    if mode == "exhaustive":
        ties, outer = _exhaustive(list(summaries), tree_edges, sense, cap)
        bd = chain_breakdown(summaries, tree_edges, ties[0], outer=outer)
        return PlacementResult(tuple(tree_edges), tuple(ties[0]), bd.total, sense, "exhaustive",
                               bd, tuple(tuple(t) for t in ties))
    if sense == "max":
        raise ValueError("maximisation is only available in exhaustive mode")
    if mode == "shortcut":
        hub = [min_accessibility_vertices(s)[0] for s in summaries]
        method = "accessibility-shortcut"
    elif mode == "centroid":
        if not all(s.graph.is_tree() for s in summaries):
            raise GraphValidationError("centroid mode needs every component to be a tree")
        hub = [tree_centroids(s.graph)[0] for s in summaries]
        method = "centroid"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ends = [(hub[i], hub[j]) for i, j in tree_edges]
    bd = chain_breakdown(summaries, tree_edges, ends)
    return PlacementResult(tuple(tree_edges), tuple(ends), bd.total, sense, method, bd)


@dataclass(frozen=True)
class TreeCost:
    """``cost``: sum over tree edges of the product of the two side sizes."""

    tree: Graph
    cost: int


def tree_cost(t: Graph) -> TreeCost:
    n = t.vertex_count
    if n < 2:
        raise GraphValidationError("tree cost needs at least 2 vertices")
    if t.edge_count != n - 1:
        raise GraphValidationError(f"{t!r} is not a tree")
    _, size = _subtree_sizes(t)  # raises unless connected, hence a tree
    return TreeCost(t, sum(size[v] * (n - size[v]) for v in range(1, n)))


def optimal_identical_chain(h: WalkSummary, k: int):
    """Best chain of ``k`` copies of one graph: a star, every bridge on a least-accessible vertex.

    Returns ``(placement, tree)``.
    """
    if k < 2:
        raise GraphValidationError("need at least two copies")
    if h.vertex_count < 2:
        raise GraphValidationError("component needs at least 2 vertices")
    tree = star_graph(k)
    v = min_accessibility_vertices(h)[0]
    tree_edges = list(tree.edges)
    ends = [(v, v)] * len(tree_edges)
    bd = chain_breakdown([h] * k, tree_edges, ends)
    return PlacementResult(tuple(tree_edges), tuple(ends), bd.total, "min", "star-shortcut", bd), tree
