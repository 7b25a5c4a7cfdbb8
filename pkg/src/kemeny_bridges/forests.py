"""Brute-force counting of spanning trees and two-tree spanning forests.

Ground truth for everything computed by linear algebra elsewhere.  No
floating point here: counts are Python ints, Kemeny's constant a Fraction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GraphValidationError, OracleLimitError
from .graph import Graph, require_connected

__all__ = [
    "ForestCount",
    "DEFAULT_EDGE_LIMIT",
    "spanning_forests",
    "enumerate_spanning_trees",
    "two_tree_forest_count",
    "forest_count_matrix",
    "kemeny_via_forests",
]

DEFAULT_EDGE_LIMIT = 24


def _check_limit(g: Graph, limit: int) -> None:
    if g.edge_count > limit:
        raise OracleLimitError(
            f"graph has {g.edge_count} edges, above the enumeration limit {limit}; "
            "use the Matrix-Tree route (walk.spanning_tree_count) instead"
        )


class _UnionFind:
    """Union by size without path compression, so unions can be undone."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, a):
        while self.parent[a] != a:
            a = self.parent[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return None
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return b

    def undo(self, b):
        a = self.parent[b]
        self.parent[b] = b
        self.size[a] -= self.size[b]


def spanning_forests(g: Graph, trees: int):
    """Yield a union-find snapshot for every spanning forest with ``trees`` trees.

    Edge subsets of size ``n - trees`` are searched by include/exclude
    backtracking; a branch dies as soon as an included edge closes a cycle or
    too few edges remain.  Each yield hands out the live union-find, valid
    only until the generator is resumed.
    """
    n, edges = g.vertex_count, g.edges
    need_total = n - trees
    if need_total < 0:
        return
    uf = _UnionFind(n)

    def rec(pos, need):
        if need == 0:
            yield uf
            return
        if len(edges) - pos < need:
            return
        u, v = edges[pos]
        merged = uf.union(u, v)
        if merged is not None:
            yield from rec(pos + 1, need - 1)
            uf.undo(merged)
        yield from rec(pos + 1, need)

    yield from rec(0, need_total)


def enumerate_spanning_trees(g: Graph, limit: int = DEFAULT_EDGE_LIMIT) -> int:
    """Exact number of spanning trees by exhaustive enumeration."""
    require_connected(g)
    _check_limit(g, limit)
    return sum(1 for _ in spanning_forests(g, 1))


def two_tree_forest_count(g: Graph, i: int, j: int, limit: int = DEFAULT_EDGE_LIMIT) -> int:
    """Number of two-tree spanning forests with ``i`` and ``j`` in different trees."""
    require_connected(g)
    i, j = g.check_vertex(i), g.check_vertex(j)
    if i == j:
        raise GraphValidationError("two_tree_forest_count needs distinct vertices")
    _check_limit(g, limit)
    return sum(1 for uf in spanning_forests(g, 2) if uf.find(i) != uf.find(j))


@dataclass(frozen=True)
class ForestCount:
    """``forests[i, j]``: two-tree spanning forests separating ``i`` and ``j``."""

    forests: np.ndarray
    tree_count: int


def forest_count_matrix(g: Graph, limit: int = DEFAULT_EDGE_LIMIT) -> ForestCount:
    """All separating-forest counts and the spanning tree count in one sweep."""
    require_connected(g)
    _check_limit(g, limit)
    n = g.vertex_count
    F = np.zeros((n, n), dtype=object)
    F[...] = 0
    for uf in spanning_forests(g, 2):
        root = uf.find(0)
        side = np.array([uf.find(v) == root for v in range(n)])
        a, b = np.flatnonzero(side), np.flatnonzero(~side)
        F[np.ix_(a, b)] += 1
        F[np.ix_(b, a)] += 1
    tau = sum(1 for _ in spanning_forests(g, 1))
    return ForestCount(forests=F, tree_count=tau)


def kemeny_via_forests(g: Graph, limit: int = DEFAULT_EDGE_LIMIT) -> Fraction:
    """Kemeny's constant ``d^T F d / (4 m tau)`` from pure counting."""
    require_connected(g)
    if g.vertex_count < 2:
        raise GraphValidationError("Kemeny's constant undefined for a single vertex")
    counts = forest_count_matrix(g, limit)
    d = np.array([int(x) for x in g.degrees], dtype=object)
    return Fraction(int(d @ counts.forests @ d), 4 * g.edge_count * counts.tree_count)
