"""Random-walk quantities of a single connected graph by dense linear algebra.

Every function takes ``exact=False``.  In float mode results are numpy
float64 arrays; with ``exact=True`` they are object arrays of
:class:`fractions.Fraction` (use for graphs up to a few dozen vertices).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exact as xla
from .errors import GraphValidationError
from .graph import Graph, require_connected

__all__ = [
    "WalkSummary",
    "summarize",
    "spanning_tree_count",
    "resistance_matrix",
    "stationary_distribution",
    "mfpt_matrix",
    "kemeny_direct",
    "accessibility_vector",
    "moment",
    "degree_vector",
    "TREE_COUNT_WARN",
]

# float determinants above this lose integer precision
TREE_COUNT_WARN = 1e15


def degree_vector(g: Graph, exact: bool = False) -> np.ndarray:
    d = np.asarray(g.degrees)
    return np.array([int(a) for a in d], dtype=object) if exact else d.astype(float)


def spanning_tree_count(g: Graph, exact: bool = False):
    """Number of spanning trees via the Matrix-Tree theorem.

    Exact mode returns a Python ``int`` (fraction-free elimination); float mode
    returns a float and warns once the count exceeds ``TREE_COUNT_WARN``.
    """
    require_connected(g)
    if g.vertex_count == 1:
        return 1 if exact else 1.0
    reduced = g.laplacian(exact=True)[1:, 1:]
    if exact:
        return xla.bareiss_det(reduced)
    tau = float(np.linalg.det(reduced.astype(float)))
    if tau > TREE_COUNT_WARN:
        warnings.warn(
            f"spanning tree count {tau:.3e} exceeds float integer precision; use exact=True",
            RuntimeWarning,
            stacklevel=2,
        )
    return tau


def _grounded_inverse(g: Graph, exact: bool) -> np.ndarray:
    """Inverse of the Laplacian with vertex 0 grounded, padded back to n x n.

    For connected g, ``R[i, j] = G[i, i] + G[j, j] - 2 G[i, j]`` with this G.
    """
    n = g.vertex_count
    if exact:
        G = np.zeros((n, n), dtype=object)
        G[...] = 0
        if n > 1:
            G[1:, 1:] = xla.inverse(g.laplacian(exact=True)[1:, 1:])
        return G
    G = np.zeros((n, n))
    if n > 1:
        inv = np.linalg.inv(g.laplacian()[1:, 1:].astype(float))
        G[1:, 1:] = 0.5 * (inv + inv.T)
    return G


def resistance_matrix(g: Graph, exact: bool = False) -> np.ndarray:
    """Effective resistance between every pair of vertices (unit edge resistors)."""
    require_connected(g)
    G = _grounded_inverse(g, exact)
    diag = np.array([G[i, i] for i in range(g.vertex_count)], dtype=G.dtype)
    R = diag[:, None] + diag[None, :] - 2 * G
    if exact:
        R = xla.as_fraction_array(R)
    return R


def stationary_distribution(g: Graph, exact: bool = False) -> np.ndarray:
    """Degree-proportional stationary vector ``d / 2m``."""
    require_connected(g)
    m = g.edge_count
    if m == 0:
        raise GraphValidationError("stationary distribution undefined on an edgeless graph")
    d = degree_vector(g, exact)
    if exact:
        return np.array([Fraction(x, 2 * m) for x in d], dtype=object)
    return d / (2 * m)


def mfpt_matrix(g: Graph, exact: bool = False) -> np.ndarray:
    """Mean first passage times ``M[i, j]`` from ``i`` to ``j``; zero diagonal.

    Column ``j`` solves ``(I - P_(j)) x = 1`` where ``P_(j)`` drops row and
    column ``j`` of the transition matrix.  Rows are scaled by the degrees
    first, giving the integer system ``L_(j) x = d_(j)``.
    """
    require_connected(g)
    n = g.vertex_count
    if n < 2:
        raise GraphValidationError("mean first passage times need at least 2 vertices")
    L = g.laplacian(exact=exact)
    d = degree_vector(g, exact)
    M = np.zeros((n, n), dtype=object if exact else float)
    if exact:
        M[...] = Fraction(0)
    for j in range(n):
        keep = np.r_[0:j, j + 1:n]
        sub = L[np.ix_(keep, keep)]
        if exact:
            col = xla.solve(sub, d[keep])
        else:
            col = np.linalg.solve(sub.astype(float), d[keep])
        M[keep, j] = col
    return M


def kemeny_direct(g: Graph, exact: bool = False):
    """Kemeny's constant ``d^T R d / 4m`` of the simple random walk on ``g``."""
    require_connected(g)
    if g.vertex_count < 2:
        raise GraphValidationError("Kemeny's constant undefined for a single vertex")
    d = degree_vector(g, exact)
    R = resistance_matrix(g, exact)
    return _kemeny_from(d, R, g.edge_count, exact)


def _kemeny_from(d, R, m, exact):
    if exact:
        return Fraction(d @ R @ d) / (4 * m)
    return float(d @ R @ d) / (4 * m)


def accessibility_vector(g: Graph, exact: bool = False) -> np.ndarray:
    """``alpha[j] = sum_i pi_i M[i, j]``: stationary-weighted mean time to reach ``j``."""
    require_connected(g)
    if g.vertex_count < 2:
        raise GraphValidationError("accessibility undefined for a single vertex")
    return stationary_distribution(g, exact) @ mfpt_matrix(g, exact)


def moment(g: Graph, v: int, exact: bool = False):
    """Degree-weighted resistance from ``v``: ``d^T R e_v``."""
    v = g.check_vertex(v)
    R = resistance_matrix(g, exact)
    return (degree_vector(g, exact) @ R)[v]


@dataclass(frozen=True, eq=False)
class WalkSummary:
    """All per-graph walk quantities, computed once and cached.

    The resistance matrix and moments are computed eagerly; tree count,
    forest matrix, mean first passage times and accessibility indices on first
    access.  A single-vertex graph gets the conventions ``kemeny = 0``,
    ``accessibility = [0]`` and ``mfpt = [[0]]``; those values are only ever
    multiplied by a zero edge count in the chain formulas.
    """

    graph: Graph
    exact: bool
    resistance: np.ndarray

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    @cached_property
    def degrees(self) -> np.ndarray:
        return degree_vector(self.graph, self.exact)

    @cached_property
    def moments(self) -> np.ndarray:
        return self.degrees @ self.resistance

    def moment(self, v: int):
        return self.moments[self.graph.check_vertex(v)]

    @cached_property
    def resistance_form(self):
        """``d^T R d``."""
        return self.moments @ self.degrees

    @cached_property
    def kemeny(self):
        if self.vertex_count == 1:
            return Fraction(0) if self.exact else 0.0
        return _kemeny_from(self.degrees, self.resistance, self.edge_count, self.exact)

    @cached_property
    def tree_count(self):
        return spanning_tree_count(self.graph, self.exact)

    @cached_property
    def forest_matrix(self) -> np.ndarray:
        return self.tree_count * self.resistance

    @cached_property
    def stationary(self) -> np.ndarray:
        return stationary_distribution(self.graph, self.exact)

    @cached_property
    def mfpt(self) -> np.ndarray:
        if self.vertex_count == 1:
            return np.array([[Fraction(0) if self.exact else 0.0]], dtype=object if self.exact else float)
        return mfpt_matrix(self.graph, self.exact)

    @cached_property
    def accessibility(self) -> np.ndarray:
        if self.vertex_count == 1:
            return np.array([Fraction(0) if self.exact else 0.0], dtype=object if self.exact else float)
        return self.stationary @ self.mfpt

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"WalkSummary({self.graph!r}, {mode}, kemeny={float(self.kemeny):.6g})"


def summarize(g: Graph, exact: bool = False) -> WalkSummary:
    return WalkSummary(graph=g, exact=exact, resistance=resistance_matrix(g, exact))
