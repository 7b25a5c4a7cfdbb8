"""Kemeny's constant of a bridged graph from data of its pieces.

Everything here consumes :class:`~kemeny_bridges.walk.WalkSummary` objects of
the components and never touches the resistance matrix of the whole graph.

Single-vertex components follow the convention of :class:`WalkSummary`
(``kemeny = 0``, ``accessibility = 0``); their edge count is 0, so the
conventional values never change a result.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GraphValidationError, InconsistentResultError
from .graph import (
    BridgeWeights,
    ChainDecomposition,
    anchor_map,
    bridge_weights,
    pair_path,
    quotient_tree_distance,
    split_edge_counts,
)
from .walk import WalkSummary, summarize

__all__ = [
    "KemenyBreakdown",
    "MomentTerms",
    "summarize_components",
    "bridged_resistance_form",
    "kemeny_single_bridge",
    "bridged_forest_matrix",
    "chain_forest_count",
    "partial_moment",
    "chain_moment_terms",
    "chain_moment",
    "chain_breakdown",
    "kemeny_chain",
    "kemeny_chain_mfpt",
]

FLOAT_AGREEMENT = 1e-9


def _mode(*summaries: WalkSummary) -> bool:
    modes = {s.exact for s in summaries}
    if len(modes) != 1:
        raise GraphValidationError("cannot mix exact and float summaries")
    return modes.pop()


def _div(a, b, exact):
    return Fraction(a) / b if exact else a / b


def _agree(a, b, exact, what):
    if exact:
        ok = a == b
    else:
        ok = abs(a - b) <= FLOAT_AGREEMENT * max(1.0, abs(a))
    if not ok:
        raise InconsistentResultError(f"{what}: {a} != {b}")


# -- one bridge ---------------------------------------------------------------


def bridged_resistance_form(s1: WalkSummary, s2: WalkSummary, v1: int, v2: int):
    """``d^T R d`` of the graph obtained by joining ``v1`` in G1 to ``v2`` in G2."""
    _mode(s1, s2)
    m1, m2 = s1.edge_count, s2.edge_count
    return (
        s1.resistance_form
        + s2.resistance_form
        + 4 * (m2 + 1) * s1.moment(v1)
        + 4 * (m1 + 1) * s2.moment(v2)
        + 2 * (2 * m1 + 1) * (2 * m2 + 1)
    )


def kemeny_single_bridge(
    s1: WalkSummary, s2: WalkSummary, v1: int, v2: int, cross_check: bool = True
):
    """Kemeny's constant after joining ``v1`` (in G1) and ``v2`` (in G2) by an edge.

    The moment-based expression is returned.  With ``cross_check`` the
    accessibility-based expression is evaluated as well and the two must agree
    (exactly in exact mode, to 1e-9 relative otherwise).
    """
    exact = _mode(s1, s2)
    m1, m2 = s1.edge_count, s2.edge_count
    m = m1 + m2 + 1
    tail = _div((2 * m1 + 1) * (2 * m2 + 1), 2 * m, exact)
    via_moments = (
        _div(
            m1 * s1.kemeny + m2 * s2.kemeny + (m2 + 1) * s1.moment(v1) + (m1 + 1) * s2.moment(v2),
            m,
            exact,
        )
        + tail
    )
    if cross_check:
        via_access = (
            s1.kemeny
            + s2.kemeny
            + _div((m2 + 1) * s1.accessibility[v1], m, exact)
            + _div((m1 + 1) * s2.accessibility[v2], m, exact)
            + tail
        )
        _agree(via_moments, via_access, exact, "moment and accessibility forms disagree")
    return via_moments


def bridged_forest_matrix(s1: WalkSummary, s2: WalkSummary, v1: int, v2: int) -> np.ndarray:
    """Separating-forest count matrix of the bridged graph, assembled blockwise.

    Rows/columns list the vertices of G1 first, then those of G2.
    """
    _mode(s1, s2)
    t1, t2 = s1.tree_count, s2.tree_count
    F1, F2 = s1.forest_matrix, s2.forest_matrix
    f1, f2 = F1[:, s1.graph.check_vertex(v1)], F2[:, s2.graph.check_vertex(v2)]
    one1 = np.ones(len(f1), dtype=int)
    one2 = np.ones(len(f2), dtype=int)
    off = t2 * np.outer(f1, one2) + t1 * np.outer(one1, f2) + t1 * t2 * np.outer(one1, one2)
    return np.block([[t2 * F1, off], [off.T, t1 * F2]])


# -- chains -------------------------------------------------------------------


def summarize_components(
    d: ChainDecomposition, exact: bool = False, workers: int | None = None
) -> list:
    """Walk summaries of all components, optionally on a thread pool.

    The result order matches ``d.components`` whatever the completion order.
    """
    graphs = [c.graph for c in d.components]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda g: summarize(g, exact), graphs))
    return [summarize(g, exact) for g in graphs]


def _check(d: ChainDecomposition, summaries: Sequence[WalkSummary]) -> bool:
    if len(summaries) != d.k:
        raise GraphValidationError(f"{len(summaries)} summaries for {d.k} components")
    for i, (c, s) in enumerate(zip(d.components, summaries)):
        if s.vertex_count != c.size or s.edge_count != c.graph.edge_count:
            raise GraphValidationError(
                f"summary {i} describes {s.vertex_count} vertices/{s.edge_count} edges, "
                f"component has {c.size}/{c.graph.edge_count}"
            )
    return _mode(*summaries)


def chain_forest_count(d: ChainDecomposition, summaries: Sequence[WalkSummary], v: int, w: int):
    """``(f, r)``: separating-forest count and effective resistance of ``v, w`` in the chain.

    Both come from the component data along the tree path between ``v`` and ``w``.
    """
    exact = _check(d, summaries)
    path = pair_path(d, v, w)
    dist = len(path) - 1
    tau = 1
    for s in summaries:
        tau *= s.tree_count
    f = tau * dist
    r = dist
    for (x, y), c in zip(path.pairs, path.components):
        s = summaries[c]
        lx, ly = d.local(x), d.local(y)
        if exact:
            f += (tau // s.tree_count) * s.forest_matrix[lx, ly]
        else:
            f += tau * s.forest_matrix[lx, ly] / s.tree_count
        r += s.resistance[lx, ly]
    if exact:
        f, r = int(f), Fraction(r)
    return f, r


def partial_moment(d: ChainDecomposition, summaries: Sequence[WalkSummary], i: int, w: int):
    """Resistances from ``w`` to the vertices of component ``i``, weighted by their
    degrees inside that component (``dhat_i^T R_G e_w``)."""
    _check(d, summaries)
    i = d.check_component(i)
    anchor = anchor_map(d, w)[i][0]
    s = summaries[i]
    m_i = s.edge_count
    dist = quotient_tree_distance(d, i, d.component(w))
    path = pair_path(d, anchor, w)
    path_r = sum(
        summaries[c].resistance[d.local(x), d.local(y)]
        for (x, y), c in zip(path.pairs, path.components)
    )
    return s.moment(d.local(anchor)) + 2 * dist * m_i + 2 * m_i * path_r


@dataclass(frozen=True)
class MomentTerms:
    """Pieces of the degree-weighted resistance sum ``d^T R e_w`` of a chain.

    ``moments[i]``: moment of component ``i``'s anchor inside the component;
    ``resistance_terms``: ``(z, bridge, 2 Wbar_z r(z, anchor))`` per bridge end;
    ``bridge_terms[i]``: ``2 W + 1`` for the bridge leaving component ``i``
    toward ``w``.
    """

    moments: dict
    resistance_terms: tuple
    bridge_terms: dict
    total: object


def chain_moment_terms(
    d: ChainDecomposition,
    summaries: Sequence[WalkSummary],
    weights: BridgeWeights | None = None,
    w: int = 0,
) -> MomentTerms:
    _check(d, summaries)
    weights = weights or bridge_weights(d)
    anchors = anchor_map(d, w)
    moments, res_terms, bridge_terms = {}, [], {}
    for i, (a, b) in anchors.items():
        s = summaries[i]
        la = d.local(a)
        moments[i] = s.moment(la)
        for z, br in weights.contacts[i]:
            side = 0 if d.bridges[br].x == z else 1
            res_terms.append((z, br, 2 * weights.outer[br][side] * s.resistance[d.local(z), la]))
        if b is not None:
            side = 0 if d.bridges[b].x == a else 1
            bridge_terms[i] = 2 * weights.inner[b][side] + 1
    total = sum(moments.values()) + sum(t for *_, t in res_terms) + sum(bridge_terms.values())
    return MomentTerms(moments, tuple(res_terms), bridge_terms, total)


def chain_moment(d, summaries, weights=None, w: int = 0):
    """``d^T R_G e_w`` of the whole chain from component data only."""
    return chain_moment_terms(d, summaries, weights, w).total


@dataclass(frozen=True)
class KemenyBreakdown:
    """Kemeny's constant of a chain split into its four summands.

    ``form`` is ``"resistance"`` (component Kemeny constants weighted by edge
    share, moments, resistances) or ``"mfpt"`` (plain component Kemeny
    constants, accessibility indices, commute times).  ``cross_by_component``
    holds each component's share of ``cross_term``.
    """

    component_term: object
    contact_term: object
    cross_term: object
    bridge_term: object
    form: str
    cross_by_component: tuple = ()

    @property
    def total(self):
        return self.component_term + self.contact_term + self.cross_term + self.bridge_term

    @property
    def kemeny(self):
        return self.total

    def as_dict(self) -> dict:
        return {
            "form": self.form,
            "component_term": self.component_term,
            "contact_term": self.contact_term,
            "cross_term": self.cross_term,
            "bridge_term": self.bridge_term,
            "total": self.total,
        }


def chain_breakdown(
    summaries: Sequence[WalkSummary],
    tree_edges: Sequence,
    ends: Sequence,
    form: str = "resistance",
    outer: Sequence | None = None,
) -> KemenyBreakdown:
    """Kemeny's constant of the chain described by components and bridge placements.

    ``tree_edges[b] = (i, j)`` says bridge ``b`` joins components ``i`` and
    ``j``; ``ends[b] = (u, v)`` are its endpoints as local vertex indices of
    those components.  ``outer`` may pass precomputed ``(m - W_u, m - W_v)``
    pairs; they depend only on the tree and the component edge counts.
    """
    if form not in ("resistance", "mfpt"):
        raise ValueError(f"unknown form {form!r}")
    exact = _mode(*summaries)
    k = len(summaries)
    m = sum(s.edge_count for s in summaries) + len(tree_edges)
    if outer is None:
        inner = split_edge_counts(tree_edges, [s.edge_count for s in summaries])
        outer = [(m - a, m - b) for a, b in inner]
    M = Fraction(m) if exact else float(m)

    contacts = [[] for _ in range(k)]
    for (i, j), (u, v), (wu, wv) in zip(tree_edges, ends, outer):
        contacts[i].append((u, wu))
        contacts[j].append((v, wv))

    if form == "resistance":
        component = sum(s.edge_count * s.kemeny for s in summaries) / M
        point = [s.moments for s in summaries]
    else:
        component = sum(s.kemeny for s in summaries)
        point = [s.accessibility for s in summaries]

    contact = sum(wz * point[i][z] for i in range(k) for z, wz in contacts[i]) / M

    cross_parts = []
    for i, s in enumerate(summaries):
        if len(contacts[i]) < 2:
            cross_parts.append(0)
            continue
        z = [c[0] for c in contacts[i]]
        wz = np.array([c[1] for c in contacts[i]], dtype=object if exact else float)
        if form == "resistance":
            block = s.resistance[np.ix_(z, z)]
            cross_parts.append((wz @ block @ wz) / M)
        elif s.edge_count == 0:
            # every end sits on the one vertex: zero commute times
            cross_parts.append(0)
        else:
            # commute time in G_i is 2 m_i r, hence 2 m m_i (not 2 m^2) below
            block = s.mfpt[np.ix_(z, z)]
            cross_parts.append((wz @ (block + block.T) @ wz) / (2 * M * s.edge_count))
    cross = sum(cross_parts)

    bridge = sum((2 * wu - 1) * (2 * wv - 1) for wu, wv in outer) / (2 * M)
    if not exact:
        component, contact, cross, bridge = map(float, (component, contact, cross, bridge))
        cross_parts = [float(c) for c in cross_parts]
    return KemenyBreakdown(component, contact, cross, bridge, form, tuple(cross_parts))


def _placement(d: ChainDecomposition):
    tree_edges = list(d.bridge_components)
    ends = [(d.local(b.x), d.local(b.y)) for b in d.bridges]
    return tree_edges, ends


def kemeny_chain(
    d: ChainDecomposition,
    summaries: Sequence[WalkSummary] | None = None,
    weights: BridgeWeights | None = None,
    exact: bool = False,
) -> KemenyBreakdown:
    """Kemeny's constant of ``d.parent`` from its components (resistance form).

    Missing ``summaries`` are computed in the requested mode; ``weights``
    default to :func:`bridge_weights` of ``d``.
    """
    summaries = summaries if summaries is not None else summarize_components(d, exact)
    _check(d, summaries)
    weights = weights or bridge_weights(d)
    tree_edges, ends = _placement(d)
    return chain_breakdown(summaries, tree_edges, ends, "resistance", weights.outer)


def kemeny_chain_mfpt(
    d: ChainDecomposition,
    summaries: Sequence[WalkSummary] | None = None,
    weights: BridgeWeights | None = None,
    exact: bool = False,
) -> KemenyBreakdown:
    """Same constant as :func:`kemeny_chain`, via accessibility indices and commute times."""
    summaries = summaries if summaries is not None else summarize_components(d, exact)
    _check(d, summaries)
    weights = weights or bridge_weights(d)
    tree_edges, ends = _placement(d)
    return chain_breakdown(summaries, tree_edges, ends, "mfpt", weights.outer)
