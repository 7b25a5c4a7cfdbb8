"""Simple undirected graphs, bridge detection and chain decompositions.

A connected graph whose bridges are deleted falls apart into connected
pieces; contracting every piece to a node turns the deleted bridges into the
edges of a tree (the *quotient tree*).  :func:`decompose` builds that picture
and the helpers below answer the path/weight questions the bridge formulas
need about it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import (
    DisconnectedGraphError,
    GraphParseError,
    GraphValidationError,
    NotABridgeError,
)

__all__ = [
    "Graph",
    "Bridge",
    "Component",
    "ChainDecomposition",
    "PairPath",
    "BridgeWeights",
    "parse_graph",
    "format_graph",
    "find_bridges",
    "decompose",
    "quotient_tree_distance",
    "pair_path",
    "anchor_vertices",
    "bridge_weights",
    "split_edge_counts",
]


# below this many edges plain Python beats numpy/scipy call overhead
_SPARSE_MIN_EDGES = 1000


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. vertex_count - 1``.

    Edges are stored as sorted ``(u, v)`` pairs with ``u < v``; duplicates are
    collapsed on construction.  ``labels`` keeps the user's vertex names.
    """

    vertex_count: int
    edges: tuple = ()
    labels: tuple = ()

    def __post_init__(self):
        n = int(self.vertex_count)
        if n < 0:
            raise GraphValidationError("vertex_count must be non-negative")
        raw = self.edges
        if isinstance(raw, np.ndarray) or len(raw) >= _SPARSE_MIN_EDGES:
            edges, arr = self._normalise_array(raw, n)
        else:
            edges = self._normalise_small(raw, n)
            arr = np.array(edges, dtype=np.int64).reshape(-1, 2)
        labels = tuple(str(s) for s in self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise GraphValidationError(f"{len(labels)} labels for {n} vertices")
        if len(set(labels)) != n:
            raise GraphValidationError("vertex labels must be unique")
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "labels", labels)
        arr.setflags(write=False)
        object.__setattr__(self, "_edge_array", arr)

    @staticmethod
    def _normalise_small(raw, n):
        norm = set()
        for e in raw:
            u, v = (int(a) for a in e)
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u}, {v}) out of range for {n} vertices")
            norm.add((u, v) if u < v else (v, u))
        return tuple(sorted(norm))

    @staticmethod
    def _normalise_array(raw, n):
        if not isinstance(raw, np.ndarray):
            raw = [tuple(e) for e in raw]
        arr = np.array(raw, dtype=np.int64).reshape(-1, 2)
        loops = np.flatnonzero(arr[:, 0] == arr[:, 1])
        if loops.size:
            raise GraphValidationError(f"self-loop at vertex {arr[loops[0], 0]}")
        bad = np.flatnonzero(((arr < 0) | (arr >= n)).any(axis=1))
        if bad.size:
            u, v = arr[bad[0]]
            raise GraphValidationError(f"edge ({u}, {v}) out of range for {n} vertices")
        arr.sort(axis=1)
        base = max(n, 1)
        key = np.unique(arr[:, 0] * base + arr[:, 1])
        arr = np.stack([key // base, key % base], axis=1)
        return tuple(map(tuple, arr.tolist())), arr

    @classmethod
    def from_edges(cls, edges: Iterable, vertex_count: int | None = None, labels=None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if vertex_count is None:
            vertex_count = 1 + max((max(e) for e in edges), default=-1)
        return cls(vertex_count, tuple(edges), tuple(labels) if labels is not None else ())

    @classmethod
    def from_labelled_edges(cls, pairs: Iterable) -> "Graph":
        """Build a graph from label pairs; indices follow first appearance."""
        index: dict = {}
        edges = []
        for a, b in pairs:
            for s in (a, b):
                index.setdefault(str(s), len(index))
            edges.append((index[str(a)], index[str(b)]))
        return cls(len(index), tuple(edges), tuple(index))

    # -- derived structure ------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple:
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.bincount(self._edge_array.ravel(), minlength=self.vertex_count).astype(np.int64)
        d.setflags(write=False)
        return d

    @cached_property
    def csr(self) -> sparse.csr_array:
        """Symmetric 0/1 adjacency matrix in CSR form."""
        n, e = self.vertex_count, self._edge_array
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        return sparse.csr_array((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))

    @cached_property
    def _label_index(self) -> dict:
        return {s: i for i, s in enumerate(self.labels)}

    def index(self, label) -> int:
        """Vertex index of ``label`` (ints that are valid indices pass through)."""
        if isinstance(label, (int, np.integer)):
            self.check_vertex(int(label))
            return int(label)
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise GraphValidationError(f"unknown vertex label {label!r}") from None

    def check_vertex(self, v) -> int:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.vertex_count:
            raise GraphValidationError(f"vertex {v!r} not in graph with {self.vertex_count} vertices")
        return int(v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u] if 0 <= u < self.vertex_count else False

    def laplacian(self, exact: bool = False) -> np.ndarray:
        """Combinatorial Laplacian ``D - A`` (int64, or Python ints if ``exact``)."""
        n, e = self.vertex_count, self._edge_array
        L = np.zeros((n, n), dtype=np.int64)
        L[e[:, 0], e[:, 1]] = -1
        L[e[:, 1], e[:, 0]] = -1
        L[np.diag_indices(n)] = self.degrees
        return L.astype(object) if exact else L

    def distances_from(self, source: int) -> list:
        """BFS hop distances from ``source`` (-1 where unreachable)."""
        dist = [-1] * self.vertex_count
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def connected_components(self, removed: Iterable = ()) -> list:
        """Vertex lists of the components after deleting the ``removed`` edges.

        Components are ordered by their smallest vertex; each list is sorted.
        """
        cut = {tuple(sorted(e)) for e in removed}
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w] and (min(u, w), max(u, w)) not in cut:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    @cached_property
    def _connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        if self.edge_count < _SPARSE_MIN_EDGES:
            return min(self.distances_from(0)) >= 0
        return csgraph.connected_components(self.csr, directed=False)[0] == 1

    def is_connected(self) -> bool:
        return self._connected

    def is_tree(self) -> bool:
        return self.is_connected() and self.edge_count == self.vertex_count - 1

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex ``i`` of the result is ``vertices[i]``."""
        local = {v: i for i, v in enumerate(vertices)}
        edges = [(local[u], local[v]) for u, v in self.edges if u in local and v in local]
        return Graph(len(vertices), tuple(edges), tuple(self.labels[v] for v in vertices))

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


def require_connected(g: Graph) -> None:
    if g.vertex_count == 0:
        raise GraphValidationError("graph has no vertices")
    if g.is_connected():
        return
    for u, d in enumerate(g.distances_from(0)):
        if d < 0:
            a, b = g.labels[0], g.labels[u]
            raise DisconnectedGraphError(
                f"graph is disconnected: no path between {a!r} and {b!r}", pair=(a, b)
            )


# -- edge-list text format --------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse an edge list: two labels per line, ``#`` comments, blank lines ignored.

    Labels map to indices in order of first appearance and duplicate edges
    collapse.  Self-loops raise :class:`GraphValidationError`; lines that do
    not hold exactly two labels raise :class:`GraphParseError`.
    """
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"expected 2 vertex labels, found {len(tokens)}", line=lineno)
        if tokens[0] == tokens[1]:
            raise GraphValidationError(f"line {lineno}: self-loop at {tokens[0]!r}")
        pairs.append(tokens)
    return Graph.from_labelled_edges(pairs)


def format_graph(g: Graph) -> str:
    """Inverse of :func:`parse_graph` for graphs without isolated vertices."""
    return "".join(f"{g.labels[u]} {g.labels[v]}\n" for u, v in g.edges)


# -- bridges ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Bridge:
    x: int
    y: int

    def __post_init__(self):
        if self.x > self.y:
            x, y = self.y, self.x
            object.__setattr__(self, "x", x)
            object.__setattr__(self, "y", y)

    @property
    def pair(self) -> tuple:
        return (self.x, self.y)


def find_bridges(g: Graph) -> list:
    """All bridges of a connected graph, sorted by endpoint indices.

    Every non-tree edge of a depth-first tree joins a vertex to one of its
    ancestors, so the low-link of ``v`` is the smallest discovery time reached
    by a back edge from the subtree of ``v``; tree edge ``p~v`` is a bridge
    iff that low-link is later than ``p``.
    """
    require_connected(g)
    n = g.vertex_count
    order, pred = csgraph.depth_first_order(g.csr, 0, directed=False)
    disc = np.empty(n, dtype=np.int64)
    disc[order] = np.arange(n)
    e = g._edge_array
    u, v = e[:, 0], e[:, 1]
    tree = (pred[v] == u) | (pred[u] == v)
    a, b = u[~tree], v[~tree]
    # orient each back edge from descendant to ancestor
    swap = disc[a] < disc[b]
    lo, hi = np.where(swap, a, b), np.where(swap, b, a)
    low = disc.copy()
    np.minimum.at(low, hi, disc[lo])
    low = low.tolist()
    parent = pred.tolist()
    for w in order[:0:-1].tolist():
        p = parent[w]
        if low[w] < low[p]:
            low[p] = low[w]
    kids = order[1:]
    cut = np.asarray(low)[kids] > disc[pred[kids]]
    return sorted(Bridge(int(x), int(y)) for x, y in zip(pred[kids][cut], kids[cut]))


def _cycle_through(g: Graph, x: int, y: int) -> list:
    """A cycle through edge x~y: a path y -> x avoiding that edge, as vertex list."""
    prev = {y: None}
    queue = deque([y])
    while queue:
        u = queue.popleft()
        if u == x:
            break
        for w in g.adjacency[u]:
            if (u, w) in ((y, x), (x, y)) or w in prev:
                continue
            prev[w] = u
            queue.append(w)
    path, u = [], x
    while u is not None:
        path.append(u)
        u = prev[u]
    return path


# -- chain decomposition ----------------------------------------------------


@dataclass(frozen=True)
class Component:
    """One piece of a decomposition: a graph plus its local -> parent vertex map."""

    graph: Graph
    vertices: tuple

    @property
    def size(self) -> int:
        return self.graph.vertex_count


@dataclass(frozen=True)
class ChainDecomposition:
    """A connected graph viewed as a chain of components along its quotient tree.

    ``bridges[b]`` joins components ``bridge_components[b]`` (the component of
    ``bridges[b].x`` first).  Edge ``b`` of the quotient tree is that pair.
    """

    parent: Graph
    components: tuple
    bridges: tuple
    bridge_components: tuple
    quotient_tree: Graph
    component_of: tuple = field(repr=False)
    local_index: tuple = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.components)

    def component(self, v: int) -> int:
        return self.component_of[self.parent.check_vertex(v)]

    def local(self, v: int) -> int:
        return self.local_index[self.parent.check_vertex(v)]

    def check_component(self, i) -> int:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < self.k:
            raise GraphValidationError(f"component id {i!r} out of range 0..{self.k - 1}")
        return int(i)

    @cached_property
    def _tree_edge_bridge(self) -> dict:
        return {tuple(sorted(c)): b for b, c in enumerate(self.bridge_components)}

    def bridge_between(self, i: int, j: int) -> int:
        """Index of the bridge joining adjacent components ``i`` and ``j``."""
        return self._tree_edge_bridge[(min(i, j), max(i, j))]

    def endpoint_in(self, b: int, i: int) -> int:
        """Endpoint of bridge ``b`` lying in component ``i``."""
        br = self.bridges[b]
        return br.x if self.component_of[br.x] == i else br.y

    def toward(self, root: int) -> list:
        """Parent pointers of the quotient tree rooted at component ``root``."""
        parents = [-1] * self.k
        seen = [False] * self.k
        seen[root] = True
        queue = deque([root])
        adj = self.quotient_tree.adjacency
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    parents[w] = u
                    queue.append(w)
        return parents


def decompose(g: Graph, bridges: Iterable | None = None) -> ChainDecomposition:
    """Split ``g`` along ``bridges`` (default: all of them) into a chain.

    Any subset of the bridges is allowed; the resulting components may then
    still contain bridges of their own.  An edge that is not a bridge raises
    :class:`NotABridgeError` carrying a cycle through it.
    """
    all_bridges = find_bridges(g)
    if bridges is None:
        chosen = all_bridges
    else:
        known = set(all_bridges)
        chosen = []
        for e in bridges:
            br = e if isinstance(e, Bridge) else Bridge(*e)
            if not g.has_edge(br.x, br.y):
                raise GraphValidationError(
                    f"{g.labels[br.x]!r}~{g.labels[br.y]!r} is not an edge of the graph"
                )
            if br not in known:
                cycle = [g.labels[v] for v in _cycle_through(g, br.x, br.y)]
                raise NotABridgeError(
                    f"edge {g.labels[br.x]!r}~{g.labels[br.y]!r} is not a bridge; "
                    f"it lies on the cycle {' - '.join(cycle)}",
                    cycle=tuple(cycle),
                )
            chosen.append(br)
        chosen = sorted(set(chosen))

    n, e = g.vertex_count, g._edge_array
    if chosen:
        cut = np.array([b.pair for b in chosen], dtype=np.int64)
        keep = ~np.isin(e[:, 0] * n + e[:, 1], cut[:, 0] * n + cut[:, 1])
        kept = e[keep]
        adj = sparse.csr_array(
            (np.ones(2 * len(kept), dtype=np.int8),
             (np.concatenate([kept[:, 0], kept[:, 1]]), np.concatenate([kept[:, 1], kept[:, 0]]))),
            shape=(n, n),
        )
        _, labels = csgraph.connected_components(adj, directed=False)
    else:
        labels = np.zeros(n, dtype=np.int64)
    # renumber components by smallest vertex; vertices sorted within each
    first = np.full(labels.max() + 1, n)
    np.minimum.at(first, labels, np.arange(n))
    rank = np.empty_like(first)
    rank[np.argsort(first)] = np.arange(first.size)
    comp = rank[labels]
    by_comp = np.argsort(comp, kind="stable")
    sizes = np.bincount(comp)
    starts = np.concatenate([[0], np.cumsum(sizes)])
    local = np.empty(n, dtype=np.int64)
    local[by_comp] = np.arange(n) - np.repeat(starts[:-1], sizes)
    inside = comp[e[:, 0]] == comp[e[:, 1]]
    ie = e[inside]
    ie_comp = comp[ie[:, 0]]
    order = np.argsort(ie_comp, kind="stable")
    ie, ie_comp = local[ie[order]], ie_comp[order]
    bounds = np.searchsorted(ie_comp, np.arange(sizes.size + 1))
    components = []
    for c in range(sizes.size):
        verts = by_comp[starts[c]:starts[c + 1]]
        h = Graph(int(sizes[c]), ie[bounds[c]:bounds[c + 1]], tuple(g.labels[v] for v in verts.tolist()))
        h.__dict__["_connected"] = True  # a piece of a connected graph cut at bridges
        components.append(Component(h, tuple(verts.tolist())))
    component_of = comp.tolist()
    local_index = local.tolist()
    pairs = tuple((component_of[b.x], component_of[b.y]) for b in chosen)
    tree = Graph(len(components), tuple(pairs), tuple(f"G{c + 1}" for c in range(len(components))))
    return ChainDecomposition(
        parent=g,
        components=tuple(components),
        bridges=tuple(chosen),
        bridge_components=pairs,
        quotient_tree=tree,
        component_of=tuple(component_of),
        local_index=tuple(local_index),
    )


def quotient_tree_distance(d: ChainDecomposition, i: int, j: int) -> int:
    """Number of bridges on the tree path between components ``i`` and ``j``."""
    i, j = d.check_component(i), d.check_component(j)
    return d.quotient_tree.distances_from(i)[j]


@dataclass(frozen=True)
class PairPath:
    """Pairs ``(x, y)`` inside consecutive components of a tree path.

    The ``y`` of one pair and the ``x`` of the next are the two ends of a bridge.
    """

    pairs: tuple
    components: tuple

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def pair_path(d: ChainDecomposition, v: int, w: int) -> PairPath:
    """Walk from ``v`` to ``w`` through the chain, one pair per visited component."""
    i, j = d.component(v), d.component(w)
    if i == j:
        return PairPath(((v, w),), (i,))
    parents = d.toward(j)
    comps = [i]
    while comps[-1] != j:
        comps.append(parents[comps[-1]])
    pairs = []
    entry = v
    for a, b in zip(comps, comps[1:]):
        br = d.bridge_between(a, b)
        pairs.append((entry, d.endpoint_in(br, a)))
        entry = d.endpoint_in(br, b)
    pairs.append((entry, w))
    return PairPath(tuple(pairs), tuple(comps))


def anchor_map(d: ChainDecomposition, w: int) -> dict:
    """Component -> (anchor vertex, bridge index toward ``w``'s component).

    The bridge is ``None`` for ``w``'s own component, whose anchor is ``w``.
    """
    k = d.component(w)
    parents = d.toward(k)
    out = {k: (w, None)}
    for i in range(d.k):
        if i != k:
            br = d.bridge_between(i, parents[i])
            out[i] = (d.endpoint_in(br, i), br)
    return dict(sorted(out.items()))


def anchor_vertices(d: ChainDecomposition, w: int) -> dict:
    """For every component, the vertex through which it is attached toward ``w``."""
    return {i: v for i, (v, _) in anchor_map(d, w).items()}


# -- bridge weights -----------------------------------------------------------


def split_edge_counts(tree_edges: Sequence, component_edges: Sequence[int]) -> list:
    """Edge counts on both sides of every bridge of a chain.

    ``tree_edges[b] = (i, j)`` is bridge ``b`` between components ``i`` and
    ``j``; ``component_edges[i]`` is the edge count of component ``i``.
    Returns ``(W_i, W_j)`` per bridge: the number of edges of the side holding
    component ``i`` (resp. ``j``) once the bridge itself is deleted.
    """
    k = len(component_edges)
    total = sum(component_edges) + len(tree_edges)
    adj = [[] for _ in range(k)]
    for b, (i, j) in enumerate(tree_edges):
        adj[i].append((j, b))
        adj[j].append((i, b))
    order, parent = [0], [-1] * k
    seen = [False] * k
    seen[0] = True
    for u in order:
        for w, _ in adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    if len(order) != k or len(tree_edges) != k - 1:
        raise GraphValidationError("bridges between components must form a tree")
    below = list(component_edges)
    for u in reversed(order[1:]):
        below[parent[u]] += below[u] + 1
    out = []
    for i, j in tree_edges:
        if parent[j] == i:
            out.append((total - 1 - below[j], below[j]))
        else:
            out.append((below[i], total - 1 - below[i]))
    return out


@dataclass(frozen=True)
class BridgeWeights:
    """Edge-count weights attached to the bridges of a decomposition.

    ``inner[b] = (W_x, W_y)`` counts the edges on each side of bridge ``b``
    (bridge excluded); ``outer[b] = (m - W_x, m - W_y)``.  ``contacts[i]``
    lists ``(vertex, b)`` for every bridge end in component ``i``, so a vertex
    carrying several bridges appears once per bridge.
    """

    edge_count: int
    inner: tuple
    outer: tuple
    contacts: tuple

    def outer_at(self, d: ChainDecomposition, z: int) -> int:
        """``m - W_z`` for a vertex incident to exactly one bridge."""
        hits = [
            self.outer[b][0 if d.bridges[b].x == z else 1]
            for b in range(len(d.bridges))
            if z in d.bridges[b].pair
        ]
        if len(hits) != 1:
            raise GraphValidationError(f"vertex {z} is incident to {len(hits)} bridges")
        return hits[0]

    def inner_at(self, d: ChainDecomposition, z: int) -> int:
        return self.edge_count - self.outer_at(d, z)

    def contact_vertices(self, i: int) -> set:
        return {z for z, _ in self.contacts[i]}


def bridge_weights(d: ChainDecomposition) -> BridgeWeights:
    m = d.parent.edge_count
    inner = tuple(
        split_edge_counts(d.bridge_components, [c.graph.edge_count for c in d.components])
    )
    outer = tuple((m - a, m - b) for a, b in inner)
    contacts = [[] for _ in range(d.k)]
    for b, br in enumerate(d.bridges):
        for z in br.pair:
            contacts[d.component_of[z]].append((z, b))
    return BridgeWeights(
        edge_count=m,
        inner=inner,
        outer=outer,
        contacts=tuple(tuple(sorted(c)) for c in contacts),
    )
