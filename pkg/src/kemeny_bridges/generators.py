"""Graph families, chain construction and random instances."""
from __future__ import annotations

import heapq
import itertools
from typing import Sequence

import numpy as np

from .errors import GraphValidationError
from .graph import Graph

__all__ = [
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "join_graphs",
    "chain_of_cliques",
    "prufer_decode",
    "all_labelled_trees",
    "random_tree",
    "random_connected_graph",
    "random_chain",
]


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphValidationError("a simple cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices with vertex 0 as the centre."""
    return Graph(n, tuple((0, i) for i in range(1, n)))


def join_graphs(graphs: Sequence[Graph], links: Sequence, labels=None) -> Graph:
    """Disjoint union of ``graphs`` plus the ``links`` between them.

    Each link is ``((i, u), (j, v))``: local vertex ``u`` of ``graphs[i]`` to
    local vertex ``v`` of ``graphs[j]``.  Vertices are numbered graph by graph;
    default labels are ``"<i>.<label>"``.
    """
    offsets = np.cumsum([0] + [g.vertex_count for g in graphs])
    edges = [(u + offsets[i], v + offsets[i]) for i, g in enumerate(graphs) for u, v in g.edges]
    for (i, u), (j, v) in links:
        graphs[i].check_vertex(u)
        graphs[j].check_vertex(v)
        edges.append((offsets[i] + u, offsets[j] + v))
    if labels is None:
        labels = [f"{i}.{s}" for i, g in enumerate(graphs) for s in g.labels]
    return Graph(int(offsets[-1]), tuple(edges), tuple(labels))


def chain_of_cliques(k: int, size: int) -> Graph:
    """``k`` copies of ``K_size`` along a path.

    Copy ``i`` receives its incoming bridge at local vertex 0 and sends the
    outgoing one from local vertex 1 (vertex 0 when ``size == 1``).
    """
    out_vertex = 1 if size > 1 else 0
    links = [((i, out_vertex), (i + 1, 0)) for i in range(k - 1)]
    return join_graphs([complete_graph(size)] * k, links)


def prufer_decode(seq: Sequence[int], n: int | None = None) -> Graph:
    """Labelled tree on ``len(seq) + 2`` vertices encoded by a Prufer sequence."""
    n = len(seq) + 2 if n is None else n
    degree = [1] * n
    for a in seq:
        degree[a] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for a in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, a))
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(leaves, a)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(n, tuple(edges))


def all_labelled_trees(n: int):
    """Every labelled tree on ``n >= 2`` vertices (``n^(n-2)`` of them)."""
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_decode(seq, n)


def random_tree(rng: np.random.Generator, n: int) -> Graph:
    if n == 1:
        return Graph(1)
    return prufer_decode([int(a) for a in rng.integers(0, n, size=n - 2)], n)


def random_connected_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """Random spanning tree plus each remaining pair independently with probability ``p``."""
    tree = random_tree(rng, n)
    edges = set(tree.edges)
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return Graph(n, tuple(edges))


def random_chain(
    rng: np.random.Generator,
    k: int,
    sizes: Sequence[int] | tuple = (1, 6),
    p: float = 0.5,
) -> Graph:
    """Random connected components joined by bridges along a random tree.

    Component sizes are drawn uniformly from ``sizes[0] .. sizes[1]``; bridge
    endpoints are uniform within each component.
    """
    parts = [random_connected_graph(rng, int(rng.integers(sizes[0], sizes[1] + 1)), p) for _ in range(k)]
    tree = random_tree(rng, k)
    links = [
        ((i, int(rng.integers(parts[i].vertex_count))), (j, int(rng.integers(parts[j].vertex_count))))
        for i, j in tree.edges
    ]
    return join_graphs(parts, links)
