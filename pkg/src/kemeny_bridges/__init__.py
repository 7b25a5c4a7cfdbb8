"""Kemeny's constant of graphs with bridges.

Three independent routes to the same number: dense linear algebra on the whole
graph (:func:`kemeny_direct`), divide and conquer over the pieces left after
deleting bridges (:func:`kemeny_chain`, :func:`kemeny_chain_mfpt`), and brute
force spanning-forest counting (:func:`kemeny_via_forests`).  Every routine
works in floating point or, with ``exact=True``, in exact rationals.
"""
from . import fixtures, generators
from .bridge_formula import (
    KemenyBreakdown,
    MomentTerms,
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
from .errors import (
    DisconnectedGraphError,
    GraphParseError,
    GraphValidationError,
    InconsistentResultError,
    KemenyError,
    NotABridgeError,
    OracleLimitError,
    SearchCapError,
)
from .forests import (
    enumerate_spanning_trees,
    forest_count_matrix,
    kemeny_via_forests,
    two_tree_forest_count,
)
from .graph import (
    Bridge,
    BridgeWeights,
    ChainDecomposition,
    Graph,
    PairPath,
    bridge_weights,
    decompose,
    find_bridges,
    format_graph,
    pair_path,
    parse_graph,
    quotient_tree_distance,
)
from .optimize import (
    PlacementResult,
    TreeCost,
    min_accessibility_vertices,
    optimal_chain_placement,
    optimal_identical_chain,
    optimal_single_bridge,
    tree_centroids,
    tree_cost,
)
from .walk import (
    WalkSummary,
    accessibility_vector,
    kemeny_direct,
    mfpt_matrix,
    moment,
    resistance_matrix,
    spanning_tree_count,
    stationary_distribution,
    summarize,
)

__version__ = "0.1.0"
