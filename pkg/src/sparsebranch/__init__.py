"""Sparse tree representations of bipartite and general graphs.

A graph is turned into a bounded-height tree plus vertex membership edges,
from which the original adjacency is read back by a depth-parity rule.
"""

from .branching import Branching, left_branching, right_branching, verify_branching
from .covers import NeighborhoodCover, neighborhood_cover, verify_cover
from .graphs import (
    BipartiteGraph,
    Graph,
    ParseError,
    VertexProjection,
    bipartite_complement,
    bipartize,
    degeneracy,
    double,
    format_edge_list,
    induced_subgraph,
    load_edge_list,
    read_edge_list,
    remove_isolated,
    twin_classes,
)
from .partition import (
    PartitionResult,
    PreconditionError,
    compute_partition,
    leader_coloring,
    near_twin_graph,
    part_adjacency_graph,
    quotient_graph,
    static_partition,
    verify_partition,
)
from .reconstruct import adjacent, reconstruct, verify_roundtrip
from .sparsifier import SparseRep, build_sparse_rep, build_tree, format_sparse_rep, load_sparse_rep, stats

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "Branching",
    "Graph",
    "NeighborhoodCover",
    "ParseError",
    "PartitionResult",
    "PreconditionError",
    "SparseRep",
    "VertexProjection",
    "adjacent",
    "bipartite_complement",
    "bipartize",
    "build_sparse_rep",
    "build_tree",
    "compute_partition",
    "degeneracy",
    "double",
    "format_edge_list",
    "format_sparse_rep",
    "induced_subgraph",
    "leader_coloring",
    "left_branching",
    "load_edge_list",
    "load_sparse_rep",
    "near_twin_graph",
    "neighborhood_cover",
    "part_adjacency_graph",
    "quotient_graph",
    "read_edge_list",
    "reconstruct",
    "remove_isolated",
    "right_branching",
    "static_partition",
    "stats",
    "twin_classes",
    "verify_branching",
    "verify_cover",
    "verify_partition",
    "verify_roundtrip",
]
