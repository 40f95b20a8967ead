"""Radial distribution distance between rooted finite metric measure spaces."""

from .distance import (DISCRETE, EXACT, DistanceResult, all_pairs, d_rd, d_rd_discrete,
                       d_rd_exact, d_rd_multi, top_k)
from .graph import (DisconnectedGraphError, GraphFormatError, WeightedGraph, emit_graph,
                    load_graph, parse_graph, rooted_profile, shortest_paths_from)
from .mmcore import (FiniteMetricSpace, RadialProfile, StepFunction, ValidationError,
                     cumulative_distribution, evaluate, merged_radii)

__all__ = [
    "DISCRETE", "EXACT", "DistanceResult", "all_pairs", "d_rd", "d_rd_discrete", "d_rd_exact",
    "d_rd_multi", "top_k", "DisconnectedGraphError", "GraphFormatError", "WeightedGraph",
    "emit_graph", "load_graph", "parse_graph", "rooted_profile", "shortest_paths_from",
    "FiniteMetricSpace", "RadialProfile", "StepFunction", "ValidationError",
    "cumulative_distribution", "evaluate", "merged_radii",
]
