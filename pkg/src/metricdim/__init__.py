"""Metric dimensions of graphs: exact solver, cactus formulas, block reduction and campaigns."""

from .blocks import compose_generator, cyclomatic_additivity_check, delta3_bound_check, theorem_blocks_check
from .cactus import (
    cactus_profile,
    classify_cycles,
    enumerate_smallest_bbr,
    extremal_classification,
    is_bbr,
    is_cactus,
    nice_bbr,
    structural_dimensions,
)
from .exact import Mode, exact_dimension, is_generator, metric_dimension, undistinguished_pairs
from .generate import GraphFilter, enumerate_graphs, random_min_degree_graph
from .graph import (
    Graph,
    GraphError,
    all_pairs_distances,
    block_decomposition,
    cyclomatic_number,
    encode_graph6,
    parse_graph6,
    thread_profile,
)

__all__ = [
    "Graph", "GraphError", "GraphFilter", "Mode", "all_pairs_distances", "block_decomposition",
    "cactus_profile", "classify_cycles", "compose_generator", "cyclomatic_additivity_check",
    "cyclomatic_number", "delta3_bound_check", "encode_graph6", "enumerate_graphs",
    "enumerate_smallest_bbr", "exact_dimension", "extremal_classification", "is_bbr", "is_cactus",
    "is_generator", "metric_dimension", "nice_bbr", "parse_graph6", "random_min_degree_graph",
    "structural_dimensions", "theorem_blocks_check", "thread_profile", "undistinguished_pairs",
]
__version__ = "0.1.0"
