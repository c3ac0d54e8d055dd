"""Graph planar algebra model: exact Wick evaluation and block random matrices."""
from .graph_model import (
    BipartiteGraph,
    LoopWord,
    MCConfig,
    alternating_word,
    lf_parameter,
    loop_vs_diagram,
    mc_estimate,
    path_graph,
    single_edge,
    wick_expectation,
    wick_moments,
)

__all__ = [
    "BipartiteGraph",
    "LoopWord",
    "MCConfig",
    "alternating_word",
    "lf_parameter",
    "loop_vs_diagram",
    "mc_estimate",
    "path_graph",
    "single_edge",
    "wick_expectation",
    "wick_moments",
]
