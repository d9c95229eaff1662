"""Exact testing for drawings with at most one crossing per edge."""

from .embedding import (
    AdjacentPairError,
    EdgeCrossedTwiceError,
    EmbeddingParseError,
    InvalidBlockEmbeddingError,
    NotPlanarRotationError,
    OnePlanarEmbedding,
    Planarization,
    count_crossings,
    merge_blocks,
    parse_embedding,
    planarize,
    realize,
    serialize_embedding,
    validate,
)
from .graph import (
    Block,
    BlockDecomposition,
    Graph,
    GraphError,
    ParallelEdgeError,
    SelfLoopError,
    VertexOutOfRangeError,
    biconnected_components,
    build_graph,
)
from .pairs import (
    PairUniverse,
    PartialSolution,
    build_restricted_universe,
    build_universe,
    crossed_edges,
    crossing_counts,
    saturated_edges,
)
from .planarity import (
    InconsistentRotationError,
    PlanarityVerdict,
    RotationSystem,
    euler_check,
    test_planarity,
)
from .search import (
    BlockResult,
    CutReason,
    NodeKind,
    NodeVerdict,
    SearchConfig,
    SearchStats,
    SolutionKind,
    UniverseTooLargeError,
    Verdict,
    backtrack,
    find_kite_edges,
    find_skew_set,
    oracle_is_one_planar,
    test_block,
    verify_node,
)
from .cli import InstanceRecord, ParseError, bench, parse_graph_file, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "AdjacentPairError",
    "Block",
    "BlockDecomposition",
    "BlockResult",
    "CutReason",
    "EdgeCrossedTwiceError",
    "EmbeddingParseError",
    "Graph",
    "GraphError",
    "InconsistentRotationError",
    "InstanceRecord",
    "InvalidBlockEmbeddingError",
    "NodeKind",
    "NodeVerdict",
    "NotPlanarRotationError",
    "OnePlanarEmbedding",
    "PairUniverse",
    "ParallelEdgeError",
    "ParseError",
    "PartialSolution",
    "Planarization",
    "PlanarityVerdict",
    "RotationSystem",
    "SearchConfig",
    "SearchStats",
    "SelfLoopError",
    "SolutionKind",
    "UniverseTooLargeError",
    "Verdict",
    "VertexOutOfRangeError",
    "backtrack",
    "bench",
    "biconnected_components",
    "build_graph",
    "build_restricted_universe",
    "build_universe",
    "count_crossings",
    "crossed_edges",
    "crossing_counts",
    "euler_check",
    "find_kite_edges",
    "find_skew_set",
    "merge_blocks",
    "oracle_is_one_planar",
    "parse_embedding",
    "parse_graph_file",
    "planarize",
    "realize",
    "run_pipeline",
    "saturated_edges",
    "serialize_embedding",
    "test_block",
    "test_planarity",
    "validate",
    "verify_node",
]
