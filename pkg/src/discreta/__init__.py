"""Continuity structure on finite metric spaces, with two applications:
Jordan decompositions of circuits on the integer grid, and certified
lower bounds on the lp embedding distortion.
"""

from .continuity import (
    ADJACENCY_RTOL,
    TRIANGLE_RTOL,
    ContinuityGraph,
    ContinuousPath,
    MetricSpace,
    all_geodesics,
    build_continuity_graph,
    normalize,
    shortest_continuous_path,
    validate_distance_matrix,
)
from .distortion import (
    ComponentBound,
    CoveringFamily,
    DistortionBoundReport,
    Embedding,
    MetricEdgeSet,
    displacement,
    distortion_bound,
    embedding_distortion,
    graph_deviation,
    is_graph_like,
    metric_edge_set,
)
from .estimators import ContinuityComponents, DistortionLowerBound
from .jordan import (
    CircuitValidation,
    GridCircuit,
    JordanDecomposition,
    RegionSplit,
    boundary_closure,
    db1,
    db2,
    flood_regions,
    jordan_decompose,
    render_svg,
    validate_circuit,
)
from .oracles import (
    DEFAULT_BUDGET,
    OracleBudget,
    brute_components,
    brute_displacement,
    brute_edge_set,
    brute_geodesics,
    brute_rayleigh,
    brute_shortest_length,
)
from .spectral import SpectralGapResult, optimal_shift, rayleigh_quotient, spectral_gap

__version__ = "0.1.0"

__all__ = [
    "ADJACENCY_RTOL",
    "TRIANGLE_RTOL",
    "ComponentBound",
    "ContinuityComponents",
    "ContinuityGraph",
    "ContinuousPath",
    "CoveringFamily",
    "CircuitValidation",
    "DEFAULT_BUDGET",
    "DistortionBoundReport",
    "DistortionLowerBound",
    "Embedding",
    "GridCircuit",
    "JordanDecomposition",
    "MetricEdgeSet",
    "MetricSpace",
    "OracleBudget",
    "RegionSplit",
    "SpectralGapResult",
    "all_geodesics",
    "boundary_closure",
    "brute_components",
    "brute_displacement",
    "brute_edge_set",
    "brute_geodesics",
    "brute_rayleigh",
    "brute_shortest_length",
    "build_continuity_graph",
    "db1",
    "db2",
    "displacement",
    "distortion_bound",
    "embedding_distortion",
    "flood_regions",
    "graph_deviation",
    "is_graph_like",
    "jordan_decompose",
    "metric_edge_set",
    "normalize",
    "optimal_shift",
    "rayleigh_quotient",
    "render_svg",
    "shortest_continuous_path",
    "spectral_gap",
    "validate_circuit",
    "validate_distance_matrix",
]
