"""Graph representation, basic cycles and boroughs."""

from .core import (
    UNREACHABLE,
    Bicomponent,
    DistanceRow,
    Graph,
    bfs_distances,
    bicomponents,
    build_graph,
    closed_k_neighborhood,
    diameter_of,
)
from .cycles import Cycle, basic_edges, enumerate_basic_cycles
from .boroughs import (
    Borough,
    OutbackReport,
    detect_boroughs,
    edge_removal_diameter_delta,
    outback,
    touch_points,
)

__all__ = [
    "UNREACHABLE",
    "Bicomponent",
    "DistanceRow",
    "Graph",
    "bfs_distances",
    "bicomponents",
    "build_graph",
    "closed_k_neighborhood",
    "diameter_of",
    "Cycle",
    "basic_edges",
    "enumerate_basic_cycles",
    "Borough",
    "OutbackReport",
    "detect_boroughs",
    "edge_removal_diameter_delta",
    "outback",
    "touch_points",
]
