"""Well-separated pair decompositions for Euclidean, finite and unit-distance-graph metrics."""

from .curves import (
    PolyCurve,
    bi_shortcut,
    distill,
    first_intersection,
    max_detour_estimate,
    shortcut_detours,
)
from .euclid import bichromatic_wspd, ck_wspd, euclidean_wspd
from .maps import FiniteMap, approx_distortion, approx_lipschitz, check_injective
from .metric import (
    PointSet,
    build_unit_distance_graph,
    euclidean_metric,
    graph_metric,
    greedy_packing,
    voronoi_assign,
)
from .optimal import active_levels, instance_optimal_wspd
from .oracles import validate_wspd
from .pairs import Pair, PairDecomposition
from .quadtree import build_compressed_quadtree
from .udg import udg_wspd, udg_wspd_highdim, udg_wspd_short

__version__ = "0.1.0"

__all__ = [
    "PointSet",
    "PolyCurve",
    "FiniteMap",
    "Pair",
    "PairDecomposition",
    "euclidean_metric",
    "graph_metric",
    "build_unit_distance_graph",
    "greedy_packing",
    "voronoi_assign",
    "build_compressed_quadtree",
    "ck_wspd",
    "euclidean_wspd",
    "bichromatic_wspd",
    "active_levels",
    "instance_optimal_wspd",
    "udg_wspd_short",
    "udg_wspd",
    "udg_wspd_highdim",
    "approx_lipschitz",
    "approx_distortion",
    "check_injective",
    "first_intersection",
    "distill",
    "max_detour_estimate",
    "bi_shortcut",
    "shortcut_detours",
    "validate_wspd",
]
