"""WSPD of the shortest-path metric of a weighted unit-distance graph.

Short distances come from a Euclidean 64/eps-WSPD restricted to pairs whose
sides have Euclidean diameter <= 1 (such sides are cliques of the graph).
Long distances come from packings of the graph metric at radii
``r_i / 2`` with ``r_i = 3 * 2**i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .euclid import euclidean_wspd
from .metric import (
    DisconnectedGraphError,
    GraphMetric,
    PointSet,
    UnitDistanceGraph,
    build_unit_distance_graph,
    greedy_packing,
    pairwise_distances,
)
from .optimal import level_pairs
from .pairs import Pair, PairDecomposition

__all__ = ["UdgWspdConfig", "udg_wspd_short", "udg_wspd", "udg_wspd_highdim", "set_diameter"]


@dataclass(frozen=True)
class UdgWspdConfig:
    eps: float
    n: int

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")

    @property
    def short_separation(self) -> float:
        return 64 / self.eps

    @property
    def levels(self) -> list[int]:
        top = 2 + math.ceil(math.log2(max(self.n, 2)))
        # with eps > 2/3 the level-2 band no longer reaches down to 32/eps,
        # where the short regime stops covering; level 1 fills that gap
        first = 1 if self.eps > 2 / 3 else 2
        return list(range(first, top + 1))

    @staticmethod
    def radius(i: int) -> float:
        return 3.0 * 2.0**i

    def band(self, i: int) -> tuple[float, float]:
        r = self.radius(i)
        return 2 * r / self.eps, 16 * r / self.eps


def set_diameter(coords: np.ndarray) -> float:
    """Exact Euclidean diameter of a small point set."""
    if len(coords) < 2:
        return 0.0
    return float(pairwise_distances(coords, coords).max())


def _diameter_at_most_one(coords: np.ndarray, cache: dict, key) -> bool:
    hit = cache.get(key)
    if hit is not None:
        return hit
    if len(coords) < 2:
        ok = True
    else:
        extent = coords.max(axis=0) - coords.min(axis=0)
        if float(np.sqrt(np.sum(extent * extent))) <= 1.0:
            ok = True
        elif float(extent.max()) > 1.0:
            ok = False
        else:
            ok = set_diameter(coords) <= 1.0
    cache[key] = ok
    return ok


def _graph(ps: PointSet, graph: UnitDistanceGraph | None) -> UnitDistanceGraph:
    g = graph if graph is not None else build_unit_distance_graph(ps)
    if not g.connected:
        raise DisconnectedGraphError("unit-distance graph is disconnected")
    return g


def udg_wspd_short(ps: PointSet, eps: float, graph: UnitDistanceGraph | None = None) -> PairDecomposition:
    """Euclidean 64/eps-WSPD pairs whose two sides both have diameter <= 1."""
    cfg = UdgWspdConfig(float(eps), len(ps))
    _graph(ps, graph)
    w = euclidean_wspd(ps, 1.0 / cfg.short_separation)
    c = ps.coords
    cache: dict = {}
    keep = []
    for p in w.pairs:
        if _diameter_at_most_one(c[list(p.a)], cache, p.a) and _diameter_at_most_one(c[list(p.b)], cache, p.b):
            keep.append(Pair(p.a, p.b, p.rep_a, p.rep_b, regime="short"))
    return PairDecomposition(keep, cfg.eps, "graph", {"duplicates": w.meta.get("duplicates", [])})


def udg_wspd(
    ps: PointSet,
    eps: float,
    graph: UnitDistanceGraph | None = None,
    metric: GraphMetric | None = None,
) -> PairDecomposition:
    """1/eps-WSPD of the unit-distance graph metric of planar points."""
    if ps.dim != 2:
        raise ValueError("udg_wspd expects planar points; use udg_wspd_highdim for d > 2")
    return _udg_wspd(ps, eps, graph, metric)


def udg_wspd_highdim(
    ps: PointSet,
    eps: float,
    graph: UnitDistanceGraph | None = None,
    metric: GraphMetric | None = None,
) -> PairDecomposition:
    """Same construction for points in R^d, d > 2."""
    if ps.dim <= 2:
        raise ValueError("udg_wspd_highdim expects d > 2")
    return _udg_wspd(ps, eps, graph, metric)


def _udg_wspd(ps, eps, graph, metric) -> PairDecomposition:
    cfg = UdgWspdConfig(float(eps), len(ps))
    g = _graph(ps, graph)
    m = metric if metric is not None else GraphMetric(g)
    short = udg_wspd_short(ps, cfg.eps, g)
    pairs = list(short.pairs)
    # any vertex's eccentricity is at least half the graph diameter
    diam_bound = 2 * m.eccentricity(0) if len(ps) > 1 else 0.0
    levels = []
    packings = {}
    for i in cfg.levels:
        lo, hi = cfg.band(i)
        if lo > diam_bound:
            continue
        packing = greedy_packing(m, cfg.radius(i) / 2)
        packings[i] = packing
        levels.append(i)
        pairs.extend(level_pairs(m, packing, lo, hi, level=i, regime=f"level-{i}"))
    meta = {
        "levels": levels,
        "packings": packings,
        "short_pairs": len(short),
        "duplicates": short.meta.get("duplicates", []),
    }
    return PairDecomposition(pairs, cfg.eps, "graph", meta)
