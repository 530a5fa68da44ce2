"""Packing-based WSPD for an arbitrary finite metric.

At every active scale ``r = 2**i`` the point set is reduced to an
``r/2``-packing; pairs of picks whose distance falls in the band
``[2r/eps, 16r/eps]`` emit the pair of their Voronoi cells.
"""

from __future__ import annotations

import math

import numpy as np

from .metric import FiniteMetric, Packing, greedy_packing
from .pairs import Pair, PairDecomposition

__all__ = ["active_levels", "level_radius", "level_pairs", "instance_optimal_wspd"]


def _check(eps: float) -> float:
    eps = float(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return eps


def level_radius(i: int) -> float:
    return math.ldexp(1.0, i)


def _upper_distances(m: FiniteMetric) -> np.ndarray:
    d = m.matrix()
    iu = np.triu_indices(m.n, 1)
    return d[iu]


def levels_for_distance(d: float, eps: float) -> list[int]:
    """All integers i with 4 * 2**i / eps <= d <= 8 * 2**i / eps."""
    if d <= 0:
        return []
    guess = math.floor(math.log2(d * eps / 4))
    return [i for i in (guess - 1, guess, guess + 1) if 4 * level_radius(i) / eps <= d <= 8 * level_radius(i) / eps]


def active_levels(m: FiniteMetric, eps: float) -> list[int]:
    """Sorted levels i such that some pair distance lies in [4*2**i/eps, 8*2**i/eps]."""
    eps = _check(eps)
    if m.n < 2:
        raise ValueError("need at least two points")
    d = _upper_distances(m)
    d = np.unique(d[d > 0])
    if d.size == 0:
        return []
    guess = np.floor(np.log2(d * eps / 4)).astype(int)
    out = set()
    for g in np.unique(guess).tolist():
        for i in (g - 1, g, g + 1):
            lo = 4 * level_radius(i) / eps
            hi = 8 * level_radius(i) / eps
            k = np.searchsorted(d, lo, side="left")
            if k < d.size and d[k] <= hi:
                out.add(i)
    return sorted(out)


def level_pairs(
    m: FiniteMetric, packing: Packing, lo: float, hi: float, *, level: int | None = None, regime: str | None = None
) -> list[Pair]:
    """Voronoi-cell pairs of picks at distance within the closed band [lo, hi]."""
    picks = np.asarray(packing.picks, dtype=int)
    if picks.size < 2:
        return []
    cells = packing.cells()
    d = m.submatrix(picks, picks)
    ii, jj = np.nonzero(np.triu((d >= lo) & (d <= hi), 1))
    out = []
    for a, b in zip(picks[ii].tolist(), picks[jj].tolist()):
        out.append(Pair(cells[a], cells[b], a, b, level, regime))
    return out


def instance_optimal_wspd(m: FiniteMetric, eps: float) -> PairDecomposition:
    """Union over active levels of the Voronoi-cell pairs at that level."""
    eps = _check(eps)
    levels = active_levels(m, eps)
    pairs = []
    packings = {}
    for i in levels:
        r = level_radius(i)
        packing = greedy_packing(m, r / 2)
        packings[i] = packing
        pairs.extend(level_pairs(m, packing, 2 * r / eps, 16 * r / eps, level=i))
    return PairDecomposition(pairs, eps, "general", {"levels": levels, "packings": packings})
