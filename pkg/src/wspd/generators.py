"""Random instance generators used by the CLI and the test-suite."""

from __future__ import annotations

import numpy as np

from .metric import PointSet

__all__ = ["uniform_square", "connected_udg", "serpentine_chain", "clustered", "random_curve", "GENERATORS"]


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def uniform_square(n: int, seed=None, dim: int = 2, side: float = 1.0) -> PointSet:
    return PointSet(_rng(seed).random((n, dim)) * side)


def connected_udg(n: int, seed=None, dim: int = 2, density: float = 2.0) -> PointSet:
    """Uniform points in a box of ~n/density volume, kept only if within 1 of an earlier point.

    Every accepted point attaches to the graph, so the unit-distance graph
    is connected by construction.
    """
    rng = _rng(seed)
    side = (n / density) ** (1.0 / dim)
    pts = np.empty((n, dim))
    pts[0] = rng.random(dim) * side
    k = 1
    while k < n:
        batch = rng.random((256, dim)) * side
        for q in batch:
            diff = pts[:k] - q
            d2 = np.sum(diff * diff, axis=1)
            if d2.min() <= 1.0 and d2.min() > 0:
                pts[k] = q
                k += 1
                if k == n:
                    break
    return PointSet(pts)


def serpentine_chain(n: int, seed=None, step: float = 0.9, amplitude: float = 6.0, wavelength: float = 40.0, jitter: float = 0.0) -> PointSet:
    """Points walked along a sine wave with arc-length step ``step`` (< 1)."""
    rng = _rng(seed)
    pts = np.zeros((n, 2))
    x = 0.0
    for i in range(1, n):
        # advance x until the chord to the previous point is ~step long
        lo, hi = x, x + step
        prev = pts[i - 1]
        for _ in range(60):
            mid = (lo + hi) / 2
            y = amplitude * np.sin(2 * np.pi * mid / wavelength)
            if np.hypot(mid - prev[0], y - prev[1]) < step:
                lo = mid
            else:
                hi = mid
        x = lo
        pts[i] = (x, amplitude * np.sin(2 * np.pi * x / wavelength))
    if jitter:
        pts[1:] += rng.uniform(-jitter, jitter, size=(n - 1, 2))
    return PointSet(pts)


def clustered(n: int, seed=None, dim: int = 2, clusters: int = 5, spread: float = 0.02) -> PointSet:
    rng = _rng(seed)
    centers = rng.random((clusters, dim))
    which = rng.integers(0, clusters, size=n)
    return PointSet(centers[which] + rng.normal(scale=spread, size=(n, dim)))


def random_curve(n: int, seed=None, dim: int = 2) -> np.ndarray:
    """Vertices of a random polygonal curve (uniform points in the unit box)."""
    return _rng(seed).random((n, dim))


GENERATORS = {
    "uniform": uniform_square,
    "udg": connected_udg,
    "serpentine": serpentine_chain,
    "clustered": clustered,
}
