"""WSPD-based estimates of the dilation and distortion of a finite map."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .euclid import euclidean_wspd
from .metric import FiniteMetric, PointSet

__all__ = [
    "FiniteMap",
    "DuplicatePointsError",
    "LipschitzEstimate",
    "DistortionEstimate",
    "find_duplicate",
    "check_injective",
    "approx_lipschitz",
    "approx_distortion",
]


class DuplicatePointsError(ValueError):
    def __init__(self, i: int, j: int, side: str = "domain"):
        super().__init__(f"{side} points {i} and {j} coincide; ratio undefined")
        self.pair = (i, j)


def find_duplicate(coords: np.ndarray) -> tuple[int, int] | None:
    """First (i, j), i < j, with identical coordinates (-0.0 counts as 0.0)."""
    canon = np.ascontiguousarray(np.asarray(coords, dtype=float) + 0.0)
    seen: dict[bytes, int] = {}
    for j, row in enumerate(canon):
        key = row.tobytes()
        i = seen.setdefault(key, j)
        if i != j:
            return (i, j)
    return None


@dataclass(frozen=True)
class FiniteMap:
    """Point i of ``domain`` maps to point i of ``image``."""

    domain: PointSet
    image: PointSet

    def __post_init__(self):
        if len(self.domain) != len(self.image):
            raise ValueError(
                f"domain has {len(self.domain)} points but image has {len(self.image)}"
            )

    def __len__(self) -> int:
        return len(self.domain)

    @property
    def injective(self) -> bool:
        return find_duplicate(self.image.coords) is None

    def inverse(self) -> "FiniteMap":
        return FiniteMap(self.image, self.domain)


def check_injective(fmap: FiniteMap) -> tuple[bool, tuple[int, int] | None]:
    dup = find_duplicate(fmap.image.coords)
    return dup is None, dup


@dataclass(frozen=True)
class LipschitzEstimate:
    lower: float  # (1 - eps) L <= lower <= L
    upper: float  # L <= upper <= (1 + eps) L
    witness: tuple[int, int]
    pairs: int


@dataclass(frozen=True)
class DistortionEstimate:
    value: float
    forward: LipschitzEstimate | None = None
    backward: LipschitzEstimate | None = None
    collision: tuple[int, int] | None = None


def approx_lipschitz(
    fmap: FiniteMap, eps: float, image_metric: FiniteMetric | None = None
) -> LipschitzEstimate:
    """Approximate Lip(f) from the representatives of a domain WSPD.

    The WSPD is built with eps' = eps / (1 + eps) and separation 8/eps', so
    that one scan yields both ``lower`` in [(1-eps)L, L] and
    ``upper = lower * (1 + eps)`` in [L, (1+eps)L].
    """
    eps = float(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    n = len(fmap)
    if n < 2:
        raise ValueError("need at least two points")
    dup = find_duplicate(fmap.domain.coords)
    if dup is not None:
        raise DuplicatePointsError(*dup)
    inner = eps / (1 + eps)
    w = euclidean_wspd(fmap.domain, inner / 8)
    ra = np.fromiter((p.rep_a for p in w.pairs), dtype=int, count=len(w))
    rb = np.fromiter((p.rep_b for p in w.pairs), dtype=int, count=len(w))
    dc = fmap.domain.coords
    diff = dc[ra] - dc[rb]
    den = np.sqrt(np.sum(diff * diff, axis=1))
    if image_metric is None:
        ic = fmap.image.coords
        diff = ic[ra] - ic[rb]
        num = np.sqrt(np.sum(diff * diff, axis=1))
    else:
        num = np.array([image_metric.distance(int(a), int(b)) for a, b in zip(ra, rb)])
    ratio = num / den
    k = int(np.argmax(ratio))
    lower = float(ratio[k])
    a, b = int(ra[k]), int(rb[k])
    return LipschitzEstimate(lower, lower * (1 + eps), (min(a, b), max(a, b)), len(w))


def approx_distortion(fmap: FiniteMap, eps: float) -> DistortionEstimate:
    """distortion(f) <= value <= (1 + eps) distortion(f); inf if f collapses points.

    Each direction is over-estimated within a factor (1 + eps/3); the product
    then stays below (1 + eps) for eps <= 1.
    """
    eps = float(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    for coords in (fmap.image.coords, fmap.domain.coords):
        dup = find_duplicate(coords)
        if dup is not None:
            return DistortionEstimate(math.inf, collision=dup)
    fwd = approx_lipschitz(fmap, eps / 3)
    bwd = approx_lipschitz(fmap.inverse(), eps / 3)
    return DistortionEstimate(fwd.upper * bwd.upper, fwd, bwd)

