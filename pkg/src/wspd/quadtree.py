"""Compressed quadtree (2^d-ary) over a point set in R^d, d <= 8."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .metric import PointSet

__all__ = ["QuadNode", "CompressedQuadtree", "build_compressed_quadtree", "DegenerateTreeError"]

MAX_DIM = 8
ROOT_INFLATE = 1e-6


class DegenerateTreeError(ValueError):
    pass


@dataclass(eq=False)
class QuadNode:
    indices: tuple
    lo: np.ndarray
    side: float
    children: list = field(default_factory=list)
    # enclosing ball of the node's points
    center: np.ndarray | None = None
    radius: float = 0.0
    # same centre as a plain tuple, for fast scalar distance tests
    ctuple: tuple = ()

    @property
    def rep(self) -> int:
        return self.indices[0]

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class CompressedQuadtree:
    points: PointSet
    root: QuadNode
    duplicates: list  # groups of indices sharing identical coordinates

    def nodes(self):
        stack = [self.root]
        while stack:
            u = stack.pop()
            yield u
            stack.extend(reversed(u.children))

    def leaves(self):
        return [u for u in self.nodes() if u.is_leaf]

    def depth(self) -> int:
        best = 0
        stack = [(self.root, 0)]
        while stack:
            u, d = stack.pop()
            best = max(best, d)
            stack.extend((c, d + 1) for c in u.children)
        return best


def _ball(c: np.ndarray):
    """Ball centred on the bounding-box centre enclosing all of ``c``."""
    center = (c.min(axis=0) + c.max(axis=0)) / 2
    diff = c - center
    return center, float(np.sqrt(np.sum(diff * diff, axis=1)).max())


def build_compressed_quadtree(ps: PointSet, subset=None) -> CompressedQuadtree:
    """Build the tree over ``subset`` (default: all points).

    Chains of single-child cells are contracted. Exact duplicate points end
    up together in one leaf.
    """
    d = ps.dim
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {d}")
    idx = np.arange(len(ps)) if subset is None else np.unique(np.asarray(subset, dtype=int))
    if idx.size == 0:
        raise ValueError("empty point set")
    coords = ps.coords
    pts = coords[idx]
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    extent = float((hi - lo).max())
    if extent == 0.0 and idx.size > 1:
        raise DegenerateTreeError("all points are identical")
    side = extent * (1.0 + ROOT_INFLATE) if extent > 0 else 1.0
    mid = (lo + hi) / 2
    root_lo = mid - side / 2

    weights = 1 << np.arange(d)
    duplicates = []
    root = QuadNode(tuple(idx.tolist()), root_lo, side)
    stack = [root]
    while stack:
        node = stack.pop()
        members = np.asarray(node.indices)
        c = coords[members]
        node.center, node.radius = _ball(c)
        node.ctuple = tuple(node.center.tolist())
        if members.size == 1:
            continue
        if node.radius == 0.0:
            duplicates.append(node.indices)
            continue
        cell_lo, cell_side = node.lo, node.side
        while True:
            half = cell_side / 2
            cut = cell_lo + half
            if np.any(cut == cell_lo):
                raise DegenerateTreeError(
                    f"cannot separate points {node.indices[:4]}... at floating-point resolution"
                )
            keys = ((c >= cut).astype(np.int64) * weights).sum(axis=1)
            uniq = np.unique(keys)
            if uniq.size > 1:
                break
            # compression: descend into the only nonempty child
            bits = (int(uniq[0]) >> np.arange(d)) & 1
            cell_lo = cell_lo + bits * half
            cell_side = half
        node.lo, node.side = cell_lo, cell_side
        for k in uniq.tolist():
            sel = members[keys == k]
            bits = (k >> np.arange(d)) & 1
            node.children.append(QuadNode(tuple(sel.tolist()), cell_lo + bits * half, half))
        stack.extend(reversed(node.children))
    return CompressedQuadtree(ps, root, duplicates)
