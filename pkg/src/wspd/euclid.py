"""Euclidean well-separated pair decomposition over a compressed quadtree."""

from __future__ import annotations

import math

import numpy as np

from .metric import PointSet
from .pairs import Pair, PairDecomposition
from .quadtree import CompressedQuadtree, DegenerateTreeError, build_compressed_quadtree

__all__ = ["ck_wspd", "euclidean_wspd", "bichromatic_wspd", "check_eps"]


def check_eps(eps: float, *, closed: bool = True) -> float:
    eps = float(eps)
    ok = 0 < eps <= 1 if closed else 0 < eps < 1
    if not ok:
        interval = "(0, 1]" if closed else "(0, 1)"
        raise ValueError(f"eps must lie in {interval}, got {eps}")
    return eps


def _separated(u, v, eps: float) -> bool:
    gap = math.dist(u.ctuple, v.ctuple) - u.radius - v.radius
    return 2 * max(u.radius, v.radius) <= eps * gap


def ck_wspd(tree: CompressedQuadtree, eps: float) -> PairDecomposition:
    """1/eps-WSPD of the tree's points.

    Separation is certified from bounding-box balls of the nodes, so the true
    set diameters can only be smaller than what the test assumed.
    """
    eps = check_eps(eps)
    pairs = []
    stack = [(tree.root, tree.root)]
    while stack:
        u, v = stack.pop()
        if u is v:
            ch = u.children
            for i in range(len(ch) - 1, -1, -1):
                for j in range(len(ch) - 1, i, -1):
                    stack.append((ch[i], ch[j]))
                if not ch[i].is_leaf:
                    stack.append((ch[i], ch[i]))
            continue
        if _separated(u, v, eps):
            pairs.append(Pair(u.indices, v.indices, u.rep, v.rep))
            continue
        if u.radius < v.radius or (u.radius == v.radius and u.is_leaf):
            u, v = v, u
        if u.is_leaf:
            raise DegenerateTreeError(f"unsplittable pair at points {u.rep} and {v.rep}")
        for c in reversed(u.children):
            stack.append((c, v))
    meta = {"duplicates": [list(g) for g in tree.duplicates]}
    return PairDecomposition(pairs, eps, "euclidean", meta)


def euclidean_wspd(ps: PointSet, eps: float, subset=None) -> PairDecomposition:
    """Quadtree + ck_wspd; an input of only identical points yields no pairs."""
    eps = check_eps(eps)
    try:
        tree = build_compressed_quadtree(ps, subset)
    except DegenerateTreeError as exc:
        if "identical" not in str(exc):
            raise
        idx = list(range(len(ps))) if subset is None else sorted(set(int(i) for i in subset))
        return PairDecomposition([], eps, "euclidean", {"duplicates": [idx]})
    return ck_wspd(tree, eps)


def bichromatic_wspd(ps: PointSet, left, right, eps: float) -> PairDecomposition:
    """Pairs {A, B} with A in ``left`` and B in ``right`` covering left x right.

    Built from the joint WSPD of left+right: pairs not split left-vs-right are
    dropped and the remaining sides intersected with the two colours.
    """
    eps = check_eps(eps)
    left = np.unique(np.asarray(left, dtype=int))
    right = np.unique(np.asarray(right, dtype=int))
    if left.size == 0 or right.size == 0:
        return PairDecomposition([], eps, "euclidean")
    if np.intersect1d(left, right).size:
        raise ValueError("left and right index sets must be disjoint")
    mask = np.zeros(len(ps), dtype=bool)
    mask[left] = True
    is_left = mask.tolist()
    joint = euclidean_wspd(ps, eps, np.concatenate([left, right]))
    out = []
    # sides are short sorted tuples; plain Python beats numpy here
    for p in joint.pairs:
        for s, t in ((p.a, p.b), (p.b, p.a)):
            sl = tuple(i for i in s if is_left[i])
            if not sl:
                continue
            tr = tuple(i for i in t if not is_left[i])
            if tr:
                out.append(Pair(sl, tr, sl[0], tr[0]))
    return PairDecomposition(out, eps, "euclidean", joint.meta)
