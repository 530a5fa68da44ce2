"""Polygonal curves: simple-subcurve extraction and detour shortcutting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .euclid import bichromatic_wspd
from .maps import FiniteMap, approx_lipschitz, find_duplicate
from .metric import PointSet, pairwise_distances

__all__ = [
    "TOL",
    "PolyCurve",
    "CurvePoint",
    "DegenerateCurveError",
    "NaiveSegmentIndex",
    "GridSegmentIndex",
    "segment_hits",
    "first_intersection",
    "distill",
    "max_detour_estimate",
    "bi_shortcut",
    "Shortcut",
    "ShortcutResult",
    "shortcut_detours",
]

TOL = 1e-9


class DegenerateCurveError(ValueError):
    pass


@dataclass(frozen=True)
class PolyCurve:
    vertices: np.ndarray
    prefix_len: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2 or len(v) < 2:
            raise ValueError("a curve needs at least two vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("all coordinates must be finite")
        diff = np.diff(v, axis=0)
        seg = np.sqrt(np.sum(diff * diff, axis=1))
        bad = np.flatnonzero(seg == 0)
        if bad.size:
            raise DegenerateCurveError(f"zero-length edge between vertices {bad[0]} and {bad[0] + 1}")
        v.setflags(write=False)
        pre = np.concatenate([[0.0], np.cumsum(seg)])
        pre.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "prefix_len", pre)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> int:
        return len(self.vertices) - 1

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def length(self) -> float:
        return float(self.prefix_len[-1])

    def arc(self, i: int, j: int) -> float:
        return float(abs(self.prefix_len[j] - self.prefix_len[i]))

    def point(self, edge: int, t: float) -> np.ndarray:
        a, b = self.vertices[edge], self.vertices[edge + 1]
        return (1 - t) * a + t * b


@dataclass(frozen=True)
class CurvePoint:
    edge: int
    t: float
    coords: tuple

    def order_key(self) -> tuple:
        return (self.edge, self.t)


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def segment_hits(p0, p1, q0, q1):
    """Intersections of segment p0p1 with each segment q0[k]q1[k] (planar).

    Returns ``(hit, t, u)``: the first contact along p0p1 at parameter ``t``,
    located at parameter ``u`` on the other segment. Touching counts; a
    collinear overlap reports its point nearest to p0.
    """
    r = p1 - p0
    s = q1 - q0
    qp = q0 - p0
    rr = float(r @ r)
    ss = np.sum(s * s, axis=1)
    denom = _cross(r, s)
    scale = np.sqrt(rr * ss)
    nonpar = np.abs(denom) > TOL * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(nonpar, _cross(qp, s) / denom, np.nan)
        u = np.where(nonpar, _cross(qp, r) / denom, np.nan)
    hit = nonpar & (t >= -TOL) & (t <= 1 + TOL) & (u >= -TOL) & (u <= 1 + TOL)

    par = ~nonpar
    if par.any():
        length = np.maximum(np.sqrt(rr), np.sqrt(ss))
        off = np.abs(_cross(qp, r)) / np.sqrt(rr)
        col = par & (off <= TOL * np.maximum(length, 1.0))
        if col.any():
            t0 = (qp @ r) / rr
            t1 = ((q1 - p0) @ r) / rr
            lo = np.maximum(0.0, np.minimum(t0, t1))
            hi = np.minimum(1.0, np.maximum(t0, t1))
            ov = col & (lo <= hi + TOL)
            if ov.any():
                tt = np.clip(lo, 0.0, 1.0)
                pt = p0 + tt[:, None] * r
                with np.errstate(divide="ignore", invalid="ignore"):
                    uu = np.sum((pt - q0) * s, axis=1) / ss
                t = np.where(ov, tt, t)
                u = np.where(ov, uu, u)
                hit = hit | ov
    return hit, np.clip(t, 0.0, 1.0), np.clip(u, 0.0, 1.0)


class NaiveSegmentIndex:
    """Checks a query segment against every edge of the indexed curve."""

    def __init__(self, vertices: np.ndarray):
        self.q0 = vertices[:-1]
        self.q1 = vertices[1:]

    def candidates(self, p0, p1) -> np.ndarray | None:
        return None

    def query(self, p0, p1):
        """(edge indices, t, u) of all contacts of p0p1 with the curve."""
        cand = self.candidates(p0, p1)
        if cand is None:
            hit, t, u = segment_hits(p0, p1, self.q0, self.q1)
            idx = np.flatnonzero(hit)
            return idx, t[idx], u[idx]
        if cand.size == 0:
            return cand, cand.astype(float), cand.astype(float)
        hit, t, u = segment_hits(p0, p1, self.q0[cand], self.q1[cand])
        return cand[hit], t[hit], u[hit]


class GridSegmentIndex(NaiveSegmentIndex):
    """Uniform grid over the curve's bounding box; edges bucketed by bbox."""

    def __init__(self, vertices: np.ndarray, cells_per_edge: float = 1.0):
        super().__init__(vertices)
        m = len(self.q0)
        self.lo = vertices.min(axis=0)
        ext = vertices.max(axis=0) - self.lo
        side = float(max(ext.max(), TOL))
        k = max(1, int(math.ceil(math.sqrt(m * cells_per_edge))))
        self.h = side / k
        self.k = k
        self.buckets: dict[tuple, list] = {}
        blo = np.minimum(self.q0, self.q1)
        bhi = np.maximum(self.q0, self.q1)
        clo = self._cell(blo)
        chi = self._cell(bhi)
        for e in range(m):
            for cx in range(clo[e, 0], chi[e, 0] + 1):
                for cy in range(clo[e, 1], chi[e, 1] + 1):
                    self.buckets.setdefault((cx, cy), []).append(e)

    def _cell(self, pts):
        c = np.floor((np.atleast_2d(pts) - self.lo) / self.h).astype(int)
        return np.clip(c, 0, self.k - 1)

    def candidates(self, p0, p1):
        # widen by the tolerance so touching contacts are not lost at cell borders
        pad = TOL * max(1.0, self.h)
        lo = self._cell(np.minimum(p0, p1) - pad)[0]
        hi = self._cell(np.maximum(p0, p1) + pad)[0]
        found: set = set()
        for cx in range(lo[0], hi[0] + 1):
            for cy in range(lo[1], hi[1] + 1):
                found.update(self.buckets.get((cx, cy), ()))
        return np.array(sorted(found), dtype=int)


def _first_contact(a_vertices, index):
    for e in range(len(a_vertices) - 1):
        idx, t, u = index.query(a_vertices[e], a_vertices[e + 1])
        if idx.size:
            best = np.lexsort((u, idx, t))[0]
            return e, float(t[best]), int(idx[best]), float(u[best])
    return None


def first_intersection(sa: PolyCurve, sb: PolyCurve, index=NaiveSegmentIndex):
    """First point of ``sa`` (in its own order) that lies on ``sb``.

    ``sa`` must end where ``sb`` starts, so a contact always exists.
    Returns the point located on both curves as ``(CurvePoint, CurvePoint)``.
    """
    if sa.dim != 2 or sb.dim != 2:
        raise ValueError("first_intersection works on planar curves")
    if not np.array_equal(sa.vertices[-1], sb.vertices[0]):
        raise ValueError("the first curve must end at the start of the second")
    hit = _first_contact(sa.vertices, index(sb.vertices))
    if hit is None:
        raise DegenerateCurveError("shared endpoint was not detected as an intersection")
    e, t, f, u = hit
    p = tuple(sa.point(e, t).tolist())
    return CurvePoint(e, t, p), CurvePoint(f, u, tuple(sb.point(f, u).tolist()))


def _merge(a: np.ndarray, b: np.ndarray, index) -> np.ndarray:
    # a one-vertex piece is a closed loop already reduced to its base point
    if len(a) == 1:
        return b
    if len(b) == 1:
        return a
    hit = _first_contact(a, index(b))
    if hit is None:
        raise DegenerateCurveError("shared endpoint was not detected as an intersection")
    e, t, f, u = hit
    # snap to an existing vertex whenever the contact sits on one
    if u <= TOL:
        p = b[f]
    elif u >= 1 - TOL:
        p = b[f + 1]
    elif t <= TOL:
        p = a[e]
    elif t >= 1 - TOL:
        p = a[e + 1]
    else:
        p = a[e] + t * (a[e + 1] - a[e])
    out = np.vstack([a[: e + 1], p[None, :], b[f + 1 :]])
    keep = np.ones(len(out), dtype=bool)
    keep[1:] = np.any(out[1:] != out[:-1], axis=1)
    # a single vertex left means this piece closes on itself
    return out[keep]


def _folds_back(v: np.ndarray) -> bool:
    r = v[1] - v[0]
    s = v[2] - v[1]
    scale = math.sqrt(float(r @ r) * float(s @ s))
    return abs(float(_cross(r, s))) <= TOL * scale and float(r @ s) < 0


def _distill(v: np.ndarray, index) -> np.ndarray:
    m = len(v) - 1
    if m <= 1 or (m == 2 and not _folds_back(v)):
        return v
    h = (m + 1) // 2
    a = _distill(v[: h + 1], index)
    b = _distill(v[h:], index)
    return _merge(a, b, index)


def distill(curve: PolyCurve, index=NaiveSegmentIndex) -> PolyCurve:
    """Simple subcurve of a planar curve with the same endpoints.

    Split at the median vertex, untangle both halves recursively, then cut
    the first half at its first contact with the second half.
    """
    if curve.dim != 2:
        raise ValueError("distill works on planar curves")
    v = curve.vertices
    if np.array_equal(v[0], v[-1]):
        raise DegenerateCurveError("closed curve: endpoints coincide")
    return PolyCurve(_distill(np.array(v), index))


def max_detour_estimate(curve: PolyCurve, eps: float) -> float:
    """(1 - eps)-approximation of the maximum vertex-to-vertex detour.

    Dilation of the map sending each vertex to its arc-length position.
    """
    if find_duplicate(curve.vertices) is not None:
        return math.inf
    fmap = FiniteMap(PointSet(curve.vertices), PointSet(curve.prefix_len[:, None]))
    return approx_lipschitz(fmap, eps).lower


def _bbox_gap(lo_a, hi_a, lo_b, hi_b) -> np.ndarray:
    g = np.maximum(0.0, np.maximum(lo_b - hi_a, lo_a - hi_b))
    return np.sqrt(np.sum(g * g, axis=-1))


def bi_shortcut(curve: PolyCurve, alpha: float, eps: float, split: int | None = None):
    """Shortcut ``(j, k)`` across the split with the largest possible ``j``.

    ``j < split <= k`` and ``p_j p_k`` is a >= (1-eps)alpha detour; no later
    start vertex in the first part has one. ``None`` means no crossing pair
    reaches (1-eps)alpha, hence no crossing alpha-detour either.
    """
    if alpha <= 1:
        raise ValueError("alpha must exceed 1")
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    v = curve.vertices
    n = len(v)
    h = n // 2 if split is None else int(split)
    if h < 1 or h >= n:
        return None
    thr = (1 - eps) * alpha
    pre = curve.prefix_len
    w = bichromatic_wspd(PointSet(v), np.arange(h), np.arange(h, n), eps / 8)

    # a pair can only hide a qualifying detour if its most optimistic
    # dilation (longest arc over the bbox gap) reaches the threshold
    if not w.pairs:
        return None
    boxes: dict = {}

    def box(side):
        hit = boxes.get(side)
        if hit is None:
            pts = v[list(side)]
            hit = boxes[side] = (pts.min(0), pts.max(0))
        return hit

    ba = [box(p.a) for p in w.pairs]
    bb = [box(p.b) for p in w.pairs]
    gap = _bbox_gap(
        np.array([x[0] for x in ba]), np.array([x[1] for x in ba]),
        np.array([x[0] for x in bb]), np.array([x[1] for x in bb]),
    )
    arc = pre[[p.b[-1] for p in w.pairs]] - pre[[p.a[0] for p in w.pairs]]
    keep = np.flatnonzero((gap == 0.0) | (arc >= thr * gap))
    cand = [(w.pairs[i].a[-1], np.asarray(w.pairs[i].a), np.asarray(w.pairs[i].b)) for i in keep.tolist()]
    cand.sort(key=lambda c: -c[0])

    best = -1
    for top, a, b in cand:
        if top <= best:
            break
        vb = v[b]
        for s in a[::-1]:
            if s <= best:
                break
            diff = vb - v[s]
            dist = np.sqrt(np.sum(diff * diff, axis=1))
            if np.any(pre[b] - pre[s] >= thr * dist):
                best = int(s)
                break
    if best < 0:
        return None
    right = np.arange(h, n)
    diff = v[right] - v[best]
    dist = np.sqrt(np.sum(diff * diff, axis=1))
    ok = right[pre[right] - pre[best] >= thr * dist]
    return best, int(ok[-1])


@dataclass(frozen=True)
class Shortcut:
    j: int
    k: int
    dilation: float
    phase: str = "merge"


@dataclass
class ShortcutResult:
    curve: PolyCurve
    indices: tuple
    log: list
    sweep_fired: bool

    @property
    def sweep_count(self) -> int:
        return sum(1 for s in self.log if s.phase == "sweep")


def _dilation(v: np.ndarray, idx: list, j: int, k: int) -> float:
    pts = v[idx[j : k + 1]]
    diff = np.diff(pts, axis=0)
    arc = float(np.sum(np.sqrt(np.sum(diff * diff, axis=1))))
    d = pts[-1] - pts[0]
    return arc / float(np.sqrt(d @ d))


def shortcut_detours(curve: PolyCurve, alpha: float, eps: float) -> ShortcutResult:
    """Repeatedly shortcut detours until none of dilation > alpha is left.

    Halves are processed recursively and joined with one crossing
    shortcut each; a final exact sweep removes any alpha-detour that
    survived the merges.
    """
    if alpha <= 1:
        raise ValueError("alpha must exceed 1")
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    v = curve.vertices
    dup = find_duplicate(v)
    if dup is not None:
        raise DegenerateCurveError(f"vertices {dup[0]} and {dup[1]} coincide: infinite dilation")
    log: list[Shortcut] = []

    def rec(lo: int, hi: int) -> list:
        if hi - lo <= 2:
            return list(range(lo, hi))
        mid = lo + (hi - lo) // 2
        left = rec(lo, mid)
        cur = left + rec(mid, hi)
        res = bi_shortcut(PolyCurve(v[cur]), alpha, eps, split=len(left))
        if res is None:
            return cur
        j, k = res
        log.append(Shortcut(cur[j], cur[k], _dilation(v, cur, j, k)))
        return cur[: j + 1] + cur[k:]

    idx = rec(0, len(v))
    fired = False
    while len(idx) > 2:
        pts = v[idx]
        diff = np.diff(pts, axis=0)
        pre = np.concatenate([[0.0], np.cumsum(np.sqrt(np.sum(diff * diff, axis=1)))])
        d = pairwise_distances(pts, pts)
        arc = pre[None, :] - pre[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            dil = np.where(np.triu(np.ones_like(d, dtype=bool), 2), arc / d, 0.0)
        j, k = np.unravel_index(int(np.argmax(dil)), dil.shape)
        if not dil[j, k] > alpha:
            break
        fired = True
        log.append(Shortcut(idx[j], idx[k], _dilation(v, idx, int(j), int(k)), "sweep"))
        idx = idx[: j + 1] + idx[k:]
    return ShortcutResult(PolyCurve(v[idx]), tuple(idx), log, fired)
