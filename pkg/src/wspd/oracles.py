"""Exhaustive reference checks used to certify the fast constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import PolyCurve
from .maps import FiniteMap, find_duplicate
from .metric import FiniteMetric, UnitDistanceGraph, DisconnectedGraphError
from .pairs import PairDecomposition

__all__ = [
    "ValidationReport",
    "validate_wspd",
    "exact_dilation",
    "exact_distortion",
    "exact_max_detour",
    "exact_crossing_detour",
    "is_simple",
    "on_curve",
    "all_pairs_graph_distance",
    "DEFAULT_CAP",
    "REL_TOL",
]

DEFAULT_CAP = 500
REL_TOL = 1e-9


@dataclass
class ValidationReport:
    coverage_ok: bool
    uncovered_pairs: list
    separation_ok: bool
    worst_pair: tuple  # (pair id, max(diam A, diam B) / d(A, B))
    disjoint_ok: bool = True
    overlapping: list = field(default_factory=list)
    failing_pairs: list = field(default_factory=list)
    duplicate_pairs: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.coverage_ok and self.separation_ok and self.disjoint_ok

    def to_kv(self) -> str:
        lines = [
            f"valid={'ok' if self.ok else 'fail'}",
            f"coverage_ok={self.coverage_ok}",
            f"uncovered={len(self.uncovered_pairs)}",
            f"separation_ok={self.separation_ok}",
            f"disjoint_ok={self.disjoint_ok}",
            f"worst_pair={self.worst_pair[0]}",
            f"worst_ratio={self.worst_pair[1]!r}",
            f"duplicate_pairs={self.duplicate_pairs}",
        ]
        lines += [f"{k}={v!r}" for k, v in self.stats.items()]
        return "\n".join(lines)

    def to_text(self) -> str:
        head = "WSPD validation: " + ("OK" if self.ok else "FAILED")
        out = [
            head,
            f"  pairs:       {self.stats.get('pairs', 0)}",
            f"  coverage:    {'ok' if self.coverage_ok else 'missing %d point pairs' % len(self.uncovered_pairs)}",
            f"  separation:  {'ok' if self.separation_ok else '%d pairs violate' % len(self.failing_pairs)}",
            f"  disjoint:    {'ok' if self.disjoint_ok else '%d pairs overlap' % len(self.overlapping)}",
            f"  worst ratio: {self.worst_pair[1]:.6g} (pair {self.worst_pair[0]})",
        ]
        for i, j in self.uncovered_pairs[:10]:
            out.append(f"  uncovered: {i} {j}")
        if self.duplicate_pairs:
            out.append(f"  note: {self.duplicate_pairs} coincident point pairs excluded from coverage")
        return "\n".join(out)


def validate_wspd(m: FiniteMetric, w: PairDecomposition, eps: float | None = None, cap: int = DEFAULT_CAP) -> ValidationReport:
    """Check coverage of every point pair and max(diam A, diam B) <= eps d(A, B)."""
    n = m.n
    if n > cap:
        raise ValueError(f"validation is capped at {cap} points, got {n}")
    eps = w.eps if eps is None else float(eps)
    d = m.matrix()
    covered = np.zeros((n, n), dtype=bool)

    single = [k for k, p in enumerate(w.pairs) if len(p.a) == 1 and len(p.b) == 1]
    sa = np.array([w.pairs[k].a[0] for k in single], dtype=int)
    sb = np.array([w.pairs[k].b[0] for k in single], dtype=int)
    covered[sa, sb] = True
    covered[sb, sa] = True
    overlapping = [single[k] for k in np.flatnonzero(sa == sb).tolist()]

    worst = (-1, 0.0)
    failing = []
    dmax, dmin = -math.inf, math.inf
    if single:
        sd = d[sa, sb]
        dmax = max(dmax, float(sd.max()))
        dmin = min(dmin, float(sd.min()))

    single_set = set(single)
    for k, p in enumerate(w.pairs):
        if k in single_set:
            continue
        a = np.asarray(p.a, dtype=int)
        b = np.asarray(p.b, dtype=int)
        if np.intersect1d(a, b).size:
            overlapping.append(k)
        covered[np.ix_(a, b)] = True
        covered[np.ix_(b, a)] = True
        dab = d[np.ix_(a, b)]
        gap = float(dab.min())
        diam = max(float(d[np.ix_(a, a)].max()), float(d[np.ix_(b, b)].max()))
        whole = max(diam, float(dab.max()))
        dmax, dmin = max(dmax, whole), min(dmin, whole)
        if diam > eps * gap * (1 + REL_TOL):
            failing.append(k)
        ratio = diam / gap if gap > 0 else (math.inf if diam > 0 else 0.0)
        if ratio > worst[1]:
            worst = (k, ratio)

    iu = np.triu_indices(n, 1)
    distinct = d[iu] > 0
    missing = ~covered[iu] & distinct
    uncovered = list(zip(iu[0][missing].tolist(), iu[1][missing].tolist()))
    stats = {
        "pairs": len(w.pairs),
        "points": n,
        "max_pair_diameter": dmax if w.pairs else 0.0,
        "min_pair_diameter": dmin if w.pairs else 0.0,
    }
    return ValidationReport(
        coverage_ok=not uncovered,
        uncovered_pairs=uncovered,
        separation_ok=not failing,
        worst_pair=worst,
        disjoint_ok=not overlapping,
        overlapping=overlapping,
        failing_pairs=failing,
        duplicate_pairs=int(np.count_nonzero(~distinct)),
        stats=stats,
    )


def _dist_matrix(c: np.ndarray) -> np.ndarray:
    diff = c[:, None, :] - c[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def exact_dilation(fmap: FiniteMap) -> tuple[float, tuple[int, int]]:
    """Maximum ratio |f(x) - f(y)| / |x - y| over all pairs, with its witness."""
    dup = find_duplicate(fmap.domain.coords)
    if dup is not None:
        raise ValueError(f"domain points {dup[0]} and {dup[1]} coincide")
    n = len(fmap)
    if n < 2:
        raise ValueError("need at least two points")
    iu = np.triu_indices(n, 1)
    ratio = _dist_matrix(fmap.image.coords)[iu] / _dist_matrix(fmap.domain.coords)[iu]
    k = int(np.argmax(ratio))
    return float(ratio[k]), (int(iu[0][k]), int(iu[1][k]))


def exact_distortion(fmap: FiniteMap) -> float:
    if find_duplicate(fmap.image.coords) is not None or find_duplicate(fmap.domain.coords) is not None:
        return math.inf
    return exact_dilation(fmap)[0] * exact_dilation(fmap.inverse())[0]


def exact_max_detour(curve: PolyCurve) -> tuple[float, tuple[int, int] | None]:
    """max over vertex pairs of arc length / straight distance."""
    v = curve.vertices
    dup = find_duplicate(v)
    if dup is not None:
        return math.inf, dup
    n = len(v)
    iu = np.triu_indices(n, 1)
    pre = curve.prefix_len
    ratio = (pre[iu[1]] - pre[iu[0]]) / _dist_matrix(v)[iu]
    k = int(np.argmax(ratio))
    return float(ratio[k]), (int(iu[0][k]), int(iu[1][k]))


def exact_crossing_detour(curve: PolyCurve, split: int) -> tuple[float, tuple[int, int] | None]:
    """Largest detour among vertex pairs j < split <= k (plain double loop)."""
    v = curve.vertices
    pre = curve.prefix_len
    best, arg = 0.0, None
    for j in range(split):
        for k in range(split, len(v)):
            d = math.sqrt(sum((float(x) - float(y)) ** 2 for x, y in zip(v[j], v[k])))
            r = math.inf if d == 0 else (pre[k] - pre[j]) / d
            if r > best:
                best, arg = r, (j, k)
    return best, arg


def _orient(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])


def _on_box(a, b, c, tol):
    return (
        (np.minimum(a[..., 0], b[..., 0]) - tol <= c[..., 0])
        & (c[..., 0] <= np.maximum(a[..., 0], b[..., 0]) + tol)
        & (np.minimum(a[..., 1], b[..., 1]) - tol <= c[..., 1])
        & (c[..., 1] <= np.maximum(a[..., 1], b[..., 1]) + tol)
    )


def is_simple(curve: PolyCurve, tol: float = 1e-12) -> tuple[bool, tuple[int, int] | None]:
    """Quadratic scan of edge pairs using orientation predicates.

    Adjacent edges may only share their common vertex; any other contact,
    including touching, makes the curve non-simple.
    """
    v = curve.vertices
    if v.shape[1] != 2:
        raise ValueError("is_simple expects a planar curve")
    m = len(v) - 1
    p, q = v[:-1], v[1:]
    scale = max(1.0, float(np.abs(v).max()))
    eps = tol * scale * scale
    for i in range(m):
        a, b = p[i], q[i]
        # adjacent edge: only a collinear fold-back can overlap
        if i + 1 < m:
            r, s = b - a, q[i + 1] - b
            if abs(float(_orient(a, b, q[i + 1]))) <= eps and float(r @ s) < 0:
                return False, (i, i + 1)
        if i + 2 >= m:
            continue
        c, dd = p[i + 2 :], q[i + 2 :]
        o1 = _orient(a, b, c)
        o2 = _orient(a, b, dd)
        o3 = _orient(c, dd, a)
        o4 = _orient(c, dd, b)
        z1, z2, z3, z4 = (np.abs(o) <= eps for o in (o1, o2, o3, o4))
        proper = (np.sign(o1) * np.sign(o2) < 0) & (np.sign(o3) * np.sign(o4) < 0) & ~(z1 | z2 | z3 | z4)
        touch = (
            (z1 & _on_box(a, b, c, tol * scale))
            | (z2 & _on_box(a, b, dd, tol * scale))
            | (z3 & _on_box(c, dd, a, tol * scale))
            | (z4 & _on_box(c, dd, b, tol * scale))
        )
        bad = np.flatnonzero(proper | touch)
        if bad.size:
            return False, (i, i + 2 + int(bad[0]))
    return True, None


def on_curve(point, curve: PolyCurve, tol: float = 1e-9) -> bool:
    """Whether ``point`` lies within ``tol`` of some edge of ``curve``."""
    pt = np.asarray(point, dtype=float)
    a = curve.vertices[:-1]
    b = curve.vertices[1:]
    ab = b - a
    t = np.clip(np.sum((pt - a) * ab, axis=1) / np.sum(ab * ab, axis=1), 0.0, 1.0)
    closest = a + t[:, None] * ab
    diff = closest - pt
    return bool(np.min(np.sqrt(np.sum(diff * diff, axis=1))) <= tol)


def all_pairs_graph_distance(g: UnitDistanceGraph, cap: int = 400) -> np.ndarray:
    """Floyd-Warshall over the unit-distance graph."""
    n = g.n
    if n > cap:
        raise ValueError(f"all-pairs oracle is capped at {cap} vertices, got {n}")
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, nbrs in enumerate(g.adjacency):
        for v, w in nbrs:
            d[u, v] = min(d[u, v], w)
    for k in range(n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    if not np.all(np.isfinite(d)):
        raise DisconnectedGraphError("graph is disconnected")
    return d
