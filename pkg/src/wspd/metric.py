"""Point sets, finite metrics, unit-distance graphs and greedy packings."""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

__all__ = [
    "PointSet",
    "FiniteMetric",
    "EuclideanMetric",
    "GraphMetric",
    "UnitDistanceGraph",
    "DisconnectedGraphError",
    "Packing",
    "euclidean_metric",
    "build_unit_distance_graph",
    "graph_metric",
    "greedy_packing",
    "voronoi_assign",
    "pairwise_distances",
]


class DisconnectedGraphError(ValueError):
    """The unit-distance graph has more than one connected component."""


def pairwise_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean distance matrix between the rows of ``a`` and ``b``.

    Computed as sqrt(sum(diff**2)) so that scaling coordinates by a power of
    two scales every distance exactly.
    """
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


@dataclass(frozen=True)
class PointSet:
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        if c.ndim == 1:
            c = c[:, None]
        if c.ndim != 2:
            raise ValueError("coords must be an (n, d) array")
        if c.shape[1] < 1:
            raise ValueError("points need at least one coordinate")
        if not np.all(np.isfinite(c)):
            raise ValueError("all coordinates must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self) -> int:
        return self.coords.shape[0]

    def subset(self, idx) -> np.ndarray:
        return self.coords[np.asarray(idx, dtype=int)]


class FiniteMetric:
    """Distance evaluator over points indexed ``0..n-1``.

    Subclasses implement :meth:`row`; everything else is derived from it.
    """

    n: int

    def row(self, i: int) -> np.ndarray:
        raise NotImplementedError

    def distance(self, i: int, j: int) -> float:
        return float(self.row(i)[j])

    def __call__(self, i: int, j: int) -> float:
        return self.distance(i, j)

    def __len__(self) -> int:
        return self.n

    def rows(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=int)
        if idx.size == 0:
            return np.zeros((0, self.n))
        return np.vstack([self.row(int(i)) for i in idx])

    def submatrix(self, a, b) -> np.ndarray:
        return self.rows(a)[:, np.asarray(b, dtype=int)]

    def matrix(self) -> np.ndarray:
        return self.rows(np.arange(self.n))


class EuclideanMetric(FiniteMetric):
    def __init__(self, points: PointSet):
        if len(points) == 0:
            raise ValueError("empty point set")
        self.points = points
        self.n = len(points)

    def row(self, i: int) -> np.ndarray:
        c = self.points.coords
        diff = c - c[i]
        return np.sqrt(np.sum(diff * diff, axis=1))

    def distance(self, i: int, j: int) -> float:
        diff = self.points.coords[i] - self.points.coords[j]
        return float(np.sqrt(np.sum(diff * diff)))

    def rows(self, idx) -> np.ndarray:
        c = self.points.coords
        return pairwise_distances(c[np.asarray(idx, dtype=int)], c)

    def submatrix(self, a, b) -> np.ndarray:
        c = self.points.coords
        return pairwise_distances(c[np.asarray(a, dtype=int)], c[np.asarray(b, dtype=int)])


def euclidean_metric(ps: PointSet) -> EuclideanMetric:
    return EuclideanMetric(ps)


@dataclass(frozen=True)
class UnitDistanceGraph:
    """Weighted unit-distance graph: edge ``xy`` iff ``|x - y| <= 1``."""

    points: PointSet
    adjacency: tuple  # per vertex: tuple of (neighbor, weight)
    connected: bool

    @property
    def n(self) -> int:
        return len(self.points)

    def edges(self) -> list[tuple[int, int, float]]:
        return [(u, v, w) for u, nbrs in enumerate(self.adjacency) for v, w in nbrs if u < v]


def build_unit_distance_graph(ps: PointSet) -> UnitDistanceGraph:
    n = len(ps)
    c = ps.coords
    nbrs: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    if n > 1:
        # kd-tree only proposes candidates; the <= 1 test is done on exact lengths
        cand = cKDTree(c).query_pairs(1.0 + 1e-9, output_type="ndarray")
        if len(cand):
            diff = c[cand[:, 0]] - c[cand[:, 1]]
            w = np.sqrt(np.sum(diff * diff, axis=1))
            keep = w <= 1.0
            order = np.lexsort((cand[keep, 1], cand[keep, 0]))
            for (u, v), wt in zip(cand[keep][order], w[keep][order]):
                nbrs[u].append((int(v), float(wt)))
                nbrs[v].append((int(u), float(wt)))
    for lst in nbrs:
        lst.sort()
    seen = np.zeros(n, dtype=bool)
    if n:
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for v, _ in nbrs[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
    return UnitDistanceGraph(ps, tuple(tuple(lst) for lst in nbrs), bool(seen.all()))


def dijkstra(adjacency, source: int) -> np.ndarray:
    n = len(adjacency)
    dist = np.full(n, np.inf)
    dist[source] = 0.0
    done = np.zeros(n, dtype=bool)
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in adjacency[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


class GraphMetric(FiniteMetric):
    """Shortest-path metric of a connected unit-distance graph.

    Single-source distances are computed lazily and cached per source.
    """

    def __init__(self, graph: UnitDistanceGraph):
        if not graph.connected:
            raise DisconnectedGraphError(
                "unit-distance graph is disconnected; graph distances would be infinite"
            )
        self.graph = graph
        self.n = graph.n
        self._cache: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()

    def row(self, i: int) -> np.ndarray:
        i = int(i)
        r = self._cache.get(i)
        if r is None:
            r = dijkstra(self.graph.adjacency, i)
            r.setflags(write=False)
            with self._lock:
                self._cache.setdefault(i, r)
        return r

    def eccentricity(self, i: int = 0) -> float:
        return float(self.row(i).max())


def graph_metric(g: UnitDistanceGraph) -> GraphMetric:
    return GraphMetric(g)


@dataclass(frozen=True)
class Packing:
    """An r-packing: picks pairwise >= r apart, every point < r from its owner.

    ``assignment[p]`` is the point index of the pick owning ``p``.
    """

    radius: float
    picks: tuple
    assignment: np.ndarray = field(repr=False)

    def cells(self) -> dict[int, tuple]:
        out: dict[int, list] = {p: [] for p in self.picks}
        for q, owner in enumerate(self.assignment.tolist()):
            out[owner].append(q)
        return {p: tuple(v) for p, v in out.items()}


def greedy_packing(m: FiniteMetric, r: float) -> Packing:
    """Scan points in index order, picking any point at distance >= r from all picks."""
    if not r > 0:
        raise ValueError(f"packing radius must be positive, got {r}")
    n = m.n
    if n < 1:
        raise ValueError("empty metric")
    mindist = np.full(n, np.inf)
    owner = np.zeros(n, dtype=int)
    picks = []
    for p in range(n):
        if mindist[p] >= r:
            picks.append(p)
            row = m.row(p)
            # strict < keeps the earlier (lower-index) pick on ties
            closer = row < mindist
            mindist = np.where(closer, row, mindist)
            owner = np.where(closer, p, owner)
    assignment = owner
    assignment.setflags(write=False)
    return Packing(float(r), tuple(picks), assignment)


def voronoi_assign(m: FiniteMetric, packing: Packing | tuple | list) -> np.ndarray:
    """Nearest pick for every point; ties go to the lowest pick index."""
    picks = packing.picks if isinstance(packing, Packing) else packing
    picks = np.array(sorted(int(p) for p in picks), dtype=int)
    if picks.size == 0:
        raise ValueError("packing has no picks")
    d = m.rows(picks)
    return picks[np.argmin(d, axis=0)]
