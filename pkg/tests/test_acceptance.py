"""Acceptance gate: one check per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from wspd.curves import PolyCurve, bi_shortcut, distill, shortcut_detours
from wspd.euclid import euclidean_wspd
from wspd.generators import clustered, connected_udg, serpentine_chain, uniform_square
from wspd.maps import FiniteMap, approx_distortion, approx_lipschitz
from wspd.metric import GraphMetric, PointSet, build_unit_distance_graph, euclidean_metric
from wspd.optimal import instance_optimal_wspd
from wspd.oracles import (
    all_pairs_graph_distance,
    exact_crossing_detour,
    exact_dilation,
    exact_distortion,
    exact_max_detour,
    is_simple,
    on_curve,
    validate_wspd,
)
from wspd.udg import udg_wspd

pytestmark = pytest.mark.acceptance

EPS3 = (0.1, 0.25, 0.5)


def _valid(m, w) -> bool:
    rep = validate_wspd(m, w)
    return rep.coverage_ok and rep.separation_ok


def criterion_1():
    """WSPD validity on Euclidean, UDG and general-metric instances."""
    bad = []
    for k in range(50):
        rng = np.random.default_rng(1000 + k)
        n = int(rng.integers(16, 257))
        dim = 2 if k % 4 else 3
        ps = uniform_square(n, rng, dim) if k % 2 else clustered(n, rng, dim)
        eps = EPS3[k % 3]
        if not _valid(euclidean_metric(ps), euclidean_wspd(ps, eps)):
            bad.append(f"euclid#{k}")
    for k in range(50):
        rng = np.random.default_rng(2000 + k)
        n = int(rng.integers(16, 257))
        if k % 5 == 0:
            ps, eps = serpentine_chain(n, rng), 0.5
        else:
            ps, eps = connected_udg(n, rng), EPS3[k % 3]
        m = GraphMetric(build_unit_distance_graph(ps))
        if not _valid(m, udg_wspd(ps, eps, metric=m)):
            bad.append(f"udg#{k}")
    for k in range(50):
        rng = np.random.default_rng(3000 + k)
        n = int(rng.integers(16, 257))
        if k % 2:
            m = euclidean_metric(uniform_square(n, rng))
        else:
            m = GraphMetric(build_unit_distance_graph(connected_udg(n, rng)))
        if not _valid(m, instance_optimal_wspd(m, EPS3[k % 3])):
            bad.append(f"general#{k}")
    return not bad, f"150 instances, failures={bad or 'none'}"


def criterion_2():
    """|instance-optimal WSPD| <= 7 |ck WSPD at separation 33/eps|."""
    worst = 0.0
    for k in range(20):
        rng = np.random.default_rng(4000 + k)
        n = int(rng.integers(64, 257))
        ps = uniform_square(n, rng) if k % 2 else clustered(n, rng)
        eps = (0.25, 0.5)[k % 2]
        opt = len(instance_optimal_wspd(euclidean_metric(ps), eps))
        base = len(euclidean_wspd(ps, eps / 33))
        worst = max(worst, opt / base)
    return worst <= 7, f"max |W|/|W'| = {worst:.3f} (bound 7)"


def criterion_3():
    """pairs/n moves by less than x1.5 between consecutive doublings."""
    sizes = (128, 256, 512, 1024)
    ratios = []
    for n in sizes:
        vals = [len(euclidean_wspd(uniform_square(n, seed), 0.5)) / n for seed in range(5)]
        ratios.append(float(np.mean(vals)))
    steps = [max(b / a, a / b) for a, b in zip(ratios, ratios[1:])]
    shown = ", ".join(f"{n}:{r:.2f}" for n, r in zip(sizes, ratios))
    return max(steps) < 1.5, f"pairs/n {shown}; max step x{max(steps):.3f} (bound 1.5)"


def _udg_ratio(ps):
    n = len(ps)
    return len(udg_wspd(ps, 0.5)) / (n * math.log2(n))


def criterion_4():
    """|W|/(n log2 n) for connected random UDGs: last <= 1.25 x first."""
    sizes = (64, 128, 256, 512)
    ratios = [float(np.mean([_udg_ratio(connected_udg(n, seed)) for seed in range(2)])) for n in sizes]
    chain = [_udg_ratio(serpentine_chain(n, 0)) for n in sizes]
    shown = ", ".join(f"{n}:{r:.2f}" for n, r in zip(sizes, ratios))
    info = ", ".join(f"{r:.2f}" for r in chain)
    ok = ratios[-1] <= 1.25 * ratios[0]
    return ok, f"ratio {shown}; last/first = {ratios[-1] / ratios[0]:.2f} (bound 1.25); serpentine (info) {info}"


def _random_map(k, rng):
    n = int(rng.integers(20, 301))
    x = rng.random((n, 2 if k % 5 else 3))
    kind = k % 4
    if kind == 0:
        y = x + 0.05 * np.sin(5 * x[:, ::-1]) + 0.01 * rng.normal(size=x.shape)
    elif kind == 1:
        y = x @ rng.normal(size=(x.shape[1], x.shape[1]))
    elif kind == 2:
        y = np.column_stack([x, np.sum(x * x, axis=1)])
    else:
        y = x + 0.2 * rng.normal(size=x.shape)
    return FiniteMap(PointSet(x), PointSet(y))


def criterion_5():
    """(1-eps) L <= lower <= L, exact comparisons."""
    bad = []
    tight = math.inf
    exact_hits = 0
    for k in range(100):
        rng = np.random.default_rng(5000 + k)
        f = _random_map(k, rng)
        eps = (0.05, 0.1, 0.25)[k % 3]
        L = exact_dilation(f)[0]
        est = approx_lipschitz(f, eps)
        if not ((1 - eps) * L <= est.lower <= L and L <= est.upper <= (1 + eps) * L):
            bad.append(k)
        tight = min(tight, est.lower / L)
        exact_hits += est.lower == L
    detail = f"100 maps, failures={bad or 'none'}, min lower/L = {tight!r}, lower == L in {exact_hits}/100"
    return not bad, detail


def criterion_6():
    """D <= estimate <= (1+eps) D for bijections; collisions give inf."""
    eps = 0.1
    bad = []
    for k in range(50):
        rng = np.random.default_rng(6000 + k)
        n = int(rng.integers(20, 201))
        x = rng.random((n, 2))
        y = x + rng.uniform(0.01, 0.3) * rng.normal(size=x.shape)
        f = FiniteMap(PointSet(x), PointSet(y))
        D = exact_distortion(f)
        got = approx_distortion(f, eps).value
        if not D <= got <= (1 + eps) * D:
            bad.append(k)
    collapsed = 0
    for k in range(5):
        rng = np.random.default_rng(6500 + k)
        x = rng.random((30, 2))
        y = x.copy()
        y[7 + k] = y[3]
        est = approx_distortion(FiniteMap(PointSet(x), PointSet(y)), eps)
        collapsed += math.isinf(est.value) and est.collision == (3, 7 + k)
    ok = not bad and collapsed == 5
    return ok, f"50 bijections, failures={bad or 'none'}; non-injective -> inf in {collapsed}/5"


def _distill_ok(c: PolyCurve, out: PolyCurve) -> bool:
    n = len(c)
    return (
        is_simple(out)[0]
        and np.array_equal(out.vertices[0], c.vertices[0])
        and np.array_equal(out.vertices[-1], c.vertices[-1])
        and all(on_curve(p, c, 1e-9) for p in out.vertices)
        and len(out) <= n + math.ceil(math.log2(n))
    )


def criterion_7():
    """distill output is a simple subcurve with the same endpoints."""
    bowtie = PolyCurve([(0, 0), (4, 0), (2, 2), (2, -2)])
    example = distill(bowtie).vertices.tolist() == [[0.0, 0.0], [2.0, 0.0], [2.0, -2.0]]
    bad = []
    wall = 0.0
    for k in range(100):
        rng = np.random.default_rng(7000 + k)
        n = int(rng.integers(4, 1001))
        while True:
            c = PolyCurve(rng.random((n, 2)))
            if not is_simple(c)[0]:
                break
        t = time.perf_counter()
        out = distill(c)
        wall += time.perf_counter() - t
        if not _distill_ok(c, out):
            bad.append(k)
    ok = example and not bad
    return ok, f"worked example {'ok' if example else 'WRONG'}; 100 curves, failures={bad or 'none'}; distill wall {wall:.2f}s"


def _replay_ok(v, log, alpha, eps) -> bool:
    alive = np.ones(len(v), dtype=bool)
    for s in log:
        if not (alive[s.j] and alive[s.k]):
            return False
        idx = np.flatnonzero(alive)
        seg = idx[(idx >= s.j) & (idx <= s.k)]
        pts = v[seg]
        arc = float(np.sum(np.sqrt(np.sum(np.diff(pts, axis=0) ** 2, axis=1))))
        if arc < (1 - eps) * alpha * math.dist(v[s.j], v[s.k]):
            return False
        alive[seg[1:-1]] = False
    return True


def _crossing_ok(c: PolyCurve, alpha, eps):
    """bi_shortcut at the middle split against the exhaustive cross-split scan."""
    h = len(c) // 2
    if h < 1:
        return True, False
    res = bi_shortcut(c, alpha, eps)
    thr = (1 - eps) * alpha
    if res is None:
        return exact_crossing_detour(c, h)[0] < thr, True
    j, k = res
    return j < h <= k and c.arc(j, k) >= thr * math.dist(c.vertices[j], c.vertices[k]), False


def criterion_8():
    """No alpha-detour left, replayable log, subsequence, exact 'none'."""
    eps = 0.1
    bad = []
    fired = 0
    nones = [0, 0]
    for k in range(100):
        rng = np.random.default_rng(8000 + k)
        n = int(rng.integers(10, 501))
        alpha = (1.5, 2.0, 4.0)[k % 3]
        if k % 2:
            v = rng.random((n, 2))
        else:
            v = np.cumsum(rng.normal(size=(n, 2)) * 0.5 + [0.3, 0.0], axis=0)
        c = PolyCurve(v)
        res = shortcut_detours(c, alpha, eps)
        idx = list(res.indices)
        checks = [
            exact_max_detour(res.curve)[0] < alpha + 1e-9,
            _replay_ok(v, res.log, alpha, eps),
            idx == sorted(set(idx)) and idx[0] == 0 and idx[-1] == n - 1,
            np.array_equal(res.curve.vertices, v[idx]),
        ]
        for side, curve in enumerate((c, res.curve)):
            ok, was_none = _crossing_ok(curve, alpha, eps)
            checks.append(ok)
            nones[side] += was_none
        if not all(checks):
            bad.append(k)
        fired += res.sweep_fired
    detail = f"100 runs, failures={bad or 'none'}; sweep fired in {fired}/100 runs; 'none' results (input {nones[0]}, output {nones[1]}) confirmed exhaustively"
    return not bad, detail


def criterion_9():
    """cached Dijkstra equals the cubic all-pairs oracle."""
    worst = 0.0
    for k in range(20):
        rng = np.random.default_rng(9000 + k)
        g = build_unit_distance_graph(connected_udg(int(rng.integers(20, 201)), rng))
        diff = np.abs(GraphMetric(g).matrix() - all_pairs_graph_distance(g))
        worst = max(worst, float(diff.max()))
    return worst <= 1e-9, f"max |dijkstra - floyd| = {worst:.3e} over 20 graphs (bound 1e-9)"


CRITERIA = [
    (1, "WSPD validity", criterion_1, 120),
    (2, "instance-optimality factor 7", criterion_2, 60),
    (3, "Euclidean size scaling", criterion_3, 30),
    (4, "UDG size scaling", criterion_4, 180),
    (5, "Lipschitz sandwich", criterion_5, 60),
    (6, "distortion sandwich", criterion_6, 60),
    (7, "distill correctness", criterion_7, 120),
    (8, "shortcutting contract", criterion_8, 120),
    (9, "oracle self-consistency", criterion_9, 30),
]


def run_criterion(num, name, fn, budget):
    t = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t
    line = f"[{'PASS' if ok else 'FAIL'}] C{num} {name}: {detail} ({elapsed:.1f}s, budget {budget}s)"
    return ok, line


@pytest.mark.parametrize("num, name, fn, budget", CRITERIA, ids=[f"C{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, budget, verdict):
    ok, line = run_criterion(num, name, fn, budget)
    print(line)
    verdict(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line, flush=True)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
