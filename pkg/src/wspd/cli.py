"""Command-line entry point: ``wspd <command> ...``.

Every command prints ``key=value`` stats lines. The exit status is 0 only
when every enabled validation passed; input and parameter errors exit 2.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import svg
from .curves import DegenerateCurveError, GridSegmentIndex, NaiveSegmentIndex, PolyCurve, distill, shortcut_detours
from .euclid import euclidean_wspd
from .generators import GENERATORS, random_curve
from .io import PointFileError, format_points, read_points
from .maps import FiniteMap, approx_distortion, approx_lipschitz
from .metric import DisconnectedGraphError, build_unit_distance_graph, euclidean_metric, graph_metric
from .optimal import instance_optimal_wspd
from .oracles import DEFAULT_CAP, exact_max_detour, is_simple, validate_wspd
from .pairs import PairFileError, format_pairs, parse_pairs
from .udg import udg_wspd, udg_wspd_highdim

COMMANDS = (
    "wspd-euclid",
    "wspd-optimal",
    "wspd-udg",
    "dilation",
    "distortion",
    "distill",
    "shortcut",
    "validate",
    "gen",
)


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    eps: float | None = None
    alpha: float | None = None
    metric: str = "euclidean"
    seed: int | None = None
    n: int = 100
    dim: int = 2
    kind: str = "uniform"
    out: str | None = None
    svg: str | None = None
    log: str | None = None
    index: str = "naive"
    validate: bool = True

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.eps is not None and not 0 < self.eps < 1:
            raise ValueError(f"--eps must lie in (0, 1), got {self.eps}")
        if self.alpha is not None and not self.alpha > 1:
            raise ValueError(f"--alpha must exceed 1, got {self.alpha}")


def _emit(**stats):
    for k, v in stats.items():
        print(f"{k}={v}")


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _metric_for(ps, kind):
    if kind == "euclidean":
        return euclidean_metric(ps)
    if kind == "udg":
        return graph_metric(build_unit_distance_graph(ps))
    raise ValueError(f"unknown metric {kind!r}")


def _finish_wspd(cfg, ps, m, w, elapsed) -> int:
    if cfg.out:
        _write(cfg.out, format_pairs(w, m.distance))
    if cfg.svg:
        picks = None
        packings = w.meta.get("packings")
        if packings:
            picks = packings[max(packings)].picks
        _write(cfg.svg, svg.pair_chords(ps.coords, w.pairs, picks))
    verdict = "off"
    code = 0
    if cfg.validate:
        if m.n > DEFAULT_CAP:
            verdict = "skipped"
        else:
            rep = validate_wspd(m, w)
            verdict = "ok" if rep.ok else "fail"
            if not rep.ok:
                print(rep.to_text(), file=sys.stderr)
                code = 1
    _emit(points=m.n, pairs=len(w), time=f"{elapsed:.4f}", valid=verdict)
    return code


def _cmd_wspd_euclid(cfg):
    ps = read_points(cfg.inputs[0])
    t = time.perf_counter()
    w = euclidean_wspd(ps, cfg.eps)
    return _finish_wspd(cfg, ps, euclidean_metric(ps), w, time.perf_counter() - t)


def _cmd_wspd_optimal(cfg):
    ps = read_points(cfg.inputs[0])
    m = _metric_for(ps, cfg.metric)
    t = time.perf_counter()
    w = instance_optimal_wspd(m, cfg.eps)
    return _finish_wspd(cfg, ps, m, w, time.perf_counter() - t)


def _cmd_wspd_udg(cfg):
    ps = read_points(cfg.inputs[0])
    g = build_unit_distance_graph(ps)
    m = graph_metric(g)
    t = time.perf_counter()
    build = udg_wspd if ps.dim == 2 else udg_wspd_highdim
    w = build(ps, cfg.eps, graph=g, metric=m)
    return _finish_wspd(cfg, ps, m, w, time.perf_counter() - t)


def _load_map(cfg) -> FiniteMap:
    if len(cfg.inputs) != 2:
        raise ValueError("expected a domain file and an image file")
    return FiniteMap(read_points(cfg.inputs[0]), read_points(cfg.inputs[1]))


def _cmd_dilation(cfg):
    fmap = _load_map(cfg)
    t = time.perf_counter()
    est = approx_lipschitz(fmap, cfg.eps)
    _emit(
        ell=repr(est.lower),
        ell_prime=repr(est.upper),
        witness=f"{est.witness[0]},{est.witness[1]}",
        pairs=est.pairs,
        time=f"{time.perf_counter() - t:.4f}",
    )
    return 0


def _cmd_distortion(cfg):
    fmap = _load_map(cfg)
    t = time.perf_counter()
    est = approx_distortion(fmap, cfg.eps)
    stats = {"distortion": repr(est.value)}
    if est.collision is not None:
        stats["collision"] = f"{est.collision[0]},{est.collision[1]}"
    else:
        stats["lip_forward"] = repr(est.forward.upper)
        stats["lip_backward"] = repr(est.backward.upper)
        stats["witness_forward"] = "%d,%d" % est.forward.witness
        stats["witness_backward"] = "%d,%d" % est.backward.witness
    stats["time"] = f"{time.perf_counter() - t:.4f}"
    _emit(**stats)
    return 0


def _read_curve(path) -> PolyCurve:
    return PolyCurve(read_points(path).coords)


def _cmd_distill(cfg):
    curve = _read_curve(cfg.inputs[0])
    index = GridSegmentIndex if cfg.index == "grid" else NaiveSegmentIndex
    t = time.perf_counter()
    out = distill(curve, index=index)
    elapsed = time.perf_counter() - t
    if cfg.out:
        _write(cfg.out, format_points(out.vertices))
    if cfg.svg:
        _write(cfg.svg, svg.curve_overlay(curve.vertices, out.vertices))
    verdict, code = "off", 0
    if cfg.validate:
        simple, witness = is_simple(out)
        ends = np.array_equal(out.vertices[0], curve.vertices[0]) and np.array_equal(
            out.vertices[-1], curve.vertices[-1]
        )
        verdict = "ok" if simple and ends else "fail"
        if verdict == "fail":
            print(f"output not simple (edges {witness}) or endpoints moved", file=sys.stderr)
            code = 1
    _emit(vertices_in=len(curve), vertices_out=len(out), time=f"{elapsed:.4f}", valid=verdict)
    return code


def _cmd_shortcut(cfg):
    if cfg.alpha is None:
        raise ValueError("shortcut needs --alpha")
    curve = _read_curve(cfg.inputs[0])
    t = time.perf_counter()
    res = shortcut_detours(curve, cfg.alpha, cfg.eps)
    elapsed = time.perf_counter() - t
    if cfg.out:
        _write(cfg.out, format_points(res.curve.vertices))
    if cfg.log:
        _write(cfg.log, "".join(f"{s.j} {s.k} {s.dilation!r} {s.phase}\n" for s in res.log))
    if cfg.svg:
        _write(cfg.svg, svg.curve_overlay(curve.vertices, res.curve.vertices))
    verdict, code = "off", 0
    if cfg.validate:
        worst, _ = exact_max_detour(res.curve)
        verdict = "ok" if worst <= cfg.alpha else "fail"
        code = 0 if verdict == "ok" else 1
    _emit(
        vertices_in=len(curve),
        vertices_out=len(res.curve),
        shortcuts=len(res.log),
        sweep_fired=res.sweep_fired,
        time=f"{elapsed:.4f}",
        valid=verdict,
    )
    return code


def _cmd_validate(cfg):
    if len(cfg.inputs) != 2:
        raise ValueError("validate expects a pair file and a point file")
    with open(cfg.inputs[0]) as fh:
        w = parse_pairs(fh, cfg.eps)
    ps = read_points(cfg.inputs[1])
    m = _metric_for(ps, "udg" if cfg.metric == "udg" or w.metric == "graph" else "euclidean")
    n = m.n
    for p in w.pairs:
        for i in p.a + p.b:
            if not 0 <= i < n:
                raise ValueError(f"pair file references point {i}, but only {n} points were read")
    rep = validate_wspd(m, w)
    print(rep.to_kv())
    if not rep.ok:
        print(rep.to_text(), file=sys.stderr)
    return 0 if rep.ok else 1


def _cmd_gen(cfg):
    rng = np.random.default_rng(cfg.seed)
    if cfg.kind == "curve":
        coords = random_curve(cfg.n, rng, dim=cfg.dim)
    elif cfg.kind == "serpentine":
        coords = GENERATORS["serpentine"](cfg.n, rng).coords
    else:
        coords = GENERATORS[cfg.kind](cfg.n, rng, dim=cfg.dim).coords
    _write(cfg.out or "-", format_points(coords))
    if cfg.out and cfg.out != "-":
        _emit(kind=cfg.kind, n=cfg.n, seed=cfg.seed)
    return 0


HANDLERS = {
    "wspd-euclid": _cmd_wspd_euclid,
    "wspd-optimal": _cmd_wspd_optimal,
    "wspd-udg": _cmd_wspd_udg,
    "dilation": _cmd_dilation,
    "distortion": _cmd_distortion,
    "distill": _cmd_distill,
    "shortcut": _cmd_shortcut,
    "validate": _cmd_validate,
    "gen": _cmd_gen,
}


def run(cfg: RunConfig) -> int:
    try:
        return HANDLERS[cfg.command](cfg)
    except (PointFileError, PairFileError, DisconnectedGraphError, DegenerateCurveError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wspd", description="Well-separated pair decompositions and curve repair.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, eps_default=0.5, need_eps=True):
        if need_eps:
            p.add_argument("--eps", type=float, default=eps_default, help="1/eps is the separation (default %(default)s)")
        p.add_argument("--out", help="output file ('-' for stdout)")
        p.add_argument("--validate", dest="validate", action="store_true", default=True)
        p.add_argument("--no-validate", dest="validate", action="store_false")
        return p

    for name in ("wspd-euclid", "wspd-optimal", "wspd-udg"):
        p = common(sub.add_parser(name))
        p.add_argument("points")
        p.add_argument("--svg")
        if name == "wspd-optimal":
            p.add_argument("--metric", choices=("euclidean", "udg"), default="euclidean")

    for name in ("dilation", "distortion"):
        p = sub.add_parser(name)
        p.add_argument("--eps", type=float, default=0.1)
        p.add_argument("domain")
        p.add_argument("image")

    p = common(sub.add_parser("distill"), need_eps=False)
    p.add_argument("curve")
    p.add_argument("--svg")
    p.add_argument("--index", choices=("naive", "grid"), default="naive")

    p = common(sub.add_parser("shortcut"), eps_default=0.1)
    p.add_argument("curve")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--log", help="write 'j k dilation phase' per applied shortcut")
    p.add_argument("--svg")

    p = sub.add_parser("validate")
    p.add_argument("--eps", type=float, default=None, help="defaults to the eps recorded in the pair file")
    p.add_argument("--metric", choices=("euclidean", "udg"), default="euclidean")
    p.add_argument("pairs")
    p.add_argument("points")

    p = sub.add_parser("gen")
    p.add_argument("kind", choices=sorted(GENERATORS) + ["curve"])
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--out")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    inputs = [getattr(ns, k) for k in ("points", "domain", "image", "curve", "pairs") if getattr(ns, k, None)]
    if ns.command == "validate":
        inputs = [ns.pairs, ns.points]
    return RunConfig(
        command=ns.command,
        inputs=inputs,
        eps=getattr(ns, "eps", None),
        alpha=getattr(ns, "alpha", None),
        metric=getattr(ns, "metric", "euclidean"),
        seed=getattr(ns, "seed", None),
        n=getattr(ns, "n", 100),
        dim=getattr(ns, "dim", 2),
        kind=getattr(ns, "kind", "uniform"),
        out=getattr(ns, "out", None),
        svg=getattr(ns, "svg", None),
        log=getattr(ns, "log", None),
        index=getattr(ns, "index", "naive"),
        validate=getattr(ns, "validate", True),
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
