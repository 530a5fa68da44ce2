"""Pair decompositions and their line-oriented dump format.

Dump line::

    A:0,3,5 B:7 repA:0 repB:7 dist:1.25 [level:-3] [regime:short]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = ["Pair", "PairDecomposition", "format_pairs", "parse_pairs", "PairFileError"]


class PairFileError(ValueError):
    pass


@dataclass(frozen=True)
class Pair:
    a: tuple
    b: tuple
    rep_a: int
    rep_b: int
    level: int | None = None
    regime: str | None = None

    def key(self) -> tuple:
        return (self.a, self.b) if self.a <= self.b else (self.b, self.a)

    def __len__(self) -> int:
        return len(self.a) * len(self.b)


@dataclass
class PairDecomposition:
    pairs: list
    eps: float
    metric: str = "euclidean"
    meta: dict = field(default_factory=dict)

    @property
    def separation(self) -> float:
        return 1.0 / self.eps

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)

    def sorted(self) -> "PairDecomposition":
        return PairDecomposition(sorted(self.pairs, key=Pair.key), self.eps, self.metric, dict(self.meta))

    def payload(self) -> int:
        return sum(len(p.a) + len(p.b) for p in self.pairs)


def _fmt_idx(idx) -> str:
    return ",".join(str(int(i)) for i in sorted(idx))


def format_pairs(w: PairDecomposition, dist=None) -> str:
    """Render ``w`` in the dump format; ``dist(i, j)`` fills the dist field."""
    lines = [f"# eps={w.eps!r} metric={w.metric} pairs={len(w)}"]
    for p in w.pairs:
        d = dist(p.rep_a, p.rep_b) if dist is not None else float("nan")
        line = f"A:{_fmt_idx(p.a)} B:{_fmt_idx(p.b)} repA:{p.rep_a} repB:{p.rep_b} dist:{d!r}"
        if p.level is not None:
            line += f" level:{p.level}"
        if p.regime is not None:
            line += f" regime:{p.regime}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def _parse_idx(text: str, lineno: int) -> tuple:
    if not text:
        raise PairFileError(f"line {lineno}: empty index list")
    try:
        return tuple(sorted(int(t) for t in text.split(",")))
    except ValueError:
        raise PairFileError(f"line {lineno}: bad index list {text!r}") from None


def parse_pairs(lines: Iterable[str], eps: float | None = None) -> PairDecomposition:
    pairs = []
    header_eps = None
    metric = "euclidean"
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if tok.startswith("eps="):
                    header_eps = float(tok[4:])
                elif tok.startswith("metric="):
                    metric = tok[7:]
            continue
        fields = {}
        for tok in line.split():
            k, sep, v = tok.partition(":")
            if not sep:
                raise PairFileError(f"line {lineno}: malformed field {tok!r}")
            fields[k] = v
        for k in ("A", "B"):
            if k not in fields:
                raise PairFileError(f"line {lineno}: missing field {k}")
        a = _parse_idx(fields["A"], lineno)
        b = _parse_idx(fields["B"], lineno)
        try:
            rep_a = int(fields.get("repA", a[0]))
            rep_b = int(fields.get("repB", b[0]))
            level = int(fields["level"]) if "level" in fields else None
        except ValueError:
            raise PairFileError(f"line {lineno}: bad integer field") from None
        pairs.append(Pair(a, b, rep_a, rep_b, level, fields.get("regime")))
    e = eps if eps is not None else header_eps
    if e is None:
        raise PairFileError("eps not given and not present in the file header")
    return PairDecomposition(pairs, e, metric)
