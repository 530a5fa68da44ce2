"""Plain-text point and curve files.

One point per line, whitespace-separated coordinates. An optional first
line ``# dim=<d>`` fixes the dimension; otherwise it is taken from the first
data line. Other ``#`` lines and blank lines are ignored.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

from .metric import PointSet

__all__ = ["PointFileError", "parse_points", "read_points", "format_points", "write_points"]


class PointFileError(ValueError):
    pass


def parse_points(lines: Iterable[str], source: str = "<input>") -> np.ndarray:
    dim = None
    rows = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("dim=") and not rows:
                try:
                    dim = int(body[4:])
                except ValueError:
                    raise PointFileError(f"{source}:{lineno}: bad dim header {line!r}") from None
                if dim < 1:
                    raise PointFileError(f"{source}:{lineno}: dim must be positive")
            continue
        try:
            row = [float(tok) for tok in line.split()]
        except ValueError:
            raise PointFileError(f"{source}:{lineno}: non-numeric coordinate in {line!r}") from None
        if dim is None:
            dim = len(row)
        if len(row) != dim:
            raise PointFileError(f"{source}:{lineno}: expected {dim} coordinates, got {len(row)}")
        if not all(np.isfinite(row)):
            raise PointFileError(f"{source}:{lineno}: non-finite coordinate")
        rows.append(row)
    if not rows:
        raise PointFileError(f"{source}: no points")
    return np.array(rows, dtype=float)


def read_points(path: str | os.PathLike) -> PointSet:
    with open(path) as fh:
        return PointSet(parse_points(fh, str(path)))


def format_points(coords) -> str:
    c = np.atleast_2d(np.asarray(coords, dtype=float))
    lines = [f"# dim={c.shape[1]}"]
    lines += [" ".join(repr(float(x)) for x in row) for row in c]
    return "\n".join(lines) + "\n"


def write_points(path: str | os.PathLike, coords) -> None:
    with open(path, "w") as fh:
        fh.write(format_points(coords))
