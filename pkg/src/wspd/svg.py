"""Write-only SVG diagnostics: curves, points, packing picks and pair chords."""

from __future__ import annotations

import numpy as np

SIZE = 600
MARGIN = 20


def _plane(a) -> np.ndarray:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.shape[1] == 1:
        a = np.hstack([a, np.zeros_like(a)])
    return a[:, :2]


class Canvas:
    def __init__(self, *arrays):
        pts = np.vstack([_plane(a) for a in arrays if len(a)])
        self.lo = pts.min(axis=0)
        ext = float((pts.max(axis=0) - self.lo).max()) or 1.0
        self.scale = (SIZE - 2 * MARGIN) / ext
        self.items: list[str] = []

    def xy(self, p):
        x = MARGIN + (p[0] - self.lo[0]) * self.scale
        y = SIZE - MARGIN - (p[1] - self.lo[1]) * self.scale
        return f"{x:.3f},{y:.3f}"

    def polyline(self, pts, stroke="black", width=1.0):
        path = " ".join(self.xy(p) for p in _plane(pts))
        self.items.append(
            f'<polyline points="{path}" fill="none" stroke="{stroke}" stroke-width="{width}"/>'
        )

    def points(self, pts, fill="black", r=2.0):
        for p in _plane(pts):
            x, y = self.xy(p).split(",")
            self.items.append(f'<circle cx="{x}" cy="{y}" r="{r}" fill="{fill}"/>')

    def chord(self, p, q, stroke="#3a7bd5", width=0.5):
        (x1, y1), (x2, y2) = self.xy(p).split(","), self.xy(q).split(",")
        self.items.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{width}" opacity="0.5"/>'
        )

    def render(self) -> str:
        body = "\n".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">\n<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
        )

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.render())


def curve_overlay(before, after) -> str:
    """Input curve in gray, output in black."""
    before, after = _plane(before), _plane(after)
    c = Canvas(before, after)
    c.polyline(before, stroke="#999999", width=1.0)
    c.polyline(after, stroke="black", width=1.6)
    c.points(after[[0, -1]], fill="red", r=3)
    return c.render()


def pair_chords(coords, pairs, picks=None, limit: int = 5000) -> str:
    """Points plus one chord between the representatives of each pair."""
    coords = _plane(coords)
    c = Canvas(coords)
    for p in list(pairs)[:limit]:
        c.chord(coords[p.rep_a], coords[p.rep_b])
    c.points(coords, r=1.5)
    if picks is not None:
        c.points(coords[list(picks)], fill="red", r=3)
    return c.render()
