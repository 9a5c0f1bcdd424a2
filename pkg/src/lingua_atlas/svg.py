"""Dependency-free SVG scatter plots with per-label colors and a legend.

Output bytes are a pure function of the projection: fixed viewport, fixed
number formatting, labels colored by lexicographic rank from a fixed 12-color
palette (cycled when there are more labels).
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

from .umap import Projection

SIZE = 800
MARGIN = 40  # 5% of the viewport on each side
RADIUS = 3

PALETTE = [
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
    "#aec7e8",
    "#ffbb78",
]


def _axis_mapper(lo: float, hi: float):
    span = hi - lo
    if span <= 0.0:
        return lambda _: SIZE / 2.0
    scale = (SIZE - 2 * MARGIN) / span
    return lambda v: MARGIN + (v - lo) * scale


def emit_svg(proj: Projection, path: str | Path) -> list[str]:
    """Write a standalone 800x800 scatter plot. Returns warnings (palette
    cycling) for the caller's manifest."""
    coords = proj.coords
    if coords.shape[0] == 0:
        raise ValueError("cannot plot an empty projection")
    labels = sorted(set(proj.labels))
    warnings = []
    if len(labels) > len(PALETTE):
        warnings.append(
            f"{len(labels)} labels exceed the {len(PALETTE)}-color palette; colors cycle"
        )
    color = {lab: PALETTE[i % len(PALETTE)] for i, lab in enumerate(labels)}

    to_px_x = _axis_mapper(float(coords[:, 0].min()), float(coords[:, 0].max()))
    to_px_y = _axis_mapper(float(coords[:, 1].min()), float(coords[:, 1].max()))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for (x, y), label in zip(coords, proj.labels):
        px = to_px_x(float(x))
        py = SIZE - to_px_y(float(y))  # flip: y grows upward
        lines.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{RADIUS}" '
            f'fill="{color[label]}" fill-opacity="0.7"/>'
        )
    for i, label in enumerate(labels):
        y = 20 + 18 * i
        lines.append(f'<rect x="10" y="{y - 10}" width="12" height="12" fill="{color[label]}"/>')
        lines.append(
            f'<text x="28" y="{y}" font-family="monospace" font-size="14">'
            f"{escape(label)}</text>"
        )
    lines.append("</svg>")
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))
    return warnings
