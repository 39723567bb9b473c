"""Deterministic SVG pictures of 2-D intervals (one unit cell per grid point)."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .errors import DimensionError

CELL = 16
MARGIN = 24
LEGEND_ROW = 18
PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def render_svg(layers) -> str:
    """SVG 1.1 for ``layers``, a list of ``(label, IntervalSet)``.

    Cells are semi-transparent so overlaps stay visible. The y axis points
    up. An empty list gives just the axes through the origin.
    """
    layers = list(layers)
    for _, I in layers:
        if I.dim != 2:
            raise DimensionError("rendering needs 2-D intervals")
    pts = [p for _, I in layers for p in (I.lo, I.hi) if not I.is_empty]
    xs = [p[0] for p in pts] + [0]
    ys = [p[1] for p in pts] + [0]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    w = (x1 - x0 + 1) * CELL + 2 * MARGIN
    plot_h = (y1 - y0 + 1) * CELL + 2 * MARGIN
    h = plot_h + LEGEND_ROW * len(layers)

    def X(x):
        return MARGIN + (x - x0) * CELL

    def Y(y):
        return MARGIN + (y1 - y) * CELL

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
        '<g stroke="#000000" stroke-width="1">',
        f'<line x1="{X(x0)}" y1="{Y(0) + CELL // 2}" x2="{X(x1) + CELL}" y2="{Y(0) + CELL // 2}"/>',
        f'<line x1="{X(0) + CELL // 2}" y1="{Y(y1)}" x2="{X(0) + CELL // 2}" y2="{Y(y0) + CELL}"/>',
        "</g>",
    ]
    for k, (label, I) in enumerate(layers):
        colour = PALETTE[k % len(PALETTE)]
        out.append(f'<g fill="{colour}" fill-opacity="0.55" stroke="{colour}" stroke-width="0.5">')
        for x, y in I.sorted_points():
            out.append(f'<rect x="{X(x)}" y="{Y(y)}" width="{CELL}" height="{CELL}"/>')
        out.append("</g>")
    for k, (label, _) in enumerate(layers):
        colour = PALETTE[k % len(PALETTE)]
        ty = plot_h + k * LEGEND_ROW
        out.append(f'<rect x="{MARGIN}" y="{ty}" width="12" height="12" fill="{colour}"/>')
        out.append(
            f'<text x="{MARGIN + 18}" y="{ty + 11}" font-family="monospace" font-size="12">{escape(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
